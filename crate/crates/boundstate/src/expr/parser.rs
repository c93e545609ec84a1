//! Tokenizer and recursive-descent parser for the expression language.
//!
//! Grammar:
//! ```text
//! expr    := term (("+"|"-") term)* ;
//! term    := "-" term | factor (("*"|"/") ("-")? factor)* ;
//! factor  := primary ("^" ("-")? factor)? ;
//! primary := NUMBER | "x" | "pi" | IDENT "(" expr ")" | "(" expr ")" ;
//! IDENT   in {exp, log, sqrt, sin, cos, tan, atan, abs, gamma} ;
//! NUMBER  := decimal literal with optional exponent part.
//! ```
//! `^` is right-associative and binds tighter than unary minus, so `-x^2/2`
//! is `-((x^2)/2)`; a sign is still admitted directly in exponent position
//! (`x^-2`) and after `*` or `/`.

use super::{Func, Node, ParseError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(v) => format!("number {v}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    position: start,
                    message: format!("malformed number literal '{text}'"),
                })?;
                toks.push((Tok::Number(value), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(src[start..i].to_string()), start));
            }
            _ => {
                return Err(ParseError::Syntax {
                    position: i,
                    message: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(ParseError::Syntax {
                position: self.here(),
                message: format!("expected {}, found {}", want.describe(), t.describe()),
            }),
            None => Err(ParseError::Syntax {
                position: self.end,
                message: format!("expected {}, found end of input", want.describe()),
            }),
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Node::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Node::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            let inner = self.term()?;
            return Ok(Node::Neg(Box::new(inner)));
        }
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.signed_factor()?;
                    lhs = Node::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.signed_factor()?;
                    lhs = Node::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn signed_factor(&mut self) -> Result<Node, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(Node::Neg(Box::new(inner)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let exponent = self.signed_factor()?;
            return Ok(Node::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let position = self.here();
        match self.bump().cloned() {
            Some(Tok::Number(v)) => Ok(Node::Number(v)),
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" => Ok(Node::Var),
                "pi" => Ok(Node::Pi),
                _ => {
                    let func = Func::from_name(&name).ok_or(ParseError::UnknownIdentifier {
                        name: name.clone(),
                        position,
                    })?;
                    self.expect(Tok::LParen)?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(Node::Call(func, Box::new(arg)))
                }
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(t) => Err(ParseError::Syntax {
                position,
                message: format!(
                    "expected a number, 'x', 'pi', a function call, or '(', found {}",
                    t.describe()
                ),
            }),
            None => Err(ParseError::Syntax {
                position: self.end,
                message: "expected a number, 'x', 'pi', a function call, or '(', found end of input"
                    .into(),
            }),
        }
    }
}

pub(super) fn parse_source(src: &str) -> Result<Node, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks: &toks, pos: 0, end: src.len() };
    let root = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::Syntax {
            position: p.here(),
            message: format!("unexpected trailing input starting with {}", t.describe()),
        });
    }
    Ok(root)
}

// Binding strength, used by the canonical renderer to insert the fewest
// parentheses that still reproduce the tree on re-parse.
const LVL_EXPR: u8 = 0;
const LVL_NEG: u8 = 1;
const LVL_TERM: u8 = 2;
const LVL_FACTOR: u8 = 3;
const LVL_PRIMARY: u8 = 4;

fn level(node: &Node) -> u8 {
    match node {
        Node::Add(..) | Node::Sub(..) => LVL_EXPR,
        Node::Neg(..) => LVL_NEG,
        Node::Mul(..) | Node::Div(..) => LVL_TERM,
        Node::Pow(..) => LVL_FACTOR,
        Node::Number(_) | Node::Var | Node::Pi | Node::Call(..) => LVL_PRIMARY,
    }
}

pub(super) fn render_node(node: &Node, out: &mut String, min_level: u8) {
    if level(node) < min_level {
        out.push('(');
        render_node(node, out, LVL_EXPR);
        out.push(')');
        return;
    }
    match node {
        Node::Number(v) => {
            // `{}` on f64 is the shortest decimal form that parses back to
            // the same bits; literals are non-negative by construction.
            out.push_str(&format!("{v}"));
        }
        Node::Var => out.push('x'),
        Node::Pi => out.push_str("pi"),
        Node::Neg(c) => {
            out.push('-');
            render_node(c, out, LVL_TERM);
        }
        Node::Add(l, r) => {
            render_node(l, out, LVL_EXPR);
            out.push('+');
            render_node(r, out, LVL_TERM);
        }
        Node::Sub(l, r) => {
            render_node(l, out, LVL_EXPR);
            out.push('-');
            render_node(r, out, LVL_TERM);
        }
        Node::Mul(l, r) => {
            render_node(l, out, LVL_TERM);
            out.push('*');
            render_node(r, out, LVL_FACTOR);
        }
        Node::Div(l, r) => {
            render_node(l, out, LVL_TERM);
            out.push('/');
            render_node(r, out, LVL_FACTOR);
        }
        Node::Pow(b, e) => {
            render_node(b, out, LVL_PRIMARY);
            out.push('^');
            if let Node::Neg(inner) = e.as_ref() {
                out.push('-');
                render_node(inner, out, LVL_FACTOR);
            } else {
                render_node(e, out, LVL_FACTOR);
            }
        }
        Node::Call(f, arg) => {
            out.push_str(f.name());
            out.push('(');
            render_node(arg, out, LVL_EXPR);
            out.push(')');
        }
    }
}
