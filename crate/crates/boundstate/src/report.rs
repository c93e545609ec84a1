//! Deterministic serialization: fixed-order JSON documents and CSV tables
//! with numbers printed to 12 significant digits, so repeated runs produce
//! byte-identical artifacts. Divergent quantities serialize as the string
//! `"infinite"`, indeterminate ones as `"unknown"`.

use crate::decay::DecayReport;
use crate::eigensolver::Eigenpair;
use crate::inverse::PotentialGrid;
use crate::observables::MomentReport;
use crate::quadrature::{ExtendedReal, TailExponent, TailModel};

/// Print `v` with 12 significant digits, `%g`-style: fixed notation for
/// decimal exponents in `[-4, 12)`, scientific otherwise, trailing zeros
/// trimmed.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    debug_assert!(v.is_finite(), "fmt_sig on non-finite value");
    let sci = format!("{:.11e}", v);
    let (mant, exp) = sci.split_once('e').expect("exponential form");
    let exp: i32 = exp.parse().expect("exponent");
    let neg = mant.starts_with('-');
    let digits: Vec<u8> = mant.bytes().filter(|b| b.is_ascii_digit()).collect();
    let digits = String::from_utf8(digits).expect("digits");
    let trimmed = digits.trim_end_matches('0');
    let digits = if trimmed.is_empty() { "0" } else { trimmed };
    let sign = if neg { "-" } else { "" };

    if (-4..12).contains(&exp) {
        let body = if exp >= 0 {
            let point = (exp + 1) as usize;
            if digits.len() <= point {
                format!("{digits}{}", "0".repeat(point - digits.len()))
            } else {
                format!("{}.{}", &digits[..point], &digits[point..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        format!("{sign}{body}")
    } else if digits.len() == 1 {
        format!("{sign}{digits}e{exp}")
    } else {
        format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..])
    }
}

pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// A small writer for fixed-order JSON with stable indentation.
pub struct JsonWriter {
    buf: String,
    indent: usize,
    need_comma: Vec<bool>,
}

impl Default for JsonWriter {
    fn default() -> Self {
        Self::new()
    }
}

impl JsonWriter {
    pub fn new() -> Self {
        JsonWriter { buf: String::new(), indent: 0, need_comma: vec![false] }
    }

    fn pad(&mut self) {
        for _ in 0..self.indent {
            self.buf.push_str("  ");
        }
    }

    fn before_item(&mut self) {
        if *self.need_comma.last().unwrap() {
            self.buf.push(',');
        }
        self.buf.push('\n');
        self.pad();
        *self.need_comma.last_mut().unwrap() = true;
    }

    pub fn open_object(&mut self, key: Option<&str>) -> &mut Self {
        self.before_item();
        if let Some(k) = key {
            self.buf.push_str(&format!("\"{}\": ", json_escape(k)));
        }
        self.buf.push('{');
        self.indent += 1;
        self.need_comma.push(false);
        self
    }

    pub fn close_object(&mut self) -> &mut Self {
        self.need_comma.pop();
        self.indent -= 1;
        self.buf.push('\n');
        self.pad();
        self.buf.push('}');
        self
    }

    pub fn open_array(&mut self, key: Option<&str>) -> &mut Self {
        self.before_item();
        if let Some(k) = key {
            self.buf.push_str(&format!("\"{}\": ", json_escape(k)));
        }
        self.buf.push('[');
        self.indent += 1;
        self.need_comma.push(false);
        self
    }

    pub fn close_array(&mut self) -> &mut Self {
        self.need_comma.pop();
        self.indent -= 1;
        self.buf.push('\n');
        self.pad();
        self.buf.push(']');
        self
    }

    fn raw_field(&mut self, key: Option<&str>, raw: &str) -> &mut Self {
        self.before_item();
        match key {
            Some(k) => self.buf.push_str(&format!("\"{}\": {raw}", json_escape(k))),
            None => self.buf.push_str(raw),
        }
        self
    }

    pub fn number(&mut self, key: &str, v: f64) -> &mut Self {
        self.raw_field(Some(key), &fmt_sig(v))
    }

    pub fn integer(&mut self, key: &str, v: i64) -> &mut Self {
        self.raw_field(Some(key), &v.to_string())
    }

    pub fn string(&mut self, key: &str, v: &str) -> &mut Self {
        self.raw_field(Some(key), &format!("\"{}\"", json_escape(v)))
    }

    pub fn boolean(&mut self, key: &str, v: bool) -> &mut Self {
        self.raw_field(Some(key), if v { "true" } else { "false" })
    }

    pub fn null(&mut self, key: &str) -> &mut Self {
        self.raw_field(Some(key), "null")
    }

    /// Bare string element inside an open array.
    pub fn element_string(&mut self, v: &str) -> &mut Self {
        self.raw_field(None, &format!("\"{}\"", json_escape(v)))
    }

    /// Bare number element inside an open array.
    pub fn element_number(&mut self, v: f64) -> &mut Self {
        self.raw_field(None, &fmt_sig(v))
    }

    pub fn finish(mut self) -> String {
        self.buf.push('\n');
        // The writer opens with a newline before the root element.
        self.buf.trim_start().to_string()
    }
}

/// `value` is a number when finite, `"infinite"` when divergent, and
/// `"unknown"` when indeterminate.
pub fn write_extended_real(w: &mut JsonWriter, key: &str, r: &ExtendedReal) {
    w.open_object(Some(key));
    match r {
        ExtendedReal::Finite { value, error_estimate, diagnostic } => {
            w.number("value", *value);
            w.number("error_estimate", *error_estimate);
            if !diagnostic.is_empty() {
                w.string("diagnostic", diagnostic);
            }
        }
        ExtendedReal::Divergent { diagnostic } => {
            w.string("value", "infinite");
            w.string("diagnostic", diagnostic);
        }
        ExtendedReal::Indeterminate { diagnostic } => {
            w.string("value", "unknown");
            w.string("diagnostic", diagnostic);
        }
    }
    w.close_object();
}

fn write_tail_model(w: &mut JsonWriter, key: &str, m: &TailModel) {
    w.open_object(Some(key));
    match m.exponent {
        TailExponent::Power(p) => w.number("exponent", p),
        TailExponent::SuperPolynomial => w.string("exponent", "super_polynomial"),
    };
    w.open_array(Some("window"));
    w.element_number(m.window.0);
    w.element_number(m.window.1);
    w.close_array();
    w.number("fit_residual", m.fit_residual);
    w.integer("samples_used", m.samples_used as i64);
    w.close_object();
}

pub fn write_moment_report(w: &mut JsonWriter, rep: &MomentReport) {
    w.open_object(Some("moments"));
    write_extended_real(w, "mean_x", &rep.mean_x);
    write_extended_real(w, "mean_x2", &rep.mean_x2);
    write_extended_real(w, "mean_p", &rep.mean_p);
    write_extended_real(w, "mean_p2", &rep.mean_p2);
    write_extended_real(w, "delta_x", &rep.delta_x);
    write_extended_real(w, "delta_p", &rep.delta_p);
    write_extended_real(w, "uncertainty_product", &rep.product_u);
    w.string("notes", &rep.notes);
    w.close_object();
}

pub fn write_decay_report(w: &mut JsonWriter, rep: &DecayReport) {
    w.open_object(Some("decay"));
    match &rep.left_tail {
        Some(t) => write_tail_model(w, "left_tail", t),
        None => {
            w.null("left_tail");
        }
    }
    write_tail_model(w, "right_tail", &rep.right_tail);
    w.string("verdict", rep.verdict.as_str());
    w.number("criterion_exponent", rep.criterion_exponent);
    w.string("explanation", &rep.explanation);
    w.close_object();
}

/// Full analysis document for one state.
pub fn analysis_json(rep: &MomentReport, decay: &DecayReport) -> String {
    let mut w = JsonWriter::new();
    w.open_object(None);
    w.string("label", &rep.label);
    w.number("hbar", rep.hbar);
    write_moment_report(&mut w, rep);
    write_decay_report(&mut w, decay);
    w.close_object();
    w.finish()
}

/// CSV with columns `x,v`.
pub fn potential_csv(grid: &PotentialGrid) -> String {
    let mut out = String::from("x,v\n");
    for &(x, v) in &grid.points {
        out.push_str(&fmt_sig(x));
        out.push(',');
        out.push_str(&fmt_sig(v));
        out.push('\n');
    }
    out
}

/// JSON sidecar for a reconstructed potential.
pub fn potential_sidecar_json(
    grid: &PotentialGrid,
    closed_form: Option<(&str, f64)>,
) -> String {
    let mut w = JsonWriter::new();
    w.open_object(None);
    w.string("label", &grid.source_label);
    w.number("gauge_energy", grid.gauge_energy);
    w.integer("points", grid.points.len() as i64);
    w.number("x_min", grid.points[0].0);
    w.number("x_max", grid.points[grid.points.len() - 1].0);
    match closed_form {
        Some((src, dev)) => {
            w.string("closed_form", src);
            w.number("max_deviation_from_closed_form", dev);
        }
        None => {
            w.null("closed_form");
            w.null("max_deviation_from_closed_form");
        }
    }
    w.close_object();
    w.finish()
}

/// CSV with columns `x,psi`.
pub fn eigenpair_csv(pair: &Eigenpair) -> String {
    let mut out = String::from("x,psi\n");
    for &(x, p) in &pair.grid {
        out.push_str(&fmt_sig(x));
        out.push(',');
        out.push_str(&fmt_sig(p));
        out.push('\n');
    }
    out
}

pub fn write_eigenpair_header(w: &mut JsonWriter, key: Option<&str>, pair: &Eigenpair) {
    w.open_object(key);
    w.number("energy", pair.energy);
    w.integer("nodes", pair.node_count as i64);
    w.number("residual_norm", pair.residual_norm);
    w.number("matching_defect", pair.matching_defect);
    w.close_object();
}

/// CSV with columns `x,psi,v` (figure datasets).
pub fn figure_csv(rows: &[(f64, f64, f64)]) -> String {
    let mut out = String::from("x,psi,v\n");
    for &(x, p, v) in rows {
        out.push_str(&fmt_sig(x));
        out.push(',');
        out.push_str(&fmt_sig(p));
        out.push(',');
        out.push_str(&fmt_sig(v));
        out.push('\n');
    }
    out
}
