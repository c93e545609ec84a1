use super::*;

fn p(src: &str) -> Expression {
    Expression::parse(src).unwrap()
}

fn assert_close(got: f64, want: f64, tol: f64) {
    assert!(
        (got - want).abs() <= tol,
        "got {got}, want {want} (tol {tol})"
    );
}

#[test]
fn parse_gaussian_shape() {
    let e = p("exp(-x^2/2)");
    // exp(neg(div(pow(x,2),2)))
    let want = Node::Call(
        Func::Exp,
        Box::new(Node::Neg(Box::new(Node::Div(
            Box::new(Node::Pow(Box::new(Node::Var), Box::new(Node::Number(2.0)))),
            Box::new(Node::Number(2.0)),
        )))),
    );
    assert_eq!(*e.ast(), want);
}

#[test]
fn parse_extended_potential_round_trips() {
    let e = p("(2*x^2-1)/(1+x^2)^2");
    let again = Expression::parse(&e.render()).unwrap();
    assert_eq!(e, again);
}

#[test]
fn unbalanced_parenthesis_is_syntax_error() {
    match Expression::parse("exp(-x^4") {
        Err(ParseError::Syntax { position, message }) => {
            assert_eq!(position, 8);
            assert!(message.contains("end of input"), "{message}");
        }
        other => panic!("expected syntax error, got {other:?}"),
    }
}

#[test]
fn unknown_identifier() {
    match Expression::parse("sinh(x)") {
        Err(ParseError::UnknownIdentifier { name, position }) => {
            assert_eq!(name, "sinh");
            assert_eq!(position, 0);
        }
        other => panic!("expected unknown identifier, got {other:?}"),
    }
}

#[test]
fn power_is_right_associative() {
    // 2^3^2 = 2^(3^2) = 512
    assert_close(p("2^3^2").eval(0.0).unwrap(), 512.0, 0.0);
}

#[test]
fn unary_minus_binds_looser_than_pow() {
    // -x^2 is -(x^2), matching the tree shape of exp(-x^2/2).
    assert_close(p("-x^2").eval(3.0).unwrap(), -9.0, 0.0);
    assert_close(p("-(x^2)").eval(3.0).unwrap(), -9.0, 0.0);
    assert_eq!(*p("-x^2").ast(), *p("-(x^2)").ast());
    // A sign directly in exponent position is admitted.
    assert_close(p("x^-2").eval(2.0).unwrap(), 0.25, 0.0);
    assert_close(p("2*-x").eval(3.0).unwrap(), -6.0, 0.0);
}

#[test]
fn eval_examples() {
    assert_close(p("exp(-x^2/2)").eval(0.0).unwrap(), 1.0, 0.0);
    assert_close(p("(2*x^2-1)/(1+x^2)^2").eval(0.0).unwrap(), -1.0, 0.0);
    // Γ(5/4), cross-checked against Γ(1/4)/4 in the gamma module tests.
    assert_close(p("gamma(5/4)").eval(0.0).unwrap(), 0.9064024771, 1e-9);
}

#[test]
fn eval_domain_errors() {
    assert!(matches!(
        p("log(x)").eval(-1.0),
        Err(EvalError::Domain { .. })
    ));
    assert!(matches!(
        p("sqrt(x)").eval(-0.5),
        Err(EvalError::Domain { .. })
    ));
    assert!(matches!(p("1/x").eval(0.0), Err(EvalError::Domain { .. })));
    // fractional power of a negative base
    assert!(matches!(
        p("x^1.5").eval(-2.0),
        Err(EvalError::Domain { .. })
    ));
    // integer power of a negative base is fine
    assert_close(p("x^3").eval(-2.0).unwrap(), -8.0, 0.0);
    assert!(matches!(
        p("gamma(x)").eval(-2.0),
        Err(EvalError::Domain { .. })
    ));
}

#[test]
fn zero_pow_zero_is_one_with_warning() {
    let (v, flags) = p("x^0").eval_with_flags(0.0).unwrap();
    assert_eq!(v, 1.0);
    assert!(flags.zero_pow_zero);
    let (_, flags) = p("x^2").eval_with_flags(0.0).unwrap();
    assert!(!flags.zero_pow_zero);
}

#[test]
fn jet_examples() {
    // ψ = exp(-x²/2): ψ″ = (x²-1)ψ, so at 0: (1, 0, -1)
    let j = p("exp(-x^2/2)").eval_jet2(0.0).unwrap();
    assert_close(j.value, 1.0, 1e-15);
    assert_close(j.d1, 0.0, 1e-15);
    assert_close(j.d2, -1.0, 1e-15);

    // ψ = exp(-x⁴): ψ″ = (16x⁶ - 12x²)ψ, at 1: 4/e; ψ′ = -4x³ψ = -4/e
    let j = p("exp(-x^4)").eval_jet2(1.0).unwrap();
    let inv_e = (-1.0f64).exp();
    assert_close(j.value, inv_e, 1e-15);
    assert_close(j.d1, -4.0 * inv_e, 1e-14);
    assert_close(j.d2, 4.0 * inv_e, 1e-13);

    let j = p("x^2").eval_jet2(3.0).unwrap();
    assert_eq!((j.value, j.d1, j.d2), (9.0, 6.0, 2.0));
}

#[test]
fn jet_kink_and_zero_cases() {
    assert!(matches!(
        p("abs(x)").eval_jet2(0.0),
        Err(EvalError::DerivativeUndefined { .. })
    ));
    assert_close(p("abs(x)").eval(0.0).unwrap(), 0.0, 0.0);
    assert!(matches!(
        p("sqrt(x)").eval_jet2(0.0),
        Err(EvalError::DerivativeUndefined { .. })
    ));
    assert!(matches!(
        p("x^1.5").eval_jet2(0.0),
        Err(EvalError::DerivativeUndefined { .. })
    ));
    // x^2 at 0 is perfectly smooth
    let j = p("x^2").eval_jet2(0.0).unwrap();
    assert_eq!((j.value, j.d1, j.d2), (0.0, 0.0, 2.0));
}

#[test]
fn jets_match_central_differences() {
    // The stated independent oracle: central differences with step 1e-4
    // agree to 1e-6 relative at non-singular points.
    let cases = [
        ("exp(-x^2/2)", 0.7),
        ("exp(-x^4)", 1.1),
        ("1/sqrt(1+x^2)", 0.3),
        ("sin(x)*cos(2*x)", 1.9),
        ("atan(x^2)-log(1+x^2)", 0.8),
        ("gamma(1+x^2)", 0.6),
        ("2^x", 1.25),
        ("tan(x/4)", 2.0),
    ];
    let h = 1e-4;
    for (src, x) in cases {
        let e = p(src);
        let f = |t: f64| e.eval(t).unwrap();
        let j = e.eval_jet2(x).unwrap();
        let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
        let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        let s1 = d1.abs().max(1.0);
        let s2 = d2.abs().max(1.0);
        assert!(
            ((j.d1 - d1) / s1).abs() < 1e-6,
            "{src} at {x}: jet d1 {} vs fd {d1}",
            j.d1
        );
        assert!(
            ((j.d2 - d2) / s2).abs() < 1e-4,
            "{src} at {x}: jet d2 {} vs fd {d2}",
            j.d2
        );
    }
}

#[test]
fn catalog_second_derivative_ratios() {
    // Hand-derived closed forms for ψ″/ψ on the catalog shapes.
    let checks: [(&str, fn(f64) -> f64); 4] = [
        ("exp(-x^2/2)", |x| x * x - 1.0),
        ("exp(-x^4)", |x| 16.0 * x.powi(6) - 12.0 * x * x),
        ("1/sqrt(1+x^2)", |x| {
            (2.0 * x * x - 1.0) / (1.0 + x * x).powi(2)
        }),
        ("1/(1+x^2)", |x| (6.0 * x * x - 2.0) / (1.0 + x * x).powi(2)),
    ];
    for (src, ratio) in checks {
        let e = p(src);
        for k in 0..100 {
            let x = -2.0 + (k as f64) * 4.0 / 99.0;
            let j = e.eval_jet2(x).unwrap();
            let got = j.d2 / j.value;
            let want = ratio(x);
            assert!(
                (got - want).abs() <= 1e-10 * want.abs().max(1.0),
                "{src} at {x}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn render_round_trip_fixed_cases() {
    let cases = [
        "exp(-x^2/2)",
        "(2*x^2-1)/(1+x^2)^2",
        "2^3^2",
        "-x^2",
        "-(x^2)",
        "x-(1-x)",
        "x/(2*x)/x",
        "1/(1+x^2)",
        "gamma(5/4)*sqrt(pi)",
        "x^-2",
        "1+-x",
        "abs(x)-atan(x)+tan(x)",
        "0.001*x+1e-9",
    ];
    for src in cases {
        let e = p(src);
        let rendered = e.render();
        let again = Expression::parse(&rendered)
            .unwrap_or_else(|err| panic!("render of '{src}' -> '{rendered}' failed: {err}"));
        assert_eq!(e, again, "round trip of '{src}' via '{rendered}'");
    }
}

#[test]
fn display_keeps_source_text() {
    let e = p("exp( -x^2 / 2 )");
    assert_eq!(format!("{e}"), "exp( -x^2 / 2 )");
}

#[test]
fn empty_and_garbage_inputs_error_cleanly() {
    assert!(Expression::parse("").is_err());
    assert!(Expression::parse("   ").is_err());
    assert!(Expression::parse("1 + ").is_err());
    assert!(Expression::parse("()").is_err());
    assert!(Expression::parse("x 2").is_err());
    assert!(Expression::parse("1..2").is_err());
    assert!(Expression::parse("#x").is_err());
    assert!(Expression::parse("exp x").is_err());
}
