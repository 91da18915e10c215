use nevanlinna::spherical::chordal;
use nevanlinna::{characteristic, parse_expr, winding_count, ComplexValue32, Config32, Expr32};

#[test]
fn functionals_in_f32() {
    let cfg = Config32::default().with_abs_tol(1e-4);
    let f: Expr32 = parse_expr("exp(z)", false).unwrap();
    let t = characteristic(&f, 2.0f32, &cfg).unwrap();
    assert!((t - 2.0 / std::f32::consts::PI).abs() <= 1e-3);
    let g: Expr32 = parse_expr("(z-1)^2*(z+2)", false).unwrap();
    assert_eq!(winding_count(&g, ComplexValue32::zero(), 1.5, &cfg).unwrap(), 2);
    let x = chordal(ComplexValue32::zero(), ComplexValue32::real(1.0));
    assert!((x - std::f32::consts::FRAC_1_SQRT_2).abs() <= 1e-6);
}
