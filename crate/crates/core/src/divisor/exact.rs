//! Structural divisors: zeros and poles read off the expression tree.

use num_complex::Complex;

use super::catalog::{merge_signed, signed_to_entries, DivisorCatalog};
use super::poly::{poly_roots, Poly};
use crate::funcexpr::{Expr, ExtComplex, Func};
use crate::scalar::Real;

const MAX_RATIONAL_DEGREE: usize = 96;

/// `P/Q` form of a subtree built only from `z`, constants, arithmetic and
/// integer powers (elementary functions of constants are folded to values).
pub fn to_rational<T: Real>(e: &Expr<T>) -> Option<(Poly<T>, Poly<T>)> {
    let one = || Poly::constant(Complex::new(T::one(), T::zero()));
    let out = match e {
        Expr::Const(c) => (Poly::constant(*c), one()),
        Expr::Var => (Poly::identity(), one()),
        Expr::Index => return None,
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (p1, q1) = to_rational(a)?;
            let (p2, q2) = to_rational(b)?;
            let (l, r) = (p1.mul(&q2), p2.mul(&q1));
            let num = if matches!(e, Expr::Add(..)) { l.add(&r) } else { l.sub(&r) };
            (num, q1.mul(&q2))
        }
        Expr::Mul(a, b) => {
            let (p1, q1) = to_rational(a)?;
            let (p2, q2) = to_rational(b)?;
            (p1.mul(&p2), q1.mul(&q2))
        }
        Expr::Div(a, b) => {
            let (p1, q1) = to_rational(a)?;
            let (p2, q2) = to_rational(b)?;
            if p2.is_zero() {
                return None;
            }
            (p1.mul(&q2), q1.mul(&p2))
        }
        Expr::Pow(a, k) => {
            let (p, q) = to_rational(a)?;
            let m = k.unsigned_abs();
            if *k >= 0 {
                (p.powu(m), q.powu(m))
            } else {
                if p.is_zero() {
                    return None;
                }
                (q.powu(m), p.powu(m))
            }
        }
        Expr::Func(..) => {
            if e.has_var() {
                return None;
            }
            match e.eval(ExtComplex::zero()).ok()? {
                ExtComplex::Finite(c) => (Poly::constant(c), one()),
                ExtComplex::Infinity => return None,
            }
        }
    };
    if out.0.degree() + out.1.degree() > MAX_RATIONAL_DEGREE {
        return None;
    }
    Some(out)
}

/// Polynomial form of an entire argument, if the subtree is a polynomial.
fn to_polynomial<T: Real>(e: &Expr<T>) -> Option<Poly<T>> {
    let (p, q) = to_rational(e)?;
    let c = q.as_constant()?;
    Some(p.scale(c.inv()))
}

#[derive(Clone, Debug)]
enum Factor<T> {
    Poly(Poly<T>, i64),
    /// `sin`, `cos` or `tan` of `a z + b`, raised to an integer power.
    Trig(Func, Complex<T>, Complex<T>, i64),
    /// `g(a z + b) − v` for an elementary `g`, raised to an integer power.
    Shifted(Func, Complex<T>, Complex<T>, Complex<T>, i64),
}

/// `κ·g(arg)` with a constant `κ ≠ 0`.
fn scaled_func<T: Real>(e: &Expr<T>) -> Option<(Complex<T>, Func, &Expr<T>)> {
    let one = Complex::new(T::one(), T::zero());
    match e {
        Expr::Func(g, arg) => Some((one, *g, arg)),
        Expr::Mul(x, y) => {
            let (k, other) = match (x.as_const(), y.as_const()) {
                (Some(k), None) => (k, y),
                (None, Some(k)) => (k, x),
                _ => return None,
            };
            match other.as_ref() {
                Expr::Func(g, arg) if k.norm() > T::zero() => Some((k, *g, arg)),
                _ => None,
            }
        }
        Expr::Div(x, k) => match (k.as_const(), x.as_ref()) {
            (Some(k), Expr::Func(g, arg)) if k.norm() > T::zero() => Some((k.inv(), *g, arg)),
            _ => None,
        },
        _ => None,
    }
}

/// Recognises `κ·g(a z + b) ± c` and returns `(g, a, b, v)` with the zeros of
/// the sum being the solutions of `g(a z + b) = v`.
fn shifted_func<T: Real>(e: &Expr<T>) -> Option<(Func, Complex<T>, Complex<T>, Complex<T>)> {
    let (x, y, subtract) = match e {
        Expr::Add(x, y) => (x, y, false),
        Expr::Sub(x, y) => (x, y, true),
        _ => return None,
    };
    let (g, arg, v) = match (x.as_const(), y.as_const()) {
        (None, Some(c)) => {
            let (k, g, arg) = scaled_func(x)?;
            (g, arg, if subtract { c / k } else { -c / k })
        }
        (Some(c), None) => {
            let (k, g, arg) = scaled_func(y)?;
            (g, arg, if subtract { c / k } else { -c / k })
        }
        _ => return None,
    };
    let p = to_polynomial(arg)?;
    if p.degree() != 1 {
        return None;
    }
    Some((g, p.coeffs()[1], p.coeffs()[0], v))
}

fn factorize<T: Real>(e: &Expr<T>) -> Option<Vec<Factor<T>>> {
    match e {
        Expr::Const(c) => (c.re != T::zero() || c.im != T::zero()).then(Vec::new),
        Expr::Var => Some(vec![Factor::Poly(Poly::identity(), 1)]),
        Expr::Index => None,
        Expr::Mul(a, b) => {
            let mut out = factorize(a)?;
            out.extend(factorize(b)?);
            Some(out)
        }
        Expr::Div(a, b) => {
            let mut out = factorize(a)?;
            out.extend(factorize(b)?.into_iter().map(|f| scale_exponent(f, -1)));
            Some(out)
        }
        Expr::Pow(a, k) => Some(factorize(a)?.into_iter().map(|f| scale_exponent(f, *k as i64)).collect()),
        Expr::Add(..) | Expr::Sub(..) => match to_rational(e) {
            Some((p, q)) => (!p.is_zero()).then(|| vec![Factor::Poly(p, 1), Factor::Poly(q, -1)]),
            None => {
                let (g, a, b, v) = shifted_func(e)?;
                Some(vec![Factor::Shifted(g, a, b, v, 1)])
            }
        },
        Expr::Func(func, arg) => {
            if !arg.has_var() {
                return match e.eval(ExtComplex::zero()).ok()? {
                    ExtComplex::Finite(c) if c.norm() > T::zero() => Some(Vec::new()),
                    _ => None,
                };
            }
            match func {
                // exp of a polynomial never vanishes and has no poles
                Func::Exp => to_polynomial(arg).map(|_| Vec::new()),
                Func::Sin | Func::Cos | Func::Tan => {
                    let p = to_polynomial(arg)?;
                    if p.degree() != 1 {
                        return None;
                    }
                    Some(vec![Factor::Trig(*func, p.coeffs()[1], p.coeffs()[0], 1)])
                }
            }
        }
    }
}

fn scale_exponent<T>(f: Factor<T>, k: i64) -> Factor<T> {
    match f {
        Factor::Poly(p, e) => Factor::Poly(p, e * k),
        Factor::Trig(func, a, b, e) => Factor::Trig(func, a, b, e * k),
        Factor::Shifted(func, a, b, v, e) => Factor::Shifted(func, a, b, v, e * k),
    }
}

/// Points `z = (w₀ + k·period − b)/a`, `k ∈ ℤ`, with `|z| ≤ radius`.
fn lattice<T: Real>(w0: Complex<T>, period: Complex<T>, a: Complex<T>, b: Complex<T>, radius: T) -> Vec<Complex<T>> {
    let reach = radius * a.norm();
    let p = period.norm();
    let unit = period / p;
    let d = (w0 - b) * unit.conj();
    let slack = reach * reach - d.im * d.im;
    if slack < T::zero() {
        return Vec::new();
    }
    let h = slack.sqrt();
    let lo = ((-d.re - h) / p).floor();
    let hi = ((-d.re + h) / p).ceil();
    let mut out = Vec::new();
    let mut k = lo;
    while k <= hi {
        let z = (w0 + period * k - b) / a;
        if z.norm() <= radius {
            out.push(z);
        }
        k += T::one();
    }
    out
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Solutions of `g(w) = v` as lattice seeds `w₀` and the common period.
fn preimages<T: Real>(g: Func, v: Complex<T>) -> (Vec<Complex<T>>, Complex<T>) {
    let pi = T::PI();
    let two_pi = pi + pi;
    match g {
        Func::Exp => {
            let seeds = if v.norm() > T::zero() { vec![v.ln()] } else { Vec::new() };
            (seeds, Complex::new(T::zero(), two_pi))
        }
        Func::Sin => {
            let w = v.asin();
            (vec![w, real(pi) - w], real(two_pi))
        }
        Func::Cos => {
            let w = v.acos();
            (vec![w, -w], real(two_pi))
        }
        Func::Tan => {
            let i = Complex::new(T::zero(), T::one());
            let omitted = (v - i).norm().min((v + i).norm()) <= T::lit(1e-14);
            let seeds = if omitted { Vec::new() } else { vec![v.atan()] };
            (seeds, real(pi))
        }
    }
}

/// Structural divisor of `f` in `|z| ≤ r`, or `None` when the tree falls
/// outside the supported shapes: rational subtrees, `exp` of polynomials,
/// `sin`/`cos`/`tan` of affine arguments, and products, quotients and
/// integer powers of these.
pub fn exact_divisor<T: Real>(f: &Expr<T>, r: T) -> Option<DivisorCatalog<T>> {
    let factors = factorize(f)?;
    let reach = r * (T::one() + T::lit(1e-9)) + T::lit(1e-12);
    let mut points: Vec<(Complex<T>, i64)> = Vec::new();
    for factor in factors {
        match factor {
            Factor::Poly(p, e) => {
                if p.is_zero() {
                    return None;
                }
                if p.degree() == 0 {
                    continue;
                }
                for (root, m) in poly_roots(p.coeffs()).ok()? {
                    if root.norm() <= reach {
                        points.push((root, m as i64 * e));
                    }
                }
            }
            Factor::Trig(func, a, b, e) => {
                let pi = T::PI();
                let half_pi = real(pi * T::lit(0.5));
                let (zeros, poles) = match func {
                    Func::Sin => (Some(real(T::zero())), None),
                    Func::Cos => (Some(half_pi), None),
                    Func::Tan => (Some(real(T::zero())), Some(half_pi)),
                    Func::Exp => unreachable!("exp contributes no lattice"),
                };
                if let Some(w0) = zeros {
                    points.extend(lattice(w0, real(pi), a, b, reach).into_iter().map(|z| (z, e)));
                }
                if let Some(w0) = poles {
                    points.extend(lattice(w0, real(pi), a, b, reach).into_iter().map(|z| (z, -e)));
                }
            }
            Factor::Shifted(func, a, b, v, e) => {
                let (seeds, period) = preimages(func, v);
                for w0 in seeds {
                    points.extend(lattice(w0, period, a, b, reach).into_iter().map(|z| (z, e)));
                }
                if func == Func::Tan {
                    let half_pi = real(T::PI() * T::lit(0.5));
                    points.extend(lattice(half_pi, real(T::PI()), a, b, reach).into_iter().map(|z| (z, -e)));
                }
            }
        }
    }
    let merged = merge_signed(points, T::lit(1e-8));
    Some(DivisorCatalog::from_entries(r, signed_to_entries(merged), true, T::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::DivisorKind;
    use crate::funcexpr::parse_expr;

    fn catalog(s: &str, r: f64) -> Option<DivisorCatalog<f64>> {
        exact_divisor(&parse_expr::<f64>(s, false).unwrap(), r)
    }

    #[test]
    fn full_cancellation_leaves_nothing() {
        let c = catalog("(z-1)^2*(1/(z-1)^2)", 2.0).unwrap();
        assert!(c.entries.is_empty());
        assert!(c.exact);
    }

    #[test]
    fn exp_is_a_unit() {
        let c = catalog("exp(z^2)*(z-0.5)", 1.0).unwrap();
        assert_eq!(c.entries.len(), 1);
        assert_eq!(c.entries[0].kind, DivisorKind::Zero);
        assert_eq!(c.entries[0].multiplicity, 1);
        assert!((c.entries[0].location - Complex::new(0.5, 0.0)).norm() <= 1e-15);
    }

    #[test]
    fn tan_lattice() {
        let c = catalog("tan(z)", 2.0).unwrap();
        let zeros: Vec<_> = c.zeros().collect();
        let poles: Vec<_> = c.poles().collect();
        assert_eq!(zeros.len(), 1);
        assert!(zeros[0].location.norm() <= 1e-15);
        assert_eq!(poles.len(), 2);
        for p in poles {
            assert!((p.location.norm() - std::f64::consts::FRAC_PI_2).abs() <= 1e-15);
            assert_eq!(p.multiplicity, 1);
        }
    }

    #[test]
    fn quotient_multiplicity_arithmetic() {
        let c = catalog("(z-1)^3/(z-1)", 2.0).unwrap();
        assert_eq!(c.entries.len(), 1);
        assert_eq!(c.entries[0].multiplicity, 2);
        assert_eq!(c.entries[0].kind, DivisorKind::Zero);
        let c = catalog("(z-1)/(z-1)^4", 2.0).unwrap();
        assert_eq!(c.entries[0].multiplicity, 3);
        assert_eq!(c.entries[0].kind, DivisorKind::Pole);
    }

    #[test]
    fn rational_with_sum_in_denominator() {
        let c = catalog("z/(1-z^2)", 1.5).unwrap();
        assert_eq!(c.count(DivisorKind::Zero, 1.5), 1);
        assert_eq!(c.count(DivisorKind::Pole, 1.5), 2);
    }

    #[test]
    fn affine_trig_and_unsupported_shapes() {
        let c = catalog("sin(2*z - 1)", 2.0).unwrap();
        // z = (kπ + 1)/2 with |z| ≤ 2 leaves k ∈ {-1, 0}
        assert_eq!(c.count(DivisorKind::Zero, 2.0), 2);
        assert!(catalog("sin(z^2)", 2.0).is_none());
        assert!(catalog("exp(z^2) - 1", 2.0).is_none());
        assert!(catalog("exp(1/z)", 2.0).is_none());
        assert!(catalog("0*z", 2.0).is_none());
    }

    #[test]
    fn shifted_lattices() {
        let c = catalog("exp(z) - 1", 7.0).unwrap();
        assert_eq!(c.count(DivisorKind::Zero, 7.0), 3);
        assert!(c.zeros().any(|e| (e.location - Complex::new(0.0, 2.0 * std::f64::consts::PI)).norm() <= 1e-14));
        let c = catalog("tan(z) - 2i", 1.0).unwrap();
        assert_eq!(c.count(DivisorKind::Zero, 1.0), 0);
        let c = catalog("tan(z) - 0.5", 1.0).unwrap();
        assert_eq!(c.count(DivisorKind::Zero, 1.0), 1);
        assert!((c.entries[0].location.re - 0.5f64.atan()).abs() <= 1e-15);
        assert!(catalog("tan(z) - i", 3.0).unwrap().zeros().next().is_none());
        // sin w = 1 has double roots at π/2 + 2πk
        let c = catalog("sin(z) - 1", 2.0).unwrap();
        assert_eq!(c.entries.len(), 1);
        assert_eq!(c.entries[0].multiplicity, 2);
        let c = catalog("2*cos(z) + 1", 3.0).unwrap();
        assert_eq!(c.count(DivisorKind::Zero, 3.0), 2);
        assert!(catalog("exp(z) - 0", 3.0).unwrap().entries.is_empty());
    }

    #[test]
    fn sin_over_z_cancels_at_origin() {
        let c = catalog("sin(z)/z", 4.0).unwrap();
        assert_eq!(c.count(DivisorKind::Zero, 4.0), 2);
        assert_eq!(c.count(DivisorKind::Pole, 4.0), 0);
    }
}
