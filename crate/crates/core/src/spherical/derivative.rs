use num_complex::Complex;

use crate::divisor::{check_radius, eval_certified, on_circle, QuadratureConfig};
use crate::error::{Error, Result};
use crate::funcexpr::{differentiate, Expr, ExtComplex};
use crate::quadrature::periodic_mean;
use crate::scalar::Real;

/// `|d| / (1 + a²)` without overflow for large `a`.
fn sharp_ratio<T: Real>(d: T, a: T) -> T {
    if a <= T::one() {
        d / (T::one() + a * a)
    } else {
        d / a / a / (T::one() + T::one() / (a * a))
    }
}

/// `1/f` with quotients and powers flipped rather than nested.
fn reciprocal<T: Real>(f: &Expr<T>) -> Expr<T> {
    match f {
        Expr::Div(a, b) => Expr::div(b.as_ref().clone(), a.as_ref().clone()),
        Expr::Pow(a, k) if *k != i32::MIN => Expr::pow(a.as_ref().clone(), -k),
        _ => Expr::div(Expr::real(T::one()), f.clone()),
    }
}

/// `f` together with `f′` and `(1/f)′`, so that `f♯` can be evaluated
/// repeatedly, at poles through the identity `f♯ = (1/f)♯`.
#[derive(Clone, Debug)]
pub(crate) struct Sharp<T> {
    f: Expr<T>,
    fp: Expr<T>,
    inv_fp: Expr<T>,
}

impl<T: Real> Sharp<T> {
    pub(crate) fn new(f: &Expr<T>) -> Result<Self> {
        if f.has_index() {
            return Err(Error::UnboundIndex);
        }
        let fp = differentiate(f).folded();
        let inv_fp = differentiate(&reciprocal(f)).folded();
        Ok(Sharp { f: f.clone(), fp, inv_fp })
    }

    fn pole_form(&self, z: Complex<T>, inv_value: T) -> Result<T> {
        match eval_certified(&self.inv_fp, ExtComplex::Finite(z))? {
            ExtComplex::Finite(d) => Ok(sharp_ratio(d.norm(), inv_value)),
            ExtComplex::Infinity => Err(Error::Domain(format!("spherical derivative undefined at {z}"))),
        }
    }

    pub(crate) fn at(&self, z: Complex<T>) -> Result<T> {
        match eval_certified(&self.f, ExtComplex::Finite(z))? {
            ExtComplex::Infinity => self.pole_form(z, T::zero()),
            ExtComplex::Finite(w) => match eval_certified(&self.fp, ExtComplex::Finite(z))? {
                ExtComplex::Finite(d) => Ok(sharp_ratio(d.norm(), w.norm())),
                ExtComplex::Infinity => {
                    let n = w.norm();
                    self.pole_form(z, if n == T::zero() { T::infinity() } else { T::one() / n })
                }
            },
        }
    }
}

/// Spherical derivative `f♯(z) = |f′(z)| / (1 + |f(z)|²)`, computed at poles as `(1/f)♯(z)`.
pub fn spherical_derivative<T: Real>(f: &Expr<T>, z: Complex<T>) -> Result<T> {
    Sharp::new(f)?.at(z)
}

/// Spherical length `L(r) = ∫₀^{2π} f♯(re^{iθ})·r dθ` of the image of `|z| = r`.
pub fn spherical_length<T: Real>(f: &Expr<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    cfg.validate()?;
    check_radius(r)?;
    let sharp = Sharp::new(f)?;
    let two_pi = T::PI() + T::PI();
    let scale = two_pi * r;
    let est = periodic_mean(
        |t| sharp.at(on_circle(r, t)),
        cfg.circle_nodes_initial,
        cfg.abs_tol / scale,
        cfg.max_subdivisions,
    )?;
    Ok(est.value * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_expr;

    fn p(s: &str) -> Expr<f64> {
        parse_expr(s, false).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let zero = Complex::new(0.0, 0.0);
        assert!((spherical_derivative(&p("exp(z)"), zero).unwrap() - 0.5).abs() <= 1e-15);
        assert!((spherical_derivative(&p("1/z"), zero).unwrap() - 1.0).abs() <= 1e-12);
        assert!((spherical_derivative(&p("5*z"), zero).unwrap() - 5.0).abs() <= 1e-15);
        // double pole: (1/f)′ vanishes there
        assert!(spherical_derivative(&p("1/z^2"), zero).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn length_examples() {
        let cfg = QuadratureConfig::default();
        assert!((spherical_length(&p("z"), 1.0, &cfg).unwrap() - std::f64::consts::PI).abs() <= 1e-9);
        assert_eq!(spherical_length(&p("3"), 1.0, &cfg).unwrap(), 0.0);
        let coarse = spherical_length(&p("exp(z)"), 0.5, &cfg).unwrap();
        let fine = spherical_length(&p("exp(z)"), 0.5, &cfg.with_abs_tol(1e-12)).unwrap();
        assert!((coarse - fine).abs() <= cfg.abs_tol);
    }

    #[test]
    fn family_index_is_rejected() {
        let f = parse_expr::<f64>("n*z", true).unwrap();
        assert!(matches!(spherical_derivative(&f, Complex::new(0.0, 0.0)), Err(Error::UnboundIndex)));
    }
}
