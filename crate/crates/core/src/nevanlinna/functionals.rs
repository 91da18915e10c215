use num_complex::Complex;

use super::circle::{circle_log_mean, circle_values, Part};
use crate::divisor::{a_points_of, check_radius, on_circle, poles_of, DivisorKind, QuadratureConfig};
use crate::error::{Error, Result};
use crate::funcexpr::{Expr, ExtComplex};
use crate::quadrature::{golden_max, pairwise_sum};
use crate::scalar::Real;

/// `log⁺x = max(log x, 0)`, with `log⁺0 = 0`.
pub fn log_plus<T: Real>(x: T) -> Result<T> {
    if x.is_nan() || x < T::zero() {
        return Err(Error::Precondition(format!("log⁺ needs a non-negative argument, got {x}")));
    }
    Ok(if x <= T::one() { T::zero() } else { x.ln() })
}

/// Proximity function `m(r, a)`: the circle mean of `log⁺|f|` for `a = ∞`
/// and of `log⁺|1/(f − a)|` otherwise.
pub fn proximity<T: Real>(f: &Expr<T>, a: ExtComplex<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    proximity_with_tol(f, a, r, cfg.abs_tol, cfg)
}

pub(crate) fn proximity_with_tol<T: Real>(
    f: &Expr<T>,
    a: ExtComplex<T>,
    r: T,
    tol: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    cfg.validate()?;
    check_radius(r)?;
    match a {
        ExtComplex::Infinity => circle_log_mean(f, r, Part::Positive, tol, cfg),
        ExtComplex::Finite(a) => {
            let shifted = if a.norm() == T::zero() { f.clone() } else { Expr::sub(f.clone(), Expr::constant(a)) };
            circle_log_mean(&shifted, r, Part::Negative, tol, cfg)
        }
    }
}

/// Unintegrated and integrated counting functions of the `a`-points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Counting<T> {
    /// `n(r, a)`
    pub n: u32,
    /// `N(r, a)`
    pub big_n: T,
    /// Whether the divisor was read off the expression structurally.
    pub exact: bool,
    /// Whether the localization circle had to be moved.
    pub nudged: bool,
}

/// `n(r, a)` and `N(r, a) = Σ_{0<|b|≤r} log(r/|b|) + n(0, a)·log r`, from the
/// divisor catalog of `f − a` (of the poles of `f` for `a = ∞`).
pub fn counting_integrated<T: Real>(
    f: &Expr<T>,
    a: ExtComplex<T>,
    r: T,
    cfg: &QuadratureConfig<T>,
) -> Result<Counting<T>> {
    cfg.validate()?;
    check_radius(r)?;
    let (resolved, kind) = match a {
        ExtComplex::Infinity => (poles_of(f, r, cfg)?, DivisorKind::Pole),
        ExtComplex::Finite(a) => (a_points_of(f, a, r, cfg)?, DivisorKind::Zero),
    };
    let catalog = &resolved.catalog;
    let origin = catalog.origin_tolerance();
    let log_r = r.ln();
    let terms: Vec<T> = catalog
        .entries
        .iter()
        .filter(|e| e.kind == kind && e.location.norm() <= r)
        .map(|e| {
            let m = T::from_u32(e.multiplicity).expect("multiplicity representable");
            let d = e.location.norm();
            if d <= origin {
                m * log_r
            } else {
                m * (r / d).ln()
            }
        })
        .collect();
    Ok(Counting {
        n: catalog.count(kind, r),
        big_n: pairwise_sum::<T, T>(&terms),
        exact: catalog.exact,
        nudged: resolved.nudged,
    })
}

/// Nevanlinna characteristic `T(r, f) = m(r, f) + N(r, f)`.
pub fn characteristic<T: Real>(f: &Expr<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    characteristic_with_tol(f, r, cfg.abs_tol, cfg)
}

pub(crate) fn characteristic_with_tol<T: Real>(f: &Expr<T>, r: T, tol: T, cfg: &QuadratureConfig<T>) -> Result<T> {
    let m = proximity_with_tol(f, ExtComplex::Infinity, r, tol, cfg)?;
    let c = counting_integrated(f, ExtComplex::Infinity, r, cfg)?;
    Ok(m + c.big_n)
}

/// Maximum modulus `M(r, f) = max_{|z|=r} |f(z)|`: a 512-node scan refined by
/// golden-section search around the largest local maxima.
pub fn max_modulus<T: Real>(f: &Expr<T>, r: T) -> Result<T> {
    check_radius(r)?;
    if f.has_index() {
        return Err(Error::UnboundIndex);
    }
    let n = 512;
    let values = circle_values(f, r, n)?;
    let mut moduli = Vec::with_capacity(n);
    for (t, v) in &values {
        match v {
            ExtComplex::Infinity => {
                return Err(Error::Precondition(format!("pole on the circle |z| = {r} near angle {t}")));
            }
            ExtComplex::Finite(c) => moduli.push(c.norm()),
        }
    }
    let step = (T::PI() + T::PI()) / T::from_usize_lossy(n);
    let mut peaks: Vec<usize> =
        (0..n).filter(|&j| moduli[j] >= moduli[(j + n - 1) % n] && moduli[j] >= moduli[(j + 1) % n]).collect();
    peaks.sort_by(|&i, &j| moduli[j].partial_cmp(&moduli[i]).unwrap_or(std::cmp::Ordering::Equal).then(i.cmp(&j)));
    let mut best = moduli.iter().copied().fold(T::zero(), T::max);
    for &j in peaks.iter().take(3) {
        let t0 = step * T::from_usize_lossy(j);
        let (_, m) = golden_max(
            |t| match f.eval_at(on_circle(r, t))? {
                ExtComplex::Finite(c) => Ok(c.norm()),
                ExtComplex::Infinity => Err(Error::Precondition("pole on the circle".into())),
            },
            t0 - step,
            t0 + step,
            T::lit(1e-12),
        )?;
        best = best.max(m);
    }
    Ok(best)
}

/// `f(0)` with structural indeterminacies resolved.
pub(crate) fn value_at_origin<T: Real>(f: &Expr<T>) -> Result<ExtComplex<T>> {
    crate::divisor::eval_certified(f, ExtComplex::zero())
}

pub(crate) fn finite_origin_value<T: Real>(f: &Expr<T>, what: &str) -> Result<Complex<T>> {
    match value_at_origin(f)? {
        ExtComplex::Finite(c) => Ok(c),
        ExtComplex::Infinity => Err(Error::Precondition(format!("{what}: f(0) must be finite"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_expr;
    use std::f64::consts::PI;

    fn p(s: &str) -> Expr<f64> {
        parse_expr(s, false).unwrap()
    }

    fn cfg() -> QuadratureConfig<f64> {
        QuadratureConfig::default()
    }

    #[test]
    fn log_plus_values() {
        assert_eq!(log_plus(0.0).unwrap(), 0.0);
        assert!((log_plus(std::f64::consts::E.powi(2)).unwrap() - 2.0).abs() <= 1e-15);
        assert_eq!(log_plus(0.3).unwrap(), 0.0);
        assert!(log_plus(-1.0).is_err());
    }

    #[test]
    fn exponential_proximity() {
        let m = proximity(&p("exp(z)"), ExtComplex::Infinity, 2.0, &cfg()).unwrap();
        assert!((m - 2.0 / PI).abs() <= 1e-9);
        let m = proximity(&p("exp(z)"), ExtComplex::zero(), 2.0, &cfg()).unwrap();
        assert!((m - 2.0 / PI).abs() <= 1e-9);
    }

    #[test]
    fn rational_proximity_vanishes_inside() {
        let m = proximity(&p("z/(1-z^2)"), ExtComplex::Infinity, 0.4, &cfg()).unwrap();
        assert_eq!(m, 0.0);
    }

    #[test]
    fn counting_values() {
        let c = counting_integrated(&p("exp(z)"), ExtComplex::Infinity, 3.0, &cfg()).unwrap();
        assert_eq!((c.n, c.big_n), (0, 0.0));
        let c = counting_integrated(&p("1/z"), ExtComplex::Infinity, 2.5, &cfg()).unwrap();
        assert_eq!(c.n, 1);
        assert!((c.big_n - 2.5f64.ln()).abs() <= 1e-15);
        let c = counting_integrated(&p("1/(z-0.25)"), ExtComplex::Infinity, 1.0, &cfg()).unwrap();
        assert_eq!(c.n, 1);
        assert!((c.big_n - 4f64.ln()).abs() <= 1e-15);
    }

    #[test]
    fn characteristic_examples() {
        for r in [1.0, 1.5] {
            let t = characteristic(&p("exp(z^2)"), r, &cfg()).unwrap();
            assert!((t - r * r / PI).abs() <= 1e-9);
        }
        let t = characteristic(&p("exp(3*z)"), 1.3, &cfg()).unwrap();
        assert!((t - 3.9 / PI).abs() <= 1e-9);
        let t = characteristic(&p("5"), 2.0, &cfg()).unwrap();
        assert!((t - 5f64.ln()).abs() <= 1e-15);
    }

    #[test]
    fn max_modulus_examples() {
        assert!((max_modulus(&p("exp(z)"), 1.0).unwrap() - 1f64.exp()).abs() <= 1e-12);
        assert!((max_modulus(&p("z^3"), 2.0).unwrap() - 8.0).abs() <= 1e-12);
        assert!(max_modulus(&p("1/(z-1)"), 1.0).is_err());
    }
}
