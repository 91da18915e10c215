//! Divisors of meromorphic expressions: structural catalogs, argument-principle
//! counts and numerical localization.

mod catalog;
mod config;
mod exact;
mod localize;
mod poly;
mod winding;

use num_complex::Complex;

pub use catalog::{DivisorCatalog, DivisorEntry, DivisorKind};
pub use config::QuadratureConfig;
pub use exact::{exact_divisor, to_rational};
pub use localize::localize_divisor;
pub use poly::{poly_roots, Poly};
pub use winding::winding_count;

pub(crate) use winding::{check_radius, nonconstant_derivative, on_circle};

use crate::error::{Error, Result};
use crate::funcexpr::{Expr, ExtComplex};
use crate::scalar::Real;

/// A divisor catalog together with how it was obtained.
#[derive(Clone, Debug)]
pub struct ResolvedCatalog<T> {
    pub catalog: DivisorCatalog<T>,
    /// Radius of the circle used for numerical localization (`None` when exact).
    pub localization_radius: Option<T>,
    /// True when the first localization circle had to be moved.
    pub nudged: bool,
}

const LOCALIZATION_OFFSETS: [f64; 6] = [0.01, 0.023, 0.037, 0.051, 0.066, 0.083];

/// Divisor of `f` in `|z| ≤ r`: structural when possible, otherwise localized
/// on a slightly larger circle (moved outward again if a divisor point sits
/// on it) and restricted to `r`.
pub fn catalog_of<T: Real>(f: &Expr<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<ResolvedCatalog<T>> {
    if f.has_index() {
        return Err(Error::UnboundIndex);
    }
    check_radius(r)?;
    if let Some(catalog) = exact_divisor(f, r) {
        return Ok(ResolvedCatalog { catalog, localization_radius: None, nudged: false });
    }
    let mut last = None;
    for (j, offset) in LOCALIZATION_OFFSETS.iter().enumerate() {
        let big = r + T::lit(*offset) * (T::one() + r);
        match localize_divisor(f, big, cfg) {
            Ok(c) => {
                return Ok(ResolvedCatalog { catalog: c.restricted(r), localization_radius: Some(big), nudged: j > 0 });
            }
            Err(e @ (Error::CircleProximity { .. } | Error::NonConvergence(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Poles of `f` in `|z| ≤ r`; empty without further work for trees that
/// cannot produce poles.
pub fn poles_of<T: Real>(f: &Expr<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<ResolvedCatalog<T>> {
    if f.has_index() {
        return Err(Error::UnboundIndex);
    }
    if f.is_structurally_entire() || !f.has_var() {
        return Ok(ResolvedCatalog { catalog: DivisorCatalog::empty(r), localization_radius: None, nudged: false });
    }
    catalog_of(f, r, cfg)
}

/// `a`-points of `f` (zeros of `f − a`) together with the poles of `f`.
pub fn a_points_of<T: Real>(f: &Expr<T>, a: Complex<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<ResolvedCatalog<T>> {
    if a.re == T::zero() && a.im == T::zero() {
        return catalog_of(f, r, cfg);
    }
    catalog_of(&Expr::sub(f.clone(), Expr::constant(a)), r, cfg)
}

/// Evaluates `f` at `z`, resolving a structural indeterminate form (such as
/// `sin(z)/z` at 0) by the limit value.
///
/// The limit is the mean of `f` over a small circle around `z`, which equals
/// the value of the continuous extension up to `O(δ⁸)`. When the structural
/// divisor is available it decides whether the point is a zero or a pole.
pub fn eval_certified<T: Real>(f: &Expr<T>, z: ExtComplex<T>) -> Result<ExtComplex<T>> {
    let err = match f.eval(z) {
        Err(e @ Error::Indeterminate(_)) => e,
        other => return other,
    };
    let z = match z {
        ExtComplex::Finite(z) => z,
        ExtComplex::Infinity => return Err(err),
    };
    let scale = T::one() + z.norm();
    let mut delta = T::lit(1e-3) * scale;
    if let Some(c) = exact_divisor(f, z.norm() + T::one()) {
        let here = T::lit(1e-8) * scale;
        if let Some(e) = c.entries.iter().find(|e| (e.location - z).norm() <= here) {
            return Ok(match e.kind {
                DivisorKind::Zero => ExtComplex::zero(),
                DivisorKind::Pole => ExtComplex::Infinity,
            });
        }
        let nearest = c.entries.iter().map(|e| (e.location - z).norm()).fold(T::infinity(), T::min);
        delta = delta.min(nearest * T::lit(0.25));
    }
    let nodes = 8;
    let mut values = Vec::with_capacity(nodes);
    for j in 0..nodes {
        let t = (T::PI() + T::PI()) * T::from_usize_lossy(j) / T::from_usize_lossy(nodes);
        match f.eval_at(z + on_circle(delta, t))? {
            ExtComplex::Finite(v) => values.push(v),
            ExtComplex::Infinity => return Err(err),
        }
    }
    let mean = values.iter().fold(Complex::new(T::zero(), T::zero()), |acc, v| acc + v) / T::from_usize_lossy(nodes);
    let spread = values.iter().map(|v| (v - mean).norm()).fold(T::zero(), T::max);
    let magnitude = values.iter().map(|v| v.norm()).fold(T::zero(), T::max);
    if magnitude > T::lit(1e12) && spread > T::lit(1e-3) * magnitude {
        return Ok(ExtComplex::Infinity);
    }
    if spread <= T::lit(0.1) * (T::one() + mean.norm()) * delta.sqrt() {
        return Ok(ExtComplex::Finite(mean));
    }
    Err(err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_expr;

    fn p(s: &str) -> Expr<f64> {
        parse_expr(s, false).unwrap()
    }

    #[test]
    fn structural_cancellation_is_resolved() {
        let v = eval_certified(&p("sin(z)/z"), ExtComplex::zero()).unwrap();
        assert!((v.finite().unwrap() - Complex::new(1.0, 0.0)).norm() <= 1e-12);
        let v = eval_certified(&p("z * (1/z)"), ExtComplex::zero()).unwrap();
        assert!((v.finite().unwrap() - Complex::new(1.0, 0.0)).norm() <= 1e-12);
        let v = eval_certified(&p("z^2 * (1/z)"), ExtComplex::zero()).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn plain_values_pass_through() {
        assert!(eval_certified(&p("z/(1-z^2)"), ExtComplex::real(1.0)).unwrap().is_infinite());
        assert_eq!(eval_certified(&p("exp(z)"), ExtComplex::zero()).unwrap(), ExtComplex::real(1.0));
    }

    #[test]
    fn catalog_falls_back_to_localization() {
        let cfg = QuadratureConfig::default();
        let c = catalog_of(&p("exp(z^2) - 1"), 1.0, &cfg).unwrap();
        assert!(!c.catalog.exact);
        assert_eq!(c.catalog.entries.len(), 1);
        assert_eq!(c.catalog.entries[0].multiplicity, 2);
        assert!(c.catalog.entries[0].location.norm() <= 1e-6);
        let c = catalog_of(&p("z - 1"), 1.0, &cfg).unwrap();
        assert!(c.catalog.exact);
        assert_eq!(c.catalog.count(DivisorKind::Zero, 1.0), 1);
    }

    #[test]
    fn on_circle_points_are_included_after_localization() {
        let cfg = QuadratureConfig::default();
        // zero of sin(z) - sin(1) at z = 1 sits on the circle
        let c = a_points_of(&p("sin(z)"), Complex::new(1f64.sin(), 0.0), 1.0, &cfg).unwrap();
        assert_eq!(c.catalog.count(DivisorKind::Zero, 1.0), 1);
    }
}
