//! Circle means of `log|F|` and of its positive or negative part.
//!
//! The integrands have kinks where `|F| = 1` and logarithmic singularities at
//! zeros and poles of `F` on or near the circle. Both are located on a scan
//! grid and become panel endpoints of an adaptive Gauss–Kronrod rule; without
//! any, the integrand is smooth and periodic and the trapezoid rule is used.

use crate::divisor::{on_circle, QuadratureConfig};
use crate::error::{Error, Result};
use crate::funcexpr::{differentiate, Expr, ExtComplex};
use crate::quadrature::{bisect, gauss_kronrod, golden_max, pairwise_sum, periodic_mean};
use crate::scalar::Real;

const SCAN_NODES: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Part {
    /// `log⁺|F|`
    Positive,
    /// `log⁺(1/|F|)`
    Negative,
    /// `log|F|`
    Whole,
}

impl Part {
    fn apply<T: Real>(self, u: T) -> T {
        let v = match self {
            Part::Positive => u.max(T::zero()),
            Part::Negative => (-u).max(T::zero()),
            Part::Whole => u,
        };
        // a node exactly on a singularity is excised
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    }
}

fn log_abs<T: Real>(v: ExtComplex<T>) -> T {
    match v {
        ExtComplex::Infinity => T::infinity(),
        ExtComplex::Finite(c) => c.norm().ln(),
    }
}

/// `(1/2π)∫ part(log|F(re^{iθ})|) dθ` to absolute tolerance `tol`.
pub(crate) fn circle_log_mean<T: Real>(
    big_f: &Expr<T>,
    r: T,
    part: Part,
    tol: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    if big_f.has_index() {
        return Err(Error::UnboundIndex);
    }
    if !big_f.has_var() {
        let u = log_abs(big_f.eval(ExtComplex::zero())?);
        if u == T::infinity() && part != Part::Negative {
            return Err(Error::Precondition("function is identically infinite".into()));
        }
        if u == T::neg_infinity() && part != Part::Positive {
            return Err(Error::Precondition("function is identically zero".into()));
        }
        return Ok(part.apply(u));
    }
    let slope = differentiate(big_f);
    let u_at = |t: T| -> Result<T> { Ok(log_abs(big_f.eval_at(on_circle(r, t))?)) };
    let distance_at = |t: T| -> Result<T> {
        let z = on_circle(r, t);
        Ok(match (big_f.eval_at(z)?, slope.eval_at(z)?) {
            (ExtComplex::Infinity, _) | (_, ExtComplex::Infinity) => T::zero(),
            (ExtComplex::Finite(v), ExtComplex::Finite(d)) => {
                if v.norm() == T::zero() {
                    T::zero()
                } else if d.norm() == T::zero() {
                    T::infinity()
                } else {
                    v.norm() / d.norm()
                }
            }
        })
    };

    let two_pi = T::PI() + T::PI();
    let n = SCAN_NODES;
    let step = two_pi / T::from_usize_lossy(n);
    let angles: Vec<T> = (0..n).map(|j| step * T::from_usize_lossy(j)).collect();
    let u: Vec<T> = angles.iter().map(|&t| u_at(t)).collect::<Result<_>>()?;
    if u.iter().all(|v| *v == T::infinity()) {
        return Err(Error::Precondition("function is identically infinite on the circle".into()));
    }
    let dist: Vec<T> = angles.iter().map(|&t| distance_at(t)).collect::<Result<_>>()?;

    let mut breaks: Vec<T> = Vec::new();
    let near = T::lit(4.0) * r * step;
    for j in 0..n {
        let (prev, next) = (dist[(j + n - 1) % n], dist[(j + 1) % n]);
        if dist[j] <= prev && dist[j] <= next && dist[j] < near {
            let (t, _) = golden_max(
                |t| Ok(-distance_at(t)?),
                angles[j] - step,
                angles[j] + step,
                T::lit(1e-14) * (T::one() + angles[j].abs()),
            )?;
            breaks.push(t);
        }
    }
    if part != Part::Whole {
        for j in 0..n {
            let (a, b) = (angles[j], angles[j] + step);
            let (ua, ub) = (u[j], u[(j + 1) % n]);
            if (ua > T::zero()) != (ub > T::zero()) {
                let t = bisect(|t| Ok(u_at(t)? > T::zero()), a, b, ua > T::zero(), 80)?;
                breaks.push(t);
            }
        }
    }

    if breaks.is_empty() {
        let est = periodic_mean(|t| Ok(part.apply(u_at(t)?)), cfg.circle_nodes_initial, tol, cfg.max_subdivisions)?;
        return Ok(est.value);
    }

    let ends = arc_endpoints(breaks);
    let arcs = ends.len() - 1;
    let arc_tol = tol * two_pi / T::from_usize_lossy(arcs);
    let mut pieces = Vec::with_capacity(arcs);
    for w in ends.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b - a > T::zero()) {
            continue;
        }
        let mid = part.apply(u_at((a + b) * T::lit(0.5))?);
        let quarter = part.apply(u_at(a + (b - a) * T::lit(0.25))?);
        let three = part.apply(u_at(a + (b - a) * T::lit(0.75))?);
        if part != Part::Whole && mid == T::zero() && quarter == T::zero() && three == T::zero() {
            continue;
        }
        let est = gauss_kronrod(|t| Ok(part.apply(u_at(t)?)), a, b, arc_tol, 4000)?;
        pieces.push(est.value);
    }
    Ok(pairwise_sum::<T, T>(&pieces) / two_pi)
}

/// Sorted, deduplicated angles in `[0, 2π)` followed by the first one plus `2π`.
pub(crate) fn arc_endpoints<T: Real>(mut breaks: Vec<T>) -> Vec<T> {
    let two_pi = T::PI() + T::PI();
    for b in breaks.iter_mut() {
        *b = *b - two_pi * (*b / two_pi).floor();
        if *b >= two_pi {
            *b = T::zero();
        }
    }
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    breaks.dedup_by(|a, b| (*a - *b).abs() <= T::lit(1e-13));
    let first = breaks[0];
    breaks.push(first + two_pi);
    breaks
}

/// Samples `θ ↦ F(re^{iθ})` on `n` equally spaced nodes.
pub(crate) fn circle_values<T: Real>(f: &Expr<T>, r: T, n: usize) -> Result<Vec<(T, ExtComplex<T>)>> {
    let step = (T::PI() + T::PI()) / T::from_usize_lossy(n);
    (0..n)
        .map(|j| {
            let t = step * T::from_usize_lossy(j);
            Ok((t, f.eval_at(on_circle(r, t))?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_expr;

    fn mean(s: &str, r: f64, part: Part) -> f64 {
        let f = parse_expr::<f64>(s, false).unwrap();
        circle_log_mean(&f, r, part, 1e-11, &QuadratureConfig::default()).unwrap()
    }

    #[test]
    fn exponential_positive_part() {
        let pi = std::f64::consts::PI;
        assert!((mean("exp(z)", 2.0, Part::Positive) - 2.0 / pi).abs() <= 1e-12);
        assert!((mean("exp(z)", 2.0, Part::Negative) - 2.0 / pi).abs() <= 1e-12);
        assert!(mean("exp(z)", 2.0, Part::Whole).abs() <= 1e-12);
    }

    #[test]
    fn whole_mean_with_zero_on_circle() {
        // mean of log|e^{iθ} - 1| is 0
        assert!(mean("z - 1", 1.0, Part::Whole).abs() <= 1e-10);
        // mean of log|z - a| over |z| = R is log max(R, |a|)
        assert!((mean("z - 0.5", 1.0, Part::Whole)).abs() <= 1e-12);
        assert!((mean("z - 3", 1.0, Part::Whole) - 3f64.ln()).abs() <= 1e-12);
    }

    #[test]
    fn constant_means() {
        assert!((mean("4", 1.0, Part::Positive) - 4f64.ln()).abs() <= 1e-15);
        assert_eq!(mean("0.5", 1.0, Part::Positive), 0.0);
        assert!((mean("0.5", 1.0, Part::Negative) - 2f64.ln()).abs() <= 1e-15);
    }
}
