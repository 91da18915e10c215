//! Argument-principle counts on circles.

use num_complex::Complex;

use super::config::QuadratureConfig;
use crate::error::{Error, Result};
use crate::funcexpr::{differentiate, Expr, ExtComplex};
use crate::quadrature::{golden_max, periodic_mean};
use crate::scalar::Real;

const PROBE_NODES: usize = 1024;

pub(crate) fn on_circle<T: Real>(r: T, theta: T) -> Complex<T> {
    Complex::from_polar(r, theta)
}

/// `f′ / (f − a)` at `z`, failing when `z` is an `a`-point or a pole.
pub(crate) fn log_derivative<T: Real>(f: &Expr<T>, fp: &Expr<T>, a: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    let value = f.eval_at(z)?;
    let slope = fp.eval_at(z)?;
    match (value, slope) {
        (ExtComplex::Finite(w), ExtComplex::Finite(d)) => {
            let w = w - a;
            if w.re == T::zero() && w.im == T::zero() {
                return Err(Error::Domain(format!("a-point on the contour at {z}")));
            }
            Ok(d / w)
        }
        _ => Err(Error::Domain(format!("pole on the contour at {z}"))),
    }
}

/// Newton-step distance estimate `|(f − a)/f′|` to the nearest `a`-point or pole.
fn divisor_distance<T: Real>(f: &Expr<T>, fp: &Expr<T>, a: Complex<T>, z: Complex<T>) -> Result<T> {
    let value = f.eval_at(z)?;
    let slope = fp.eval_at(z)?;
    Ok(match (value, slope) {
        (ExtComplex::Infinity, _) | (_, ExtComplex::Infinity) => T::zero(),
        (ExtComplex::Finite(w), ExtComplex::Finite(d)) => {
            let w = (w - a).norm();
            let d = d.norm();
            if w == T::zero() {
                T::zero()
            } else if d == T::zero() {
                T::infinity()
            } else {
                w / d
            }
        }
    })
}

/// Fails with a proximity error when an `a`-point of `f` or a pole lies within
/// `ε(1 + r)` of the circle `|z| = r`.
pub(crate) fn probe_circle<T: Real>(
    f: &Expr<T>,
    fp: &Expr<T>,
    a: Complex<T>,
    r: T,
    cfg: &QuadratureConfig<T>,
) -> Result<()> {
    let threshold = cfg.singularity_margin * (T::one() + r);
    let n = PROBE_NODES;
    let step = (T::PI() + T::PI()) / T::from_usize_lossy(n);
    let angles: Vec<T> = (0..n).map(|j| step * T::from_usize_lossy(j)).collect();
    let dist: Vec<T> = angles.iter().map(|&t| divisor_distance(f, fp, a, on_circle(r, t))).collect::<Result<_>>()?;
    let spacing = r * step;
    let violation = |angle: T| Error::CircleProximity { radius: r.to_f64_lossy(), angle: angle.to_f64_lossy() };
    for j in 0..n {
        let d = dist[j];
        if d < threshold {
            return Err(violation(angles[j]));
        }
        let prev = dist[(j + n - 1) % n];
        let next = dist[(j + 1) % n];
        if d <= prev && d <= next && d < T::lit(8.0) * spacing {
            let (angle, neg) = golden_max(
                |t| Ok(-divisor_distance(f, fp, a, on_circle(r, t))?),
                angles[j] - step,
                angles[j] + step,
                T::lit(1e-14) * (T::one() + angles[j].abs()),
            )?;
            if -neg < threshold {
                return Err(violation(angle));
            }
        }
    }
    Ok(())
}

/// Raw argument integral `(1/2πi)∮ f′/(f − a) dz` rounded to the integer it
/// approaches under nested trapezoid refinement.
pub(crate) fn argument_count<T: Real>(
    f: &Expr<T>,
    fp: &Expr<T>,
    a: Complex<T>,
    r: T,
    cfg: &QuadratureConfig<T>,
) -> Result<i64> {
    let est = periodic_mean(
        |t| {
            let z = on_circle(r, t);
            Ok(log_derivative(f, fp, a, z)? * z)
        },
        cfg.circle_nodes_initial,
        T::lit(1e-4),
        cfg.max_subdivisions,
    )?;
    let k = est.value.re.round();
    let quarter = T::lit(0.25);
    if (est.value.re - k).abs() > quarter || est.value.im.abs() > quarter {
        return Err(Error::NonConvergence(format!("winding integral {} is not near an integer", est.value)));
    }
    k.to_i64().ok_or_else(|| Error::NonConvergence("winding count out of range".into()))
}

pub(crate) fn check_radius<T: Real>(r: T) -> Result<()> {
    if !(r > T::zero()) || !r.is_finite() {
        return Err(Error::Precondition(format!("radius must be positive and finite, got {r}")));
    }
    Ok(())
}

/// Derivative of `f`, or a precondition error when `f` is constant.
pub(crate) fn nonconstant_derivative<T: Real>(f: &Expr<T>) -> Result<Expr<T>> {
    if f.has_index() {
        return Err(Error::UnboundIndex);
    }
    let fp = differentiate(f).folded();
    if !f.has_var() || fp.is_zero() {
        return Err(Error::Precondition("non-constant function required".into()));
    }
    Ok(fp)
}

/// Argument-principle count inside `|z| < r`.
///
/// For finite `a` this is `Z(f − a) − P(f)`. For `a = ∞` it is the number of
/// poles `P(f)` with multiplicity, read from the divisor catalog.
pub fn winding_count<T: Real>(f: &Expr<T>, a: ExtComplex<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<i64> {
    cfg.validate()?;
    check_radius(r)?;
    let fp = nonconstant_derivative(f)?;
    match a {
        ExtComplex::Infinity => {
            let catalog = super::catalog_of(f, r, cfg)?;
            if let Some(p) = catalog
                .catalog
                .poles()
                .find(|p| (p.location.norm() - r).abs() < cfg.singularity_margin * (T::one() + r))
            {
                return Err(Error::CircleProximity {
                    radius: r.to_f64_lossy(),
                    angle: p.location.arg().to_f64_lossy(),
                });
            }
            Ok(catalog.catalog.poles().map(|p| p.multiplicity as i64).sum())
        }
        ExtComplex::Finite(a) => {
            probe_circle(f, &fp, a, r, cfg)?;
            argument_count(f, &fp, a, r, cfg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_expr;

    fn count(s: &str, a: ExtComplex<f64>, r: f64) -> Result<i64> {
        winding_count(&parse_expr::<f64>(s, false).unwrap(), a, r, &QuadratureConfig::default())
    }

    #[test]
    fn polynomial_with_double_root() {
        assert_eq!(count("(z-1)^2*(z+2)", ExtComplex::zero(), 1.5).unwrap(), 2);
    }

    #[test]
    fn exp_is_zero_free() {
        assert_eq!(count("exp(z)", ExtComplex::zero(), 5.0).unwrap(), 0);
    }

    #[test]
    fn tan_pole_count() {
        assert_eq!(count("tan(z)", ExtComplex::Infinity, 2.0).unwrap(), 2);
        // one zero minus two poles
        assert_eq!(count("tan(z)", ExtComplex::zero(), 2.0).unwrap(), -1);
    }

    #[test]
    fn circle_proximity_is_reported() {
        let err = count("z - 1", ExtComplex::zero(), 1.0).unwrap_err();
        assert!(matches!(err, Error::CircleProximity { .. }));
        let err = count("1/(z - 2i)", ExtComplex::zero(), 2.0 + 1e-12).unwrap_err();
        assert!(
            matches!(err, Error::CircleProximity { angle, .. } if (angle - std::f64::consts::FRAC_PI_2).abs() < 1e-3)
        );
    }

    #[test]
    fn constant_is_rejected() {
        assert!(matches!(count("3", ExtComplex::zero(), 1.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn near_circle_root_still_counts() {
        assert_eq!(count("z - 0.999", ExtComplex::zero(), 1.0).unwrap(), 1);
        assert_eq!(count("z - 1.001", ExtComplex::zero(), 1.0).unwrap(), 0);
    }
}
