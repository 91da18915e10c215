use num_complex::Complex;

use super::family::ProbeConfig;
use crate::divisor::{check_radius, QuadratureConfig};
use crate::error::{Error, Result};
use crate::funcexpr::{compose_map, Expr, ExtComplex, MobiusMap};
use crate::nevanlinna::{proximity, CheckVerdict, Relation};
use crate::scalar::Real;

/// `|dτ/dθ| = (r² − |α|²)/|r − ᾱe^{iθ}|²` where `re^{iτ} = ψ_α(re^{iθ})`.
pub fn psi_angle_rate<T: Real>(alpha: Complex<T>, r: T, theta: T) -> T {
    let d = Complex::new(r, T::zero()) - alpha.conj() * Complex::from_polar(T::one(), theta);
    (r * r - alpha.norm_sqr()) / d.norm_sqr()
}

/// Distortion bounds for `ψ_α` with `k = (r + r₀)/(r − r₀)`:
/// `1/k < |dτ/dθ| < k` on a `θ` grid and `m(r,g)/k < m(r, g∘ψ_α) < k·m(r,g)`.
pub fn check_psi_distortion<T: Real>(
    g: &Expr<T>,
    alpha: Complex<T>,
    r: T,
    r0: T,
    cfg: &QuadratureConfig<T>,
    probe: &ProbeConfig<T>,
) -> Result<CheckVerdict<T>> {
    cfg.validate()?;
    probe.validate()?;
    check_radius(r)?;
    if !(alpha.norm() <= r0 && r0 < r) {
        return Err(Error::Precondition(format!(
            "psi distortion needs |alpha| ≤ r0 < r, got |alpha| = {}, r0 = {r0}, r = {r}",
            alpha.norm()
        )));
    }
    let k = (r + r0) / (r - r0);
    let n = probe.theta_nodes;
    let step = (T::PI() + T::PI()) / T::from_usize_lossy(n);
    let rates: Vec<T> = (0..n).map(|j| psi_angle_rate(alpha, r, step * T::from_usize_lossy(j))).collect();
    let lo = rates.iter().copied().fold(T::infinity(), T::min);
    let hi = rates.iter().copied().fold(T::neg_infinity(), T::max);
    let mut subs = vec![
        CheckVerdict::new("rate_lower", Relation::Below, T::one() / k, lo, T::zero()),
        CheckVerdict::new("rate_upper", Relation::Below, hi, k, T::zero()),
    ];

    let m_g = proximity(g, ExtComplex::Infinity, r, cfg)?;
    let composed = compose_map(g, &MobiusMap::psi(alpha, r)?);
    let mut notes = Vec::new();
    let mut m_composed = None;
    if m_g > cfg.abs_tol {
        let m_c = proximity(&composed, ExtComplex::Infinity, r, cfg)?;
        let slack = T::lit(10.0) * cfg.abs_tol;
        subs.push(CheckVerdict::new("m_lower", Relation::Below, m_g / k, m_c, slack));
        subs.push(CheckVerdict::new("m_upper", Relation::Below, m_c, k * m_g, slack));
        m_composed = Some(m_c);
    } else {
        notes.push(format!("m bounds skipped: m(r, g) = {m_g} is within the quadrature tolerance"));
    }

    let mut v =
        CheckVerdict::all_of("psi", subs).with("k", k).with("min_rate", lo).with("max_rate", hi).with("m_g", m_g);
    if let Some(m_c) = m_composed {
        v = v.with("m_g_psi", m_c);
    }
    v.notes = notes;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_expr;

    fn run(g: &str, alpha: f64, r: f64, r0: f64) -> Result<CheckVerdict<f64>> {
        check_psi_distortion(
            &parse_expr(g, false).unwrap(),
            Complex::new(alpha, 0.0),
            r,
            r0,
            &QuadratureConfig::default(),
            &ProbeConfig::default(),
        )
    }

    #[test]
    fn reciprocal_shift_example() {
        // |1/(z-2)| < 1 on |z| = 0.8, so m vanishes and only the rate bounds apply
        let v = run("1/(z-2)", 0.3, 0.8, 0.5).unwrap();
        assert!((v.detail("k").unwrap() - 13.0 / 3.0).abs() <= 1e-12);
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn identity_map() {
        let v = run("5/(z-2)", 0.0, 0.8, 0.5).unwrap();
        assert!(v.pass);
        assert_eq!(v.subchecks.len(), 4);
        assert!((v.detail("m_g").unwrap() - v.detail("m_g_psi").unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn rates_inside_k() {
        let alpha = Complex::new(0.4, 0.0);
        for j in 0..128 {
            let t = j as f64 * std::f64::consts::TAU / 128.0;
            let rate = psi_angle_rate(alpha, 1.0, t);
            assert!(rate > 1.0 / 3.0 && rate < 3.0);
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(run("z", 0.6, 1.0, 0.5), Err(Error::Precondition(_))));
        assert!(matches!(run("z", 0.1, 1.0, 1.0), Err(Error::Precondition(_))));
    }
}
