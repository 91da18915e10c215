use num_complex::Complex;
use rayon::prelude::*;

use super::derivative::Sharp;
use super::family::{grid_peak, tail_slope, FamilySpec, ProbeConfig};
use crate::divisor::eval_certified;
use crate::error::{Error, Result};
use crate::funcexpr::{Expr, ExtComplex};
use crate::scalar::Real;

/// How the centres `z_n` and scales `ρ_n` are chosen.
#[derive(Clone, Debug, PartialEq)]
pub enum ZalcmanMode<T> {
    /// `z_n` maximizes `(r₀ − |z|)·f_n♯(z)` over the probe grid and `ρ_n = 1/f_n♯(z_n)`.
    Auto,
    /// Sequences supplied by the caller, one entry per index in the family range.
    Manual { z_n: Vec<Complex<T>>, rho_n: Vec<T> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZalcmanVerdict {
    BlowUp,
    Bounded,
}

impl ZalcmanVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ZalcmanVerdict::BlowUp => "blow_up",
            ZalcmanVerdict::Bounded => "bounded",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZalcmanRecord<T> {
    pub n: i64,
    pub z_n: Complex<T>,
    pub rho_n: T,
    /// `f_n♯(z_n)`
    pub peak: T,
    /// `f_n(z_n + ρ_n·w)` for each `w` of the grid.
    pub rescaled: Vec<ExtComplex<T>>,
    /// Whether some `z_n + ρ_n·w` left the disk `|z| < r₀`.
    pub leaves_disk: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZalcmanExtraction<T> {
    pub w_grid: Vec<Complex<T>>,
    pub records: Vec<ZalcmanRecord<T>>,
    /// Log-log tail slope of the peaks against `n`.
    pub peak_slope: T,
    pub verdict: ZalcmanVerdict,
    pub notes: Vec<String>,
}

/// `f(z_n + ρ_n·w)` as an expression in `w`.
pub fn rescale<T: Real>(f: &Expr<T>, z_n: Complex<T>, rho_n: T) -> Expr<T> {
    let map = Expr::add(Expr::constant(z_n), Expr::mul(Expr::real(rho_n), Expr::Var));
    f.substitute(&map)
}

fn record<T: Real>(
    family: &FamilySpec<T>,
    n: i64,
    choice: Option<(Complex<T>, T)>,
    points: &[Complex<T>],
    w_grid: &[Complex<T>],
) -> Result<ZalcmanRecord<T>> {
    let f = family.member(n);
    let (z_n, rho_n, peak) = match choice {
        Some((z_n, rho_n)) => {
            if !(rho_n > T::zero()) || !rho_n.is_finite() {
                return Err(Error::Precondition(format!("rho_n must be positive and finite, got {rho_n} at n = {n}")));
            }
            (z_n, rho_n, Sharp::new(&f)?.at(z_n)?)
        }
        None => {
            let r0 = family.r0;
            let (z_n, _, peak) = grid_peak(&f, points, |z| r0 - z.norm())?;
            if !(peak > T::zero()) {
                return Err(Error::Precondition(format!("spherical derivative of f_{n} vanishes on the probe grid")));
            }
            (z_n, T::one() / peak, peak)
        }
    };
    if !(z_n.norm() < family.r0) {
        return Err(Error::Precondition(format!("centre z_{n} = {z_n} is outside |z| < {}", family.r0)));
    }
    let g = rescale(&f, z_n, rho_n);
    let rescaled = w_grid.iter().map(|&w| eval_certified(&g, ExtComplex::Finite(w))).collect::<Result<Vec<_>>>()?;
    let leaves_disk = w_grid.iter().any(|&w| !((z_n + w * rho_n).norm() < family.r0));
    Ok(ZalcmanRecord { n, z_n, rho_n, peak, rescaled, leaves_disk })
}

/// Zalcman rescaling `g_n(w) = f_n(z_n + ρ_n·w)` across the family, with a
/// blow-up verdict when the peaks grow in `n` and `ρ_n` decreases.
pub fn zalcman_extract<T: Real>(
    family: &FamilySpec<T>,
    mode: &ZalcmanMode<T>,
    w_grid: &[Complex<T>],
    probe: &ProbeConfig<T>,
) -> Result<ZalcmanExtraction<T>> {
    probe.validate()?;
    let indices: Vec<i64> = family.indices().collect();
    let choices: Vec<Option<(Complex<T>, T)>> = match mode {
        ZalcmanMode::Auto => vec![None; indices.len()],
        ZalcmanMode::Manual { z_n, rho_n } => {
            if z_n.len() != indices.len() || rho_n.len() != indices.len() {
                return Err(Error::Precondition(format!(
                    "manual sequences must have one entry per index ({}), got {} and {}",
                    indices.len(),
                    z_n.len(),
                    rho_n.len()
                )));
            }
            z_n.iter().zip(rho_n).map(|(z, r)| Some((*z, *r))).collect()
        }
    };
    let points = match mode {
        ZalcmanMode::Auto => probe.grid(family.r0),
        ZalcmanMode::Manual { .. } => Vec::new(),
    };
    let records: Vec<ZalcmanRecord<T>> = indices
        .par_iter()
        .zip(choices.par_iter())
        .map(|(&n, choice)| record(family, n, *choice, &points, w_grid))
        .collect::<Result<_>>()?;

    let peaks: Vec<(i64, T)> = records.iter().map(|r| (r.n, r.peak)).collect();
    let peak_slope = tail_slope(&peaks);
    let rho_decreasing = records.windows(2).all(|w| w[1].rho_n <= w[0].rho_n)
        && records.len() >= 2
        && records[records.len() - 1].rho_n < records[0].rho_n;
    let verdict = if peak_slope > probe.slope_threshold && rho_decreasing {
        ZalcmanVerdict::BlowUp
    } else {
        ZalcmanVerdict::Bounded
    };
    let mut notes = Vec::new();
    let outside: Vec<String> = records.iter().filter(|r| r.leaves_disk).map(|r| r.n.to_string()).collect();
    if !outside.is_empty() {
        notes.push(format!("rescaled points leave |z| < {} for n = {}", family.r0, outside.join(", ")));
    }
    Ok(ZalcmanExtraction { w_grid: w_grid.to_vec(), records, peak_slope, verdict, notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_expr;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn manual_exponential_example() {
        let family = FamilySpec::new(parse_expr("exp(n*(z-1))/(z+1/n)", true).unwrap(), 10, 30, 2.0).unwrap();
        let z_n = (10..=30).map(|n| c(-1.0 / n as f64, 0.0)).collect();
        let rho_n = (10..=30).map(|n| (-(n as f64)).exp()).collect();
        let w = [c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)];
        let out = zalcman_extract(&family, &ZalcmanMode::Manual { z_n, rho_n }, &w, &ProbeConfig::default()).unwrap();
        let last = out.records.last().unwrap();
        for (v, w) in last.rescaled.iter().zip(w) {
            let expected = (w * std::f64::consts::E).inv();
            assert!((v.finite().unwrap() - expected).norm() <= 1e-6, "{v:?} vs {expected}");
        }
        assert_eq!(out.verdict, ZalcmanVerdict::BlowUp);
    }

    #[test]
    fn auto_linear_family() {
        let family = FamilySpec::new(parse_expr("n*z", true).unwrap(), 1, 20, 1.0).unwrap();
        let w = [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)];
        let out = zalcman_extract(&family, &ZalcmanMode::Auto, &w, &ProbeConfig::default()).unwrap();
        for r in &out.records {
            assert_eq!(r.z_n, c(0.0, 0.0));
            assert!((r.rho_n - 1.0 / r.n as f64).abs() <= 1e-15);
            for (v, w) in r.rescaled.iter().zip(&w) {
                assert!((v.finite().unwrap() - w).norm() <= 1e-12);
            }
        }
        assert!(out.records.windows(2).all(|p| p[1].peak >= p[0].peak));
        assert_eq!(out.verdict, ZalcmanVerdict::BlowUp);
    }

    #[test]
    fn auto_translates_are_bounded() {
        let family = FamilySpec::new(parse_expr("z+n", true).unwrap(), 1, 20, 0.9).unwrap();
        let out = zalcman_extract(&family, &ZalcmanMode::Auto, &[c(0.0, 0.0)], &ProbeConfig::default()).unwrap();
        assert_eq!(out.verdict, ZalcmanVerdict::Bounded);
        assert!(out.records.iter().all(|r| r.peak <= 1.0));
    }

    #[test]
    fn manual_length_mismatch() {
        let family = FamilySpec::new(parse_expr("n*z", true).unwrap(), 1, 3, 1.0).unwrap();
        let mode = ZalcmanMode::Manual { z_n: vec![c(0.0, 0.0)], rho_n: vec![1.0] };
        assert!(matches!(zalcman_extract(&family, &mode, &[], &ProbeConfig::default()), Err(Error::Precondition(_))));
    }
}
