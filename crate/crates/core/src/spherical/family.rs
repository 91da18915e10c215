use num_complex::Complex;
use rayon::prelude::*;

use super::derivative::Sharp;
use crate::error::{Error, Result};
use crate::funcexpr::Expr;
use crate::scalar::Real;

/// Indexed family `{f_n : n_lo ≤ n ≤ n_hi}` on the disk `|z| < r₀`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec<T> {
    pub template: Expr<T>,
    pub n_lo: i64,
    pub n_hi: i64,
    pub r0: T,
}

impl<T: Real> FamilySpec<T> {
    pub fn new(template: Expr<T>, n_lo: i64, n_hi: i64, r0: T) -> Result<Self> {
        if !template.has_index() {
            return Err(Error::Precondition("family template must contain the index n".into()));
        }
        if n_lo < 1 || n_hi < n_lo {
            return Err(Error::Precondition(format!("index range must satisfy 1 ≤ n_lo ≤ n_hi, got {n_lo}..{n_hi}")));
        }
        if !(r0 > T::zero()) || !r0.is_finite() {
            return Err(Error::Precondition(format!("domain radius must be positive, got {r0}")));
        }
        Ok(FamilySpec { template, n_lo, n_hi, r0 })
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.n_lo..=self.n_hi
    }

    /// The member `f_n`.
    pub fn member(&self, n: i64) -> Expr<T> {
        self.template.bind(n)
    }
}

/// Sampling resolutions and the divergence threshold shared by the family probes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeConfig<T> {
    /// Radii `r₀·i/(radial_nodes − 1)` of the polar grid.
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    /// `θ` nodes for the `|dτ/dθ|` bound.
    pub theta_nodes: usize,
    /// Log-log tail slope above which a sequence of peaks is treated as unbounded.
    pub slope_threshold: T,
}

impl<T: Real> Default for ProbeConfig<T> {
    fn default() -> Self {
        ProbeConfig { radial_nodes: 64, angular_nodes: 64, theta_nodes: 128, slope_threshold: T::lit(0.1) }
    }
}

impl<T: Real> ProbeConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.radial_nodes < 2 || self.angular_nodes < 1 || self.theta_nodes < 1 {
            return Err(Error::Precondition("probe grids need at least two radii and one angle".into()));
        }
        if !self.slope_threshold.is_finite() {
            return Err(Error::Precondition("slope threshold must be finite".into()));
        }
        Ok(())
    }

    /// Polar grid of `|z| ≤ r₀`; the origin appears once.
    pub(crate) fn grid(&self, r0: T) -> Vec<Complex<T>> {
        let mut points = vec![Complex::new(T::zero(), T::zero())];
        let last = T::from_usize_lossy(self.radial_nodes - 1);
        let step = (T::PI() + T::PI()) / T::from_usize_lossy(self.angular_nodes);
        for i in 1..self.radial_nodes {
            let rho = r0 * T::from_usize_lossy(i) / last;
            for j in 0..self.angular_nodes {
                points.push(Complex::from_polar(rho, step * T::from_usize_lossy(j)));
            }
        }
        points
    }
}

/// Largest `weight(z)·f♯(z)` over `points`, with the point and the unweighted `f♯` there.
pub(crate) fn grid_peak<T: Real>(
    f: &Expr<T>,
    points: &[Complex<T>],
    weight: impl Fn(Complex<T>) -> T,
) -> Result<(Complex<T>, T, T)> {
    let sharp = Sharp::new(f)?;
    let mut best = (points[0], T::neg_infinity(), T::zero());
    for &z in points {
        let s = sharp.at(z)?;
        let w = weight(z) * s;
        if w > best.1 {
            best = (z, w, s);
        }
    }
    Ok(best)
}

/// Least-squares slope of `log y` against `log n` over the top half of the sequence.
pub(crate) fn tail_slope<T: Real>(points: &[(i64, T)]) -> T {
    let start = points.len() / 2;
    let tail: Vec<(T, T)> = points[start..]
        .iter()
        .map(|&(n, y)| (T::from_i64(n).expect("index").ln(), y.max(T::min_positive_value()).ln()))
        .collect();
    if tail.len() < 2 {
        return T::zero();
    }
    let k = T::from_usize_lossy(tail.len());
    let mx = tail.iter().fold(T::zero(), |s, p| s + p.0) / k;
    let my = tail.iter().fold(T::zero(), |s, p| s + p.1) / k;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for &(x, y) in &tail {
        sxy = sxy + (x - mx) * (y - my);
        sxx = sxx + (x - mx) * (x - mx);
    }
    if sxx == T::zero() {
        T::zero()
    } else {
        sxy / sxx
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MartyVerdict {
    Bounded,
    Diverging,
}

impl MartyVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            MartyVerdict::Bounded => "bounded",
            MartyVerdict::Diverging => "diverging",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MartyEntry<T> {
    pub n: i64,
    /// Largest sampled `f_n♯` on the grid.
    pub sup: T,
    pub argmax: Complex<T>,
}

/// Heuristic Marty test: sampled suprema of `f_n♯` on `|z| ≤ r₀` and their growth in `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MartyReport<T> {
    pub entries: Vec<MartyEntry<T>>,
    pub tail_slope: T,
    pub threshold: T,
    pub verdict: MartyVerdict,
    /// Finite sampling cannot decide normality; the verdict is a heuristic.
    pub heuristic: bool,
}

pub fn marty_probe<T: Real>(family: &FamilySpec<T>, probe: &ProbeConfig<T>) -> Result<MartyReport<T>> {
    probe.validate()?;
    let points = probe.grid(family.r0);
    let indices: Vec<i64> = family.indices().collect();
    let entries: Vec<MartyEntry<T>> = indices
        .par_iter()
        .map(|&n| {
            let (argmax, sup, _) = grid_peak(&family.member(n), &points, |_| T::one())?;
            Ok(MartyEntry { n, sup, argmax })
        })
        .collect::<Result<_>>()?;
    let series: Vec<(i64, T)> = entries.iter().map(|e| (e.n, e.sup)).collect();
    let slope = tail_slope(&series);
    let verdict = if slope > probe.slope_threshold { MartyVerdict::Diverging } else { MartyVerdict::Bounded };
    Ok(MartyReport { entries, tail_slope: slope, threshold: probe.slope_threshold, verdict, heuristic: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcexpr::parse_expr;

    fn family(s: &str, r0: f64) -> FamilySpec<f64> {
        FamilySpec::new(parse_expr(s, true).unwrap(), 1, 50, r0).unwrap()
    }

    #[test]
    fn spec_validation() {
        let t = parse_expr::<f64>("n*z", true).unwrap();
        assert!(FamilySpec::new(parse_expr::<f64>("z", false).unwrap(), 1, 3, 1.0).is_err());
        assert!(FamilySpec::new(t.clone(), 0, 3, 1.0).is_err());
        assert!(FamilySpec::new(t.clone(), 3, 2, 1.0).is_err());
        assert!(FamilySpec::new(t, 1, 3, 0.0).is_err());
    }

    #[test]
    fn linear_family_diverges() {
        let report = marty_probe(&family("n*z", 0.5), &ProbeConfig::default()).unwrap();
        assert_eq!(report.verdict, MartyVerdict::Diverging);
        for e in &report.entries {
            assert!((e.sup - e.n as f64).abs() <= 1e-12);
        }
    }

    #[test]
    fn translates_and_reciprocals_are_bounded() {
        let report = marty_probe(&family("z+n", 0.9), &ProbeConfig::default()).unwrap();
        assert_eq!(report.verdict, MartyVerdict::Bounded);
        assert!(report.entries.last().unwrap().sup < 1e-3);
        let report = marty_probe(&family("n/z", 0.9), &ProbeConfig::default()).unwrap();
        assert_eq!(report.verdict, MartyVerdict::Bounded);
        for e in &report.entries {
            assert!(e.sup <= 1.0 / e.n as f64 + 1e-12);
        }
    }
}
