//! Quadrature and reduction primitives shared by the analysis modules.
//!
//! All reductions go through [`pairwise_sum`] in a fixed order so a result
//! never depends on how work was scheduled.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Values that can be integrated: reals, complex numbers and small tuples of them.
pub trait QuadValue<T: Real>: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> T;
}

impl<T: Real> QuadValue<T> for T {
    fn zero() -> Self {
        T::zero()
    }
    fn magnitude(&self) -> T {
        self.abs()
    }
}

impl<T: Real> QuadValue<T> for Complex<T> {
    fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn magnitude(&self) -> T {
        self.norm()
    }
}

/// A pair of complex integrands evaluated on the same nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pair<T>(pub Complex<T>, pub Complex<T>);

impl<T: Real> Add for Pair<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Pair(self.0 + o.0, self.1 + o.1)
    }
}

impl<T: Real> Sub for Pair<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Pair(self.0 - o.0, self.1 - o.1)
    }
}

impl<T: Real> Mul<T> for Pair<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Pair(self.0 * s, self.1 * s)
    }
}

impl<T: Real> QuadValue<T> for Pair<T> {
    fn zero() -> Self {
        Pair(Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), T::zero()))
    }
    fn magnitude(&self) -> T {
        self.0.norm().max(self.1.norm())
    }
}

/// Three complex integrands evaluated on the same nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triple<T>(pub Complex<T>, pub Complex<T>, pub Complex<T>);

impl<T: Real> Add for Triple<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Triple(self.0 + o.0, self.1 + o.1, self.2 + o.2)
    }
}

impl<T: Real> Sub for Triple<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Triple(self.0 - o.0, self.1 - o.1, self.2 - o.2)
    }
}

impl<T: Real> Mul<T> for Triple<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Triple(self.0 * s, self.1 * s, self.2 * s)
    }
}

impl<T: Real> QuadValue<T> for Triple<T> {
    fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Triple(z, z, z)
    }
    fn magnitude(&self) -> T {
        self.0.norm().max(self.1.norm()).max(self.2.norm())
    }
}

/// Pairwise (cascade) summation in index order.
pub fn pairwise_sum<T: Real, V: QuadValue<T>>(values: &[V]) -> V {
    match values.len() {
        0 => V::zero(),
        1 => values[0],
        n if n <= 8 => values[1..].iter().fold(values[0], |acc, &v| acc + v),
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum::<T, V>(lo) + pairwise_sum::<T, V>(hi)
        }
    }
}

/// Result of a refinement loop.
#[derive(Clone, Copy, Debug)]
pub struct Estimate<V, T> {
    pub value: V,
    pub error: T,
    pub evaluations: usize,
}

/// Mean value `(1/2π)∫₀^{2π} g(θ) dθ` of a periodic integrand by the
/// trapezoid rule, doubling the node count (reusing previous nodes) until two
/// successive levels differ by at most `tol`.
pub fn periodic_mean<T, V, F>(mut g: F, initial_nodes: usize, tol: T, max_doublings: u32) -> Result<Estimate<V, T>>
where
    T: Real,
    V: QuadValue<T>,
    F: FnMut(T) -> Result<V>,
{
    let two_pi = T::PI() + T::PI();
    let mut n = initial_nodes.max(4);
    let mut level_sums = Vec::new();
    let first: Vec<V> =
        (0..n).map(|j| g(two_pi * T::from_usize_lossy(j) / T::from_usize_lossy(n))).collect::<Result<_>>()?;
    level_sums.push(pairwise_sum::<T, V>(&first));
    let mut mean = level_sums[0] * (T::one() / T::from_usize_lossy(n));
    let mut evaluations = n;
    for _ in 0..max_doublings {
        let fresh: Vec<V> = (0..n)
            .map(|j| g(two_pi * (T::from_usize_lossy(2 * j + 1)) / T::from_usize_lossy(2 * n)))
            .collect::<Result<_>>()?;
        evaluations += n;
        level_sums.push(pairwise_sum::<T, V>(&fresh));
        n *= 2;
        let next = pairwise_sum::<T, V>(&level_sums) * (T::one() / T::from_usize_lossy(n));
        let change = (next - mean).magnitude();
        mean = next;
        if change <= tol {
            return Ok(Estimate { value: mean, error: change, evaluations });
        }
    }
    Err(Error::NonConvergence(format!("periodic trapezoid rule after {n} nodes")))
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

struct Panel<V, T> {
    a: T,
    b: T,
    value: V,
    error: T,
}

fn kronrod_panel<T, V, F>(g: &mut F, a: T, b: T) -> Result<Panel<V, T>>
where
    T: Real,
    V: QuadValue<T>,
    F: FnMut(T) -> Result<V>,
{
    let half = T::lit(0.5);
    let center = (a + b) * half;
    let radius = (b - a) * half;
    let fc = g(center)?;
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = radius * T::lit(XGK[j]);
        let pair = g(center - dx)? + g(center + dx)?;
        kronrod = kronrod + pair * T::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[j / 2]);
        }
    }
    let value = kronrod * radius;
    let error = ((kronrod - gauss) * radius).magnitude();
    Ok(Panel { a, b, value, error })
}

/// Globally adaptive Gauss–Kronrod (7/15) integration of `g` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops to `tol` or `max_panels` is exhausted. Nodes never touch the
/// interval endpoints, so integrable endpoint singularities are tolerated.
pub fn gauss_kronrod<T, V, F>(g: F, a: T, b: T, tol: T, max_panels: usize) -> Result<Estimate<V, T>>
where
    T: Real,
    V: QuadValue<T>,
    F: FnMut(T) -> Result<V>,
{
    let est = gauss_kronrod_best(g, a, b, tol, max_panels)?;
    if est.error > tol {
        return Err(Error::NonConvergence(format!("Gauss-Kronrod on [{a}, {b}]: error {:e} above {tol:e}", est.error)));
    }
    Ok(est)
}

/// Like [`gauss_kronrod`], but returns the best estimate reached when the
/// panel budget runs out and leaves judging its error to the caller.
pub fn gauss_kronrod_best<T, V, F>(mut g: F, a: T, b: T, tol: T, max_panels: usize) -> Result<Estimate<V, T>>
where
    T: Real,
    V: QuadValue<T>,
    F: FnMut(T) -> Result<V>,
{
    let mut panels = vec![kronrod_panel(&mut g, a, b)?];
    let mut evaluations = 15;
    loop {
        let errors: Vec<T> = panels.iter().map(|p| p.error).collect();
        let total_error = pairwise_sum::<T, T>(&errors);
        let worst = (0..panels.len())
            .max_by(|&i, &j| panels[i].error.partial_cmp(&panels[j].error).unwrap_or(std::cmp::Ordering::Equal))
            .expect("nonempty");
        let mid = (panels[worst].a + panels[worst].b) * T::lit(0.5);
        let collapsed = !(mid > panels[worst].a && mid < panels[worst].b);
        if total_error <= tol || panels.len() >= max_panels || collapsed {
            let values: Vec<V> = panels.iter().map(|p| p.value).collect();
            let value = pairwise_sum::<T, V>(&values);
            return Ok(Estimate { value, error: total_error, evaluations });
        }
        let p = panels.swap_remove(worst);
        panels.push(kronrod_panel(&mut g, p.a, mid)?);
        panels.push(kronrod_panel(&mut g, mid, p.b)?);
        evaluations += 30;
        // keep a canonical panel order so the final reduction is deterministic
        panels.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(std::cmp::Ordering::Equal));
    }
}

/// Locates a change of `pred` between `lo` (where it is `at_lo`) and `hi` by bisection.
pub fn bisect<T: Real, F: FnMut(T) -> Result<bool>>(
    mut pred: F,
    mut lo: T,
    mut hi: T,
    at_lo: bool,
    iterations: u32,
) -> Result<T> {
    for _ in 0..iterations {
        let mid = (lo + hi) * T::lit(0.5);
        if !(mid > lo.min(hi) && mid < lo.max(hi)) {
            break;
        }
        if pred(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * T::lit(0.5))
}

/// Golden-section search for a maximiser of a unimodal `g` on `[a, b]`.
pub fn golden_max<T: Real, F: FnMut(T) -> Result<T>>(mut g: F, mut a: T, mut b: T, tol: T) -> Result<(T, T)> {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let mut gc = g(c)?;
    let mut gd = g(d)?;
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - (b - a) * inv_phi;
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + (b - a) * inv_phi;
            gd = g(d)?;
        }
    }
    Ok(if gc >= gd { (c, gc) } else { (d, gd) })
}
