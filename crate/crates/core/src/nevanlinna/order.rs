use rayon::prelude::*;

use super::functionals::{characteristic, log_plus};
use crate::divisor::QuadratureConfig;
use crate::error::{Error, Result};
use crate::funcexpr::Expr;
use crate::scalar::Real;

/// Least-squares estimate of the order of growth from `T(r, f)` on a radius grid.
///
/// `order` comes from fitting `log⁺T ≈ c + ρ·log r + β·log log r` over the top
/// half of the grid, which absorbs the `log r` growth of rational functions.
/// `plain_slope` is the straight-line slope of `log⁺T` against `log r` on the
/// same points. Both are estimators of a limsup, not the limsup itself.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderEstimate<T> {
    pub order: T,
    pub plain_slope: T,
    pub log_log_coefficient: T,
    /// Root-mean-square residual of the three-term fit.
    pub residual_rms: T,
    pub fit_points: usize,
    /// `(r, T(r, f))` on the full grid.
    pub samples: Vec<(T, T)>,
}

fn validate_grid<T: Real>(grid: &[T]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::Precondition("order estimate needs at least two radii".into()));
    }
    if grid.iter().any(|r| !(*r > T::one()) || !r.is_finite()) {
        return Err(Error::Precondition("order estimate needs every radius finite and > 1".into()));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Precondition("radius grid must be strictly increasing".into()));
    }
    if grid[grid.len() - 1] < T::lit(4.0) * grid[0] {
        return Err(Error::Precondition("radius grid must span at least a factor of 4".into()));
    }
    Ok(())
}

fn solve3<T: Real>(mut a: [[T; 3]; 3], mut b: [T; 3]) -> Option<[T; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[pivot][col].abs() <= T::epsilon() * T::lit(1e3) {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let k = a[row][col] / a[col][col];
            for c in col..3 {
                a[row][c] = a[row][c] - k * a[col][c];
            }
            b[row] = b[row] - k * b[col];
        }
    }
    let mut x = [T::zero(); 3];
    for row in (0..3).rev() {
        let mut s = b[row];
        for c in row + 1..3 {
            s = s - a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

fn line_slope<T: Real>(xs: &[T], ys: &[T]) -> T {
    let n = T::from_usize_lossy(xs.len());
    let mx = xs.iter().fold(T::zero(), |s, &x| s + x) / n;
    let my = ys.iter().fold(T::zero(), |s, &y| s + y) / n;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        sxy = sxy + (x - mx) * (y - my);
        sxx = sxx + (x - mx) * (x - mx);
    }
    sxy / sxx
}

/// Estimates `ρ(f) = limsup log⁺T(r,f) / log r` from an increasing grid of radii `> 1`.
pub fn order_of_growth<T: Real>(f: &Expr<T>, radius_grid: &[T], cfg: &QuadratureConfig<T>) -> Result<OrderEstimate<T>> {
    cfg.validate()?;
    validate_grid(radius_grid)?;
    let values: Vec<T> = radius_grid.par_iter().map(|&r| characteristic(f, r, cfg)).collect::<Result<_>>()?;
    let samples: Vec<(T, T)> = radius_grid.iter().copied().zip(values.iter().copied()).collect();

    let start = radius_grid.len() / 2;
    let top = &samples[start..];
    let xs: Vec<T> = top.iter().map(|(r, _)| r.ln()).collect();
    let ys: Vec<T> = top.iter().map(|(_, t)| log_plus(*t)).collect::<Result<_>>()?;
    let plain_slope = if xs.len() >= 2 { line_slope(&xs, &ys) } else { T::zero() };

    let fit = if xs.len() >= 3 {
        let mut ata = [[T::zero(); 3]; 3];
        let mut atb = [T::zero(); 3];
        for (&x, &y) in xs.iter().zip(&ys) {
            let row = [T::one(), x, x.ln()];
            for i in 0..3 {
                for j in 0..3 {
                    ata[i][j] = ata[i][j] + row[i] * row[j];
                }
                atb[i] = atb[i] + row[i] * y;
            }
        }
        solve3(ata, atb)
    } else {
        None
    };
    let (order, beta, rms) = match fit {
        Some([c, rho, beta]) => {
            let ss = xs
                .iter()
                .zip(&ys)
                .map(|(&x, &y)| {
                    let e = y - (c + rho * x + beta * x.ln());
                    e * e
                })
                .fold(T::zero(), |s, e| s + e);
            (rho, beta, (ss / T::from_usize_lossy(xs.len())).sqrt())
        }
        None => {
            let n = T::from_usize_lossy(xs.len());
            let mx = xs.iter().fold(T::zero(), |s, &x| s + x) / n;
            let my = ys.iter().fold(T::zero(), |s, &y| s + y) / n;
            let ss = xs
                .iter()
                .zip(&ys)
                .map(|(&x, &y)| {
                    let e = y - (my + plain_slope * (x - mx));
                    e * e
                })
                .fold(T::zero(), |s, e| s + e);
            (plain_slope, T::zero(), (ss / n).sqrt())
        }
    };
    Ok(OrderEstimate {
        order,
        plain_slope,
        log_log_coefficient: beta,
        residual_rms: rms,
        fit_points: xs.len(),
        samples,
    })
}
