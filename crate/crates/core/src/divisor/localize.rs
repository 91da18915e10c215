//! Quad-tree localization of zeros and poles by contour moments.
//!
//! Every cell carries the moments `(1/2πi)∮ uʲ f′/f dz`, `j = 0, 1, 2`, with
//! `u` the cell-local coordinate. The zeroth moment is the signed count; the
//! higher ones separate a lone point from a cluster and expose zero–pole pairs
//! hiding in cells of net count zero.

use num_complex::Complex;

use super::catalog::{merge_signed, signed_to_entries, DivisorCatalog};
use super::config::QuadratureConfig;
use super::winding::{argument_count, check_radius, log_derivative, nonconstant_derivative, probe_circle};
use crate::error::{Error, Result};
use crate::funcexpr::{differentiate, Expr, ExtComplex};
use crate::quadrature::{gauss_kronrod_best, Triple};
use crate::scalar::Real;

const MAX_CELLS: usize = 20_000;
const MAX_MULTIPLICITY: i64 = 32;
const MIN_DIAMETER: f64 = 1e-6;
const SPLITS: [f64; 6] = [0.5173, 0.4791, 0.5437, 0.4561, 0.5289, 0.4903];

#[derive(Clone, Copy, Debug)]
struct Rect<T> {
    x0: T,
    x1: T,
    y0: T,
    y1: T,
}

impl<T: Real> Rect<T> {
    fn center(&self) -> Complex<T> {
        let h = T::lit(0.5);
        Complex::new((self.x0 + self.x1) * h, (self.y0 + self.y1) * h)
    }

    fn scale(&self) -> T {
        (self.x1 - self.x0).max(self.y1 - self.y0) * T::lit(0.5)
    }

    fn diameter(&self) -> T {
        (self.x1 - self.x0).hypot(self.y1 - self.y0)
    }

    fn contains(&self, z: Complex<T>, slack: T) -> bool {
        z.re >= self.x0 - slack && z.re <= self.x1 + slack && z.im >= self.y0 - slack && z.im <= self.y1 + slack
    }

    fn split(&self, fx: T, fy: T) -> [Rect<T>; 4] {
        let xm = self.x0 + (self.x1 - self.x0) * fx;
        let ym = self.y0 + (self.y1 - self.y0) * fy;
        [
            Rect { x0: self.x0, x1: xm, y0: self.y0, y1: ym },
            Rect { x0: xm, x1: self.x1, y0: self.y0, y1: ym },
            Rect { x0: self.x0, x1: xm, y0: ym, y1: self.y1 },
            Rect { x0: xm, x1: self.x1, y0: ym, y1: self.y1 },
        ]
    }
}

struct Moments<T> {
    count: i64,
    error: T,
    first: Complex<T>,
    second: Complex<T>,
}

struct Point<T> {
    location: Complex<T>,
    order: i64,
    uncertainty: T,
}

struct Localizer<'a, T> {
    f: &'a Expr<T>,
    fp: Expr<T>,
    cells: usize,
}

impl<T: Real> Localizer<'_, T> {
    fn moments(&mut self, rect: &Rect<T>) -> Result<Moments<T>> {
        self.cells += 1;
        if self.cells > MAX_CELLS {
            return Err(Error::CellBudget(MAX_CELLS));
        }
        let c = rect.center();
        let s = rect.scale();
        let corners = [
            Complex::new(rect.x0, rect.y0),
            Complex::new(rect.x1, rect.y0),
            Complex::new(rect.x1, rect.y1),
            Complex::new(rect.x0, rect.y1),
        ];
        let zero = Complex::new(T::zero(), T::zero());
        let mut total = Triple(zero, zero, zero);
        let mut error = T::zero();
        for j in 0..4 {
            let p = corners[j];
            let dz = corners[(j + 1) % 4] - p;
            let (f, fp) = (self.f, &self.fp);
            let edge = gauss_kronrod_best(
                |t: T| {
                    let z = p + dz * t;
                    let g = log_derivative(f, fp, zero, z)? * dz;
                    let u = (z - c) / s;
                    Ok(Triple(g, g * u, g * u * u))
                },
                T::zero(),
                T::one(),
                T::lit(1e-10),
                200,
            )?;
            total = total + edge.value;
            error += edge.error;
        }
        let two_pi_i = Complex::new(T::zero(), T::PI() + T::PI());
        let raw = total.0 / two_pi_i;
        let error = error / (T::PI() + T::PI());
        if error > T::lit(1e-3) {
            return Err(Error::NonConvergence(format!("cell edge integrals unresolved (error {error:e})")));
        }
        let k = raw.re.round();
        if (raw.re - k).abs() > T::lit(0.05) || raw.im.abs() > T::lit(0.05) {
            return Err(Error::NonConvergence(format!("cell count {raw} is not near an integer")));
        }
        Ok(Moments {
            count: k.to_i64().unwrap_or(i64::MAX),
            error,
            first: total.1 / two_pi_i,
            second: total.2 / two_pi_i,
        })
    }

    /// Newton iteration `z ← z − k·f/f′`, exact at a lone point of order `k`.
    fn newton(&self, start: Complex<T>, k: i64, limit: T) -> Option<Complex<T>> {
        let kk = T::from_i64(k)?;
        let mut z = start;
        for _ in 0..60 {
            let (v, d) = match (self.f.eval_at(z).ok()?, self.fp.eval_at(z).ok()?) {
                (ExtComplex::Infinity, _) => return (k < 0).then_some(z),
                (_, ExtComplex::Infinity) => return None,
                (ExtComplex::Finite(v), ExtComplex::Finite(d)) => (v, d),
            };
            if v.norm() == T::zero() {
                return (k > 0).then_some(z);
            }
            if d.norm() == T::zero() {
                return None;
            }
            let step = v / d * kk;
            z = z - step;
            if !(step.norm() <= limit) {
                return None;
            }
            if step.norm() <= T::lit(8.0) * T::epsilon() * (T::one() + z.norm()) {
                return Some(z);
            }
        }
        None
    }

    /// Newton on the `(m−1)`-th derivative of `f` (zeros) or `1/f` (poles),
    /// which has a simple zero at a point of order `m`.
    fn polish_multiple(&self, start: Complex<T>, k: i64, limit: T) -> Option<Complex<T>> {
        let base = if k > 0 { self.f.clone() } else { Expr::div(Expr::real(T::one()), self.f.clone()) };
        let mut h = base;
        for _ in 1..k.unsigned_abs() {
            h = differentiate(&h);
        }
        let hp = differentiate(&h);
        let mut z = start;
        let mut best = T::infinity();
        for _ in 0..60 {
            let v = h.eval_at(z).ok()?.finite()?;
            let d = hp.eval_at(z).ok()?.finite()?;
            if v.norm() == T::zero() {
                return Some(z);
            }
            if d.norm() == T::zero() {
                break;
            }
            let step = v / d;
            if !(step.norm() <= limit) {
                return None;
            }
            z = z - step;
            best = best.min(step.norm());
            if step.norm() <= T::lit(8.0) * T::epsilon() * (T::one() + z.norm()) {
                return Some(z);
            }
        }
        (best <= T::lit(1e-9) * (T::one() + z.norm())).then_some(z)
    }

    fn resolve(&mut self, rect: Rect<T>, m: Moments<T>, out: &mut Vec<Point<T>>) -> Result<()> {
        let c = rect.center();
        let s = rect.scale();
        let small = T::lit(1e-7).max(m.error * T::lit(100.0));
        if m.count == 0 && m.first.norm() <= small && m.second.norm() <= small {
            return Ok(());
        }
        if m.count.abs() > MAX_MULTIPLICITY {
            return Err(Error::MultiplicityCap(m.count));
        }
        let kk = T::from_i64(m.count).unwrap_or(T::one());
        if m.count.abs() == 1 {
            let w = m.first / kk;
            let lone = (m.second / kk - w * w).norm() <= T::lit(1e-6) && w.norm() <= T::lit(1.5);
            if lone {
                if let Some(z) = self.newton(c + w * s, m.count, s) {
                    if rect.contains(z, s * T::lit(0.01)) && (z - (c + w * s)).norm() <= T::lit(1e-3) * s {
                        let uncertainty = T::lit(1e-12) * (T::one() + z.norm());
                        out.push(Point { location: z, order: m.count, uncertainty });
                        return Ok(());
                    }
                }
            }
        }
        if rect.diameter() <= T::lit(MIN_DIAMETER) {
            if m.count == 0 {
                return Ok(());
            }
            let guess = c + m.first / kk * s;
            let limit = rect.diameter() * T::lit(10.0);
            let polished = if m.count.abs() == 1 {
                self.newton(guess, m.count, limit)
            } else {
                self.polish_multiple(guess, m.count, limit)
            };
            let (location, uncertainty) = match polished {
                Some(z) => (z, T::lit(1e-12) * (T::one() + z.norm())),
                None => (guess, rect.diameter()),
            };
            out.push(Point { location, order: m.count, uncertainty });
            return Ok(());
        }
        for fraction in SPLITS {
            let children = rect.split(T::lit(fraction), T::lit(1.0 - fraction));
            let mut moments = Vec::with_capacity(4);
            for child in &children {
                match self.moments(child) {
                    Ok(mm) => moments.push(mm),
                    Err(Error::CellBudget(n)) => return Err(Error::CellBudget(n)),
                    Err(_) => break,
                }
            }
            if moments.len() == 4 && moments.iter().map(|mm| mm.count).sum::<i64>() == m.count {
                for (child, mm) in children.into_iter().zip(moments) {
                    self.resolve(child, mm, out)?;
                }
                return Ok(());
            }
        }
        Err(Error::NonConvergence(format!("cell around {c} could not be subdivided consistently")))
    }
}

/// Zeros and poles of `f` in `|z| ≤ r` by quad-tree subdivision of the
/// bounding square, counting with the argument principle in each cell.
pub fn localize_divisor<T: Real>(f: &Expr<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<DivisorCatalog<T>> {
    cfg.validate()?;
    check_radius(r)?;
    let fp = nonconstant_derivative(f)?;
    let origin = Complex::new(T::zero(), T::zero());
    probe_circle(f, &fp, origin, r, cfg)?;
    let outer = argument_count(f, &fp, origin, r, cfg)?;

    let mut loc = Localizer { f, fp, cells: 0 };
    let mut half = r * T::lit(1.0731) + T::lit(1e-3);
    let mut points = Vec::new();
    let mut done = false;
    for _ in 0..4 {
        let rect = Rect { x0: -half, x1: half, y0: -half, y1: half };
        match loc.moments(&rect) {
            Ok(m) => {
                loc.resolve(rect, m, &mut points)?;
                done = true;
                break;
            }
            Err(Error::CellBudget(n)) => return Err(Error::CellBudget(n)),
            Err(_) => half = half * T::lit(1.0419),
        }
    }
    if !done {
        return Err(Error::NonConvergence("bounding square could not be integrated".into()));
    }

    let inside: Vec<&Point<T>> = points.iter().filter(|p| p.location.norm() <= r).collect();
    let net: i64 = inside.iter().map(|p| p.order).sum();
    if net != outer {
        return Err(Error::NonConvergence(format!(
            "localized net count {net} disagrees with the winding count {outer} on |z| = {r}"
        )));
    }
    let tolerance = inside.iter().map(|p| p.uncertainty).fold(T::zero(), T::max);
    let merged = merge_signed(inside.iter().map(|p| (p.location, p.order)).collect(), tolerance.max(T::lit(1e-12)));
    Ok(DivisorCatalog::from_entries(r, signed_to_entries(merged), false, tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::DivisorKind;
    use crate::funcexpr::parse_expr;

    fn localize(s: &str, r: f64) -> DivisorCatalog<f64> {
        localize_divisor(&parse_expr::<f64>(s, false).unwrap(), r, &QuadratureConfig::default()).unwrap()
    }

    fn assert_entry(c: &DivisorCatalog<f64>, z: Complex<f64>, m: u32, kind: DivisorKind) {
        assert!(
            c.entries.iter().any(|e| e.kind == kind && e.multiplicity == m && (e.location - z).norm() <= 1e-6),
            "missing {kind:?} {z} (x{m}) in {:?}",
            c.entries
        );
    }

    #[test]
    fn simple_zeros() {
        let c = localize("z^2 - 1", 2.0);
        assert_eq!(c.entries.len(), 2);
        assert_entry(&c, Complex::new(1.0, 0.0), 1, DivisorKind::Zero);
        assert_entry(&c, Complex::new(-1.0, 0.0), 1, DivisorKind::Zero);
        assert!(!c.exact);
    }

    #[test]
    fn zeros_and_poles() {
        let c = localize("z/(1-z^2)", 1.5);
        assert_eq!(c.entries.len(), 3);
        assert_entry(&c, Complex::new(0.0, 0.0), 1, DivisorKind::Zero);
        assert_entry(&c, Complex::new(1.0, 0.0), 1, DivisorKind::Pole);
        assert_entry(&c, Complex::new(-1.0, 0.0), 1, DivisorKind::Pole);
    }

    #[test]
    fn sine_lattice() {
        let c = localize("sin(z)", 4.0);
        assert_eq!(c.entries.len(), 3);
        for k in [-1.0, 0.0, 1.0] {
            assert_entry(&c, Complex::new(k * std::f64::consts::PI, 0.0), 1, DivisorKind::Zero);
        }
    }

    #[test]
    fn multiple_points() {
        let c = localize("(z-0.3)^3/(z+0.2i)^2", 1.0);
        assert_entry(&c, Complex::new(0.3, 0.0), 3, DivisorKind::Zero);
        assert_entry(&c, Complex::new(0.0, -0.2), 2, DivisorKind::Pole);
    }

    #[test]
    fn cancelling_pair_in_one_cell() {
        let c = localize("(z-0.1)/(z-0.1001)", 1.0);
        assert_eq!(c.entries.len(), 2);
        assert_entry(&c, Complex::new(0.1, 0.0), 1, DivisorKind::Zero);
        assert_entry(&c, Complex::new(0.1001, 0.0), 1, DivisorKind::Pole);
    }

    #[test]
    fn transcendental_zeros() {
        let c = localize("exp(z) - 1", 7.0);
        assert_eq!(c.entries.len(), 3);
        assert_entry(&c, Complex::new(0.0, 2.0 * std::f64::consts::PI), 1, DivisorKind::Zero);
    }
}
