//! Dense complex polynomials and an Aberth–Ehrlich root finder with
//! multiplicity recovery.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Polynomial with complex coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Poly<T> {
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        while coeffs.len() > 1 && is_zero(coeffs[coeffs.len() - 1]) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(czero());
        }
        Poly { coeffs }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn identity() -> Self {
        Poly::new(vec![czero(), cone()])
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && is_zero(self.coeffs[0])
    }

    pub fn as_constant(&self) -> Option<Complex<T>> {
        (self.coeffs.len() == 1).then(|| self.coeffs[0])
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(czero(), |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` by Horner's scheme.
    pub fn eval_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let mut p = czero();
        let mut dp = czero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `Σ |c_k| |z|^k`, the rounding scale of an evaluation at `z`.
    pub fn abs_eval(&self, z: Complex<T>) -> T {
        let m = z.norm();
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * m + c.norm())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Poly::constant(czero());
        }
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * T::from_usize_lossy(k)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or_else(czero)
                        + other.coeffs.get(k).copied().unwrap_or_else(czero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-cone::<T>()))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![czero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn powu(&self, k: u32) -> Self {
        (0..k).fold(Poly::constant(cone()), |acc, _| acc.mul(self))
    }

    pub fn from_roots(roots: &[Complex<T>]) -> Self {
        roots.iter().fold(Poly::constant(cone()), |acc, &r| acc.mul(&Poly::new(vec![-r, cone()])))
    }
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

fn is_zero<T: Real>(c: Complex<T>) -> bool {
    c.re == T::zero() && c.im == T::zero()
}

/// All roots of the polynomial with ascending coefficients `coeffs`, with
/// numerically coincident roots merged into one entry carrying the summed
/// multiplicity. Roots are returned ordered by modulus, then argument.
pub fn poly_roots<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<(Complex<T>, u32)>> {
    if coeffs.len() < 2 {
        return Err(Error::Precondition("polynomial of degree 0 has no roots to find".into()));
    }
    if is_zero(coeffs[coeffs.len() - 1]) {
        return Err(Error::Precondition("leading coefficient is zero".into()));
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Precondition("non-finite coefficient".into()));
    }
    let original = Poly::new(coeffs.to_vec());

    let zero_roots = coeffs.iter().take_while(|c| is_zero(**c)).count();
    let deflated = Poly::new(coeffs[zero_roots..].to_vec());
    let mut out: Vec<(Complex<T>, u32)> = Vec::new();
    if zero_roots > 0 {
        out.push((czero(), zero_roots as u32));
    }

    if deflated.degree() >= 1 {
        let raw = aberth(&deflated)?;
        for (root, mult) in recover_multiplicities(&deflated, raw) {
            out.push((root, mult));
        }
    }

    for (root, _) in &mut out {
        if is_zero(*root) {
            continue;
        }
        let (p, _) = original.eval_with_derivative(*root);
        let scale = original.abs_eval(*root);
        let tol = T::lit(1e-8).max(T::lit(100.0) * T::epsilon());
        if p.norm() > tol * scale.max(T::min_positive_value()) {
            return Err(Error::NonConvergence(format!("root residual {} exceeds tolerance", p.norm())));
        }
    }

    out.sort_by(|a, b| {
        let ka = (a.0.norm(), a.0.arg());
        let kb = (b.0.norm(), b.0.arg());
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// Simultaneous Aberth–Ehrlich iteration for a polynomial with nonzero constant term.
fn aberth<T: Real>(p: &Poly<T>) -> Result<Vec<Complex<T>>> {
    let d = p.degree();
    let c = p.coeffs();
    if d == 1 {
        return Ok(vec![-c[0] / c[1]]);
    }
    let radius = (c[0].norm() / c[d].norm()).powf(T::one() / T::from_usize_lossy(d));
    let two_pi = T::PI() + T::PI();
    let mut z: Vec<Complex<T>> = (0..d)
        .map(|k| {
            let angle = two_pi * T::from_usize_lossy(k) / T::from_usize_lossy(d) + T::lit(0.7);
            Complex::from_polar(radius, angle)
        })
        .collect();
    let tiny = T::epsilon() * T::lit(4.0);
    for _ in 0..2000 {
        let mut max_rel_step = T::zero();
        for k in 0..d {
            let (pv, dpv) = p.eval_with_derivative(z[k]);
            if is_zero(pv) {
                continue;
            }
            let ratio = pv / dpv;
            let repulsion = (0..d).filter(|&j| j != k).fold(czero(), |acc, j| {
                let diff = z[k] - z[j];
                if is_zero(diff) {
                    acc
                } else {
                    acc + diff.inv()
                }
            });
            let denom = cone::<T>() - ratio * repulsion;
            let step = if is_zero(denom) || !dpv.norm().is_finite() || is_zero(dpv) { ratio } else { ratio / denom };
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] -= step;
            let rel = step.norm() / z[k].norm().max(T::min_positive_value());
            if rel > max_rel_step {
                max_rel_step = rel;
            }
        }
        if max_rel_step <= tiny {
            break;
        }
    }
    Ok(z)
}

/// Groups raw roots into clusters and certifies each cluster as a multiple
/// root when the lower derivatives vanish at its refined centre; clusters
/// that fail are split at a finer linkage scale.
fn recover_multiplicities<T: Real>(p: &Poly<T>, raw: Vec<Complex<T>>) -> Vec<(Complex<T>, u32)> {
    let mut out = Vec::new();
    split_clusters(p, raw, T::lit(1e-2), &mut out);
    out
}

fn split_clusters<T: Real>(p: &Poly<T>, roots: Vec<Complex<T>>, scale: T, out: &mut Vec<(Complex<T>, u32)>) {
    for group in single_linkage(&roots, scale) {
        if group.len() == 1 {
            out.push((polish_simple(p, group[0]), 1));
            continue;
        }
        let m = group.len();
        let centroid = group.iter().fold(czero(), |acc, &r| acc + r) / T::from_usize_lossy(m);
        let centre = polish_multiple(p, centroid, m);
        let forced = scale <= T::lit(1e-8);
        if forced || is_multiple_root(p, centre, m) {
            out.push((centre, m as u32));
        } else {
            split_clusters(p, group, scale * T::lit(0.1), out);
        }
    }
}

fn single_linkage<T: Real>(roots: &[Complex<T>], scale: T) -> Vec<Vec<Complex<T>>> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let tol = scale * (T::one() + roots[i].norm().max(roots[j].norm()));
            if (roots[i] - roots[j]).norm() <= tol {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex<T>>)> = Vec::new();
    for i in 0..n {
        let root = find(&mut label, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.push(roots[i]),
            None => groups.push((root, vec![roots[i]])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

fn polish_simple<T: Real>(p: &Poly<T>, mut z: Complex<T>) -> Complex<T> {
    for _ in 0..3 {
        let (pv, dpv) = p.eval_with_derivative(z);
        if is_zero(dpv) {
            break;
        }
        let step = pv / dpv;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
    }
    z
}

/// Newton on the `(m−1)`-th derivative, which has a simple root at an m-fold root.
fn polish_multiple<T: Real>(p: &Poly<T>, start: Complex<T>, m: usize) -> Complex<T> {
    let mut q = p.clone();
    for _ in 0..(m - 1) {
        q = q.derivative();
    }
    let mut z = start;
    for _ in 0..50 {
        let (qv, dqv) = q.eval_with_derivative(z);
        if is_zero(dqv) {
            break;
        }
        let step = qv / dqv;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= T::epsilon() * (T::one() + z.norm()) {
            break;
        }
    }
    z
}

fn is_multiple_root<T: Real>(p: &Poly<T>, z: Complex<T>, m: usize) -> bool {
    let mut q = p.clone();
    for _ in 0..m {
        let value = q.eval(z).norm();
        let scale = q.abs_eval(z);
        if value > T::lit(1e4) * T::epsilon() * scale {
            return false;
        }
        q = q.derivative();
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn roots_of_z_squared_plus_one() {
        let roots = poly_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(roots.len(), 2);
        let mut found = [false, false];
        for (r, m) in roots {
            assert_eq!(m, 1);
            if (r - c(0.0, 1.0)).norm() < 1e-14 {
                found[0] = true;
            }
            if (r - c(0.0, -1.0)).norm() < 1e-14 {
                found[1] = true;
            }
        }
        assert!(found[0] && found[1]);
    }

    #[test]
    fn expanded_triple_root_is_merged() {
        let roots = poly_roots(&[c(-1.0, 0.0), c(3.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].1, 3);
        assert!((roots[0].0 - c(1.0, 0.0)).norm() <= 1e-10);
    }

    #[test]
    fn zero_roots_are_exact() {
        let roots = poly_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(-4.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(roots[0], (c(0.0, 0.0), 2));
        assert!((roots[1].0 - c(4.0, 0.0)).norm() <= 1e-14);
    }

    #[test]
    fn close_distinct_roots_stay_separate() {
        let p = Poly::from_roots(&[c(1.0, 0.0), c(1.0 + 1e-4, 0.0), c(-2.0, 0.5)]);
        let roots = poly_roots(p.coeffs()).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| r.1 == 1));
    }

    #[test]
    fn degree_zero_is_an_error() {
        assert!(poly_roots(&[c(3.0, 0.0)]).is_err());
        assert!(poly_roots(&[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn single_precision_quadratic() {
        let roots = poly_roots(&[Complex::new(-2.0f32, 0.0), Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)]).unwrap();
        assert_eq!(roots.len(), 2);
        for (r, _) in roots {
            assert!((r.norm() - 2f32.sqrt()).abs() < 1e-5);
        }
    }
}
