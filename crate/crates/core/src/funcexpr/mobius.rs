use num_complex::Complex;

use super::expr::Expr;
use super::value::ExtComplex;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Disk automorphisms `φ_α(z) = (z − α)/(ᾱz − 1)` of the unit disk and
/// `ψ_α(z) = r²(z − α)/(r² − ᾱz)` of the disk `|z| ≤ r`.
///
/// `φ_α(0) = α`, so `f_α = f∘φ_α` has `f_α(0) = f(α)`. The other common
/// normalisation `(z + α)/(1 + ᾱz)` is not provided.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MobiusMap<T> {
    Phi { alpha: Complex<T> },
    Psi { alpha: Complex<T>, r: T },
}

impl<T: Real> MobiusMap<T> {
    pub fn phi(alpha: Complex<T>) -> Result<Self> {
        if !(alpha.norm() < T::one()) {
            return Err(Error::Precondition(format!("phi requires |alpha| < 1, got {}", alpha.norm())));
        }
        Ok(MobiusMap::Phi { alpha })
    }

    pub fn psi(alpha: Complex<T>, r: T) -> Result<Self> {
        if !(r > T::zero()) || !(alpha.norm() < r) {
            return Err(Error::Precondition(format!(
                "psi requires |alpha| < r, got |alpha| = {}, r = {r}",
                alpha.norm()
            )));
        }
        Ok(MobiusMap::Psi { alpha, r })
    }

    pub fn alpha(&self) -> Complex<T> {
        match self {
            MobiusMap::Phi { alpha } | MobiusMap::Psi { alpha, .. } => *alpha,
        }
    }

    pub fn inverse(&self) -> Self {
        match *self {
            MobiusMap::Phi { alpha } => MobiusMap::Phi { alpha },
            MobiusMap::Psi { alpha, r } => MobiusMap::Psi { alpha: -alpha, r },
        }
    }

    /// Coefficients `(a, b, c, d)` of `(a z + b)/(c z + d)`.
    fn coefficients(&self) -> [Complex<T>; 4] {
        let one = Complex::new(T::one(), T::zero());
        match *self {
            MobiusMap::Phi { alpha } => [one, -alpha, alpha.conj(), -one],
            MobiusMap::Psi { alpha, r } => {
                let r2 = Complex::new(r * r, T::zero());
                [r2, -(r2 * alpha), -alpha.conj(), r2]
            }
        }
    }

    pub fn apply(&self, z: ExtComplex<T>) -> Result<ExtComplex<T>> {
        let [a, b, c, d] = self.coefficients();
        match z {
            ExtComplex::Infinity => {
                Ok(if c.norm() == T::zero() { ExtComplex::Infinity } else { ExtComplex::from(a / c) })
            }
            ExtComplex::Finite(z) => {
                let den = c * z + d;
                if den.norm() == T::zero() {
                    return match self {
                        MobiusMap::Psi { .. } => {
                            Err(Error::Domain("psi is undefined where r^2 = conj(alpha) z".into()))
                        }
                        MobiusMap::Phi { .. } => Ok(ExtComplex::Infinity),
                    };
                }
                Ok(ExtComplex::from((a * z + b) / den))
            }
        }
    }

    /// Derivative of the map at a finite point: `(ad − bc)/(cz + d)²`.
    pub fn derivative(&self, z: Complex<T>) -> Complex<T> {
        let [a, b, c, d] = self.coefficients();
        let den = c * z + d;
        (a * d - b * c) / (den * den)
    }

    /// The map as an expression in `z`.
    pub fn to_expr(&self) -> Expr<T> {
        let [a, b, c, d] = self.coefficients();
        let lin = |p: Complex<T>, q: Complex<T>| Expr::add(Expr::mul(Expr::Const(p), Expr::Var), Expr::Const(q));
        Expr::div(lin(a, b), lin(c, d))
    }
}

/// `f ∘ map` as an expression tree.
pub fn compose_map<T: Real>(f: &Expr<T>, map: &MobiusMap<T>) -> Expr<T> {
    f.substitute(&map.to_expr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn fin(z: Complex<f64>) -> ExtComplex<f64> {
        ExtComplex::Finite(z)
    }

    #[test]
    fn phi_swaps_alpha_and_origin() {
        let alpha = c(0.3, -0.4);
        let m = MobiusMap::phi(alpha).unwrap();
        assert!(m.apply(fin(alpha)).unwrap().abs() <= 1e-15);
        let at0 = m.apply(fin(c(0.0, 0.0))).unwrap().finite().unwrap();
        assert!((at0 - alpha).norm() <= 1e-15);
    }

    #[test]
    fn psi_preserves_the_circle() {
        let (alpha, r) = (c(0.2, 0.35), 0.8);
        let m = MobiusMap::psi(alpha, r).unwrap();
        for j in 0..64 {
            let t = 2.0 * std::f64::consts::PI * j as f64 / 64.0;
            let w = m.apply(fin(Complex::from_polar(r, t))).unwrap();
            assert!((w.abs() - r).abs() <= 1e-12);
        }
    }

    #[test]
    fn psi_with_zero_alpha_is_identity() {
        let m = MobiusMap::psi(c(0.0, 0.0), 0.7).unwrap();
        let z = c(0.1, -0.5);
        assert!((m.apply(fin(z)).unwrap().finite().unwrap() - z).norm() <= 1e-15);
    }

    #[test]
    fn invariants_enforced() {
        assert!(MobiusMap::phi(c(1.0, 0.0)).is_err());
        assert!(MobiusMap::psi(c(0.5, 0.0), 0.5).is_err());
    }

    #[test]
    fn psi_undefined_at_its_pole() {
        let (alpha, r) = (c(0.5, 0.0), 0.8);
        let m = MobiusMap::psi(alpha, r).unwrap();
        let pole = c(r * r, 0.0) / alpha.conj();
        assert!(matches!(m.apply(fin(pole)), Err(Error::Domain(_))));
    }

    #[test]
    fn composition_matches_pointwise_application() {
        let f = crate::funcexpr::parse_expr::<f64>("exp(z)/(z-2)", false).unwrap();
        let m = MobiusMap::psi(c(0.1, 0.2), 0.9).unwrap();
        let g = compose_map(&f, &m);
        let z = c(0.3, 0.1);
        let direct = f.eval(m.apply(fin(z)).unwrap()).unwrap().finite().unwrap();
        let composed = g.eval_at(z).unwrap().finite().unwrap();
        assert!((direct - composed).norm() <= 1e-13);
    }
}
