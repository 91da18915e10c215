use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A point of the extended complex plane: a finite complex number or `∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtComplex<T> {
    Finite(Complex<T>),
    Infinity,
}

impl<T: Real> ExtComplex<T> {
    pub fn new(re: T, im: T) -> Self {
        ExtComplex::Finite(Complex::new(re, im)).normalized()
    }

    pub fn real(re: T) -> Self {
        Self::new(re, T::zero())
    }

    pub fn zero() -> Self {
        Self::real(T::zero())
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    /// Maps non-finite coordinates (overflow) onto the point at infinity.
    pub fn normalized(self) -> Self {
        match self {
            ExtComplex::Finite(c) if c.re.is_finite() && c.im.is_finite() => self,
            _ => ExtComplex::Infinity,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn finite(&self) -> Option<Complex<T>> {
        match self {
            ExtComplex::Finite(c) => Some(*c),
            ExtComplex::Infinity => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtComplex::Finite(c) if c.re == T::zero() && c.im == T::zero())
    }

    /// Modulus, `+∞` for the point at infinity.
    pub fn abs(&self) -> T {
        match self {
            ExtComplex::Finite(c) => c.norm(),
            ExtComplex::Infinity => T::infinity(),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            ExtComplex::Finite(c) => ExtComplex::Finite(c.conj()),
            ExtComplex::Infinity => ExtComplex::Infinity,
        }
    }

    pub fn add(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => Ok(ExtComplex::Finite(a + b).normalized()),
            (ExtComplex::Infinity, ExtComplex::Infinity) => Err(Error::Indeterminate("∞ + ∞")),
            _ => Ok(ExtComplex::Infinity),
        }
    }

    pub fn sub(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => Ok(ExtComplex::Finite(a - b).normalized()),
            (ExtComplex::Infinity, ExtComplex::Infinity) => Err(Error::Indeterminate("∞ − ∞")),
            _ => Ok(ExtComplex::Infinity),
        }
    }

    pub fn mul(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => Ok(ExtComplex::Finite(a * b).normalized()),
            (ExtComplex::Infinity, other) | (other, ExtComplex::Infinity) => {
                if other.is_zero() {
                    Err(Error::Indeterminate("0 · ∞"))
                } else {
                    Ok(ExtComplex::Infinity)
                }
            }
        }
    }

    pub fn div(self, rhs: Self) -> Result<Self> {
        match (self, rhs) {
            (ExtComplex::Infinity, ExtComplex::Infinity) => Err(Error::Indeterminate("∞ / ∞")),
            (ExtComplex::Infinity, _) => Ok(ExtComplex::Infinity),
            (ExtComplex::Finite(_), ExtComplex::Infinity) => Ok(Self::zero()),
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => {
                if b.re == T::zero() && b.im == T::zero() {
                    if a.re == T::zero() && a.im == T::zero() {
                        Err(Error::Indeterminate("0 / 0"))
                    } else {
                        Ok(ExtComplex::Infinity)
                    }
                } else {
                    Ok(ExtComplex::Finite(a / b).normalized())
                }
            }
        }
    }

    pub fn recip(self) -> Self {
        match self {
            ExtComplex::Infinity => Self::zero(),
            ExtComplex::Finite(c) if c.re == T::zero() && c.im == T::zero() => ExtComplex::Infinity,
            ExtComplex::Finite(c) => ExtComplex::Finite(c.inv()).normalized(),
        }
    }

    pub fn powi(self, k: i32) -> Self {
        if k == 0 {
            return Self::one();
        }
        match self {
            ExtComplex::Infinity => {
                if k > 0 {
                    ExtComplex::Infinity
                } else {
                    Self::zero()
                }
            }
            ExtComplex::Finite(c) => {
                if self.is_zero() {
                    if k > 0 {
                        Self::zero()
                    } else {
                        ExtComplex::Infinity
                    }
                } else {
                    ExtComplex::Finite(c.powi(k)).normalized()
                }
            }
        }
    }
}

impl<T: Real> From<Complex<T>> for ExtComplex<T> {
    fn from(c: Complex<T>) -> Self {
        ExtComplex::Finite(c).normalized()
    }
}

impl<T: Real> fmt::Display for ExtComplex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtComplex::Infinity => write!(f, "inf"),
            ExtComplex::Finite(c) => {
                if c.im == T::zero() {
                    write!(f, "{}", c.re)
                } else if c.re == T::zero() {
                    write!(f, "{}*i", c.im)
                } else if c.im < T::zero() {
                    write!(f, "{}-{}*i", c.re, -c.im)
                } else {
                    write!(f, "{}+{}*i", c.re, c.im)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type V = ExtComplex<f64>;

    #[test]
    fn infinity_conventions() {
        assert_eq!(V::zero().recip(), V::Infinity);
        assert_eq!(V::Infinity.recip(), V::zero());
        assert_eq!(V::one().div(V::zero()).unwrap(), V::Infinity);
        assert_eq!(V::one().div(V::Infinity).unwrap(), V::zero());
        assert_eq!(V::Infinity.add(V::one()).unwrap(), V::Infinity);
    }

    #[test]
    fn indeterminate_forms_are_errors() {
        assert!(V::Infinity.add(V::Infinity).is_err());
        assert!(V::Infinity.sub(V::Infinity).is_err());
        assert!(V::zero().mul(V::Infinity).is_err());
        assert!(V::Infinity.div(V::Infinity).is_err());
        assert!(V::zero().div(V::zero()).is_err());
    }

    #[test]
    fn overflow_becomes_infinity() {
        assert_eq!(V::new(f64::MAX, 0.0).mul(V::real(10.0)).unwrap(), V::Infinity);
        assert_eq!(V::new(f64::NAN, 0.0), V::Infinity);
    }

    #[test]
    fn integer_powers() {
        assert_eq!(V::zero().powi(-2), V::Infinity);
        assert_eq!(V::Infinity.powi(-1), V::zero());
        assert_eq!(V::Infinity.powi(0), V::one());
        assert_eq!(V::real(2.0).powi(-2), V::real(0.25));
    }
}
