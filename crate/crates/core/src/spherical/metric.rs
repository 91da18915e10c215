use num_complex::Complex;

use crate::funcexpr::ExtComplex;
use crate::scalar::Real;

/// Point on the Riemann sphere `x² + y² + (z − 1/2)² = 1/4`, tangent to the
/// plane at the origin with `∞` at the north pole `(0, 0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> SpherePoint<T> {
    /// `x² + y² + (z − 1/2)² − 1/4`
    pub fn sphere_residual(&self) -> T {
        let half = T::lit(0.5);
        self.x * self.x + self.y * self.y + (self.z - half) * (self.z - half) - half * half
    }

    pub fn distance(&self, other: &SpherePoint<T>) -> T {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Stereographic image `(a, b, |z|²)/(1 + |z|²)` of `z = a + ib`.
pub fn stereographic<T: Real>(z: ExtComplex<T>) -> SpherePoint<T> {
    match z {
        ExtComplex::Infinity => SpherePoint { x: T::zero(), y: T::zero(), z: T::one() },
        ExtComplex::Finite(w) => {
            let n = w.norm();
            if n <= T::one() {
                let d = T::one() + n * n;
                SpherePoint { x: w.re / d, y: w.im / d, z: n * n / d }
            } else {
                let t = T::one() / n;
                let d = T::one() + t * t;
                SpherePoint { x: w.re / n * t / d, y: w.im / n * t / d, z: T::one() / d }
            }
        }
    }
}

fn inverse_point<T: Real>(z: Complex<T>) -> ExtComplex<T> {
    if z.norm() == T::zero() {
        ExtComplex::Infinity
    } else {
        ExtComplex::Finite(z.inv())
    }
}

/// `1/√(1 + |z|²)`
fn chordal_to_infinity<T: Real>(z: Complex<T>) -> T {
    let n = z.norm();
    if n <= T::one() {
        T::one() / (T::one() + n * n).sqrt()
    } else {
        let t = T::one() / n;
        t / (T::one() + t * t).sqrt()
    }
}

/// Chordal distance `χ(z, w) = |z − w| / (√(1+|z|²)·√(1+|w|²))`, with
/// `χ(z, ∞) = 1/√(1+|z|²)`.
pub fn chordal<T: Real>(z: ExtComplex<T>, w: ExtComplex<T>) -> T {
    let value = match (z, w) {
        (ExtComplex::Infinity, ExtComplex::Infinity) => T::zero(),
        (ExtComplex::Infinity, ExtComplex::Finite(p)) | (ExtComplex::Finite(p), ExtComplex::Infinity) => {
            chordal_to_infinity(p)
        }
        (ExtComplex::Finite(p), ExtComplex::Finite(q)) => {
            if p.norm() > T::one() && q.norm() > T::one() {
                // χ is invariant under z ↦ 1/z
                return chordal(inverse_point(p), inverse_point(q));
            }
            (p - q).norm() * (chordal_to_infinity(p) * chordal_to_infinity(q))
        }
    };
    value.min(T::one())
}

/// Great-circle distance on the sphere of diameter 1, `σ = arcsin χ`.
pub fn geodesic<T: Real>(z: ExtComplex<T>, w: ExtComplex<T>) -> T {
    chordal(z, w).asin()
}
