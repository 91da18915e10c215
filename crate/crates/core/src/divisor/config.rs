use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerances and resolution limits for every circle and contour integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig<T> {
    /// Absolute tolerance of circle means (m, Jensen means, spherical lengths).
    pub abs_tol: T,
    /// Maximum number of node doublings of the trapezoid rule.
    pub max_subdivisions: u32,
    /// Initial trapezoid node count; a power of two.
    pub circle_nodes_initial: usize,
    /// Relative distance `ε` a divisor point must keep from an integration circle.
    pub singularity_margin: T,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: T::lit(1e-9),
            max_subdivisions: 20,
            circle_nodes_initial: 128,
            singularity_margin: T::lit(1e-8),
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn with_abs_tol(self, abs_tol: T) -> Self {
        QuadratureConfig { abs_tol, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > T::zero()) || !(self.singularity_margin > T::zero()) {
            return Err(Error::Precondition("quadrature tolerances must be positive".into()));
        }
        if self.max_subdivisions == 0 || !self.circle_nodes_initial.is_power_of_two() {
            return Err(Error::Precondition(
                "circle_nodes_initial must be a power of two and max_subdivisions positive".into(),
            ));
        }
        Ok(())
    }
}
