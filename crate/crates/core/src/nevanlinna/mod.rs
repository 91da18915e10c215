//! Nevanlinna functionals `m`, `n`, `N`, `T`, the order of growth, and
//! numerical verifiers for the classical identities and inequalities.

mod checks;
mod circle;
mod functionals;
mod order;
mod verdict;

pub use checks::{
    check_arithmetic_bounds, check_cartan, check_fft, check_growth_sandwich, check_jensen, check_nevanlinna_estimate,
    check_sft,
};
pub use functionals::{characteristic, counting_integrated, log_plus, max_modulus, proximity, Counting};
pub use order::{order_of_growth, OrderEstimate};
pub use verdict::{CheckVerdict, NevanlinnaSample, Relation};

use crate::divisor::QuadratureConfig;
use crate::error::Result;
use crate::funcexpr::{Expr, ExtComplex};
use crate::scalar::Real;

/// `m(r, a)`, `n(r, a)`, `N(r, a)` and `T(r, f)` at one radius.
pub fn sample<T: Real>(f: &Expr<T>, a: ExtComplex<T>, r: T, cfg: &QuadratureConfig<T>) -> Result<NevanlinnaSample<T>> {
    let m = proximity(f, a, r, cfg)?;
    let counting = counting_integrated(f, a, r, cfg)?;
    let (t, nudged) = match a {
        ExtComplex::Infinity => (m + counting.big_n, counting.nudged),
        ExtComplex::Finite(_) => {
            let poles = counting_integrated(f, ExtComplex::Infinity, r, cfg)?;
            (proximity(f, ExtComplex::Infinity, r, cfg)? + poles.big_n, counting.nudged || poles.nudged)
        }
    };
    Ok(NevanlinnaSample { r, target: a, m, n: counting.n, big_n: counting.big_n, t, nudged })
}
