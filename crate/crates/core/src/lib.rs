//! Nevanlinna value-distribution functionals and spherical normality probes
//! for meromorphic functions given as expressions in `z`.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! the scalar for the common case.
//!
//! ```
//! use nevanlinna::{characteristic, parse_expr, QuadratureConfig};
//!
//! let f = parse_expr::<f64>("exp(z)", false).unwrap();
//! let t = characteristic(&f, 2.0, &QuadratureConfig::default()).unwrap();
//! assert!((t - 2.0 / std::f64::consts::PI).abs() < 1e-9);
//! ```

#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::assign_op_pattern,
    clippy::should_implement_trait,
    clippy::type_complexity,
    clippy::needless_range_loop
)]

pub mod divisor;
pub mod error;
pub mod funcexpr;
pub mod nevanlinna;
pub mod quadrature;
pub mod scalar;
pub mod spherical;

pub use divisor::{
    eval_certified, exact_divisor, localize_divisor, winding_count, DivisorCatalog, DivisorEntry, DivisorKind,
    QuadratureConfig,
};
pub use error::{Error, Result};
pub use funcexpr::{compose_map, differentiate, parse_expr, Expr, ExtComplex, Func, MobiusMap};
pub use nevanlinna::{
    characteristic, check_arithmetic_bounds, check_cartan, check_fft, check_growth_sandwich, check_jensen,
    check_nevanlinna_estimate, check_sft, counting_integrated, log_plus, max_modulus, order_of_growth, proximity,
    CheckVerdict, Counting, NevanlinnaSample, OrderEstimate, Relation,
};
pub use scalar::Real;
pub use spherical::{
    check_psi_distortion, chordal, geodesic, marty_probe, spherical_derivative, spherical_length, stereographic,
    zalcman_extract, FamilySpec, MartyReport, MartyVerdict, ProbeConfig, SpherePoint, ZalcmanExtraction, ZalcmanMode,
    ZalcmanVerdict,
};

pub type Expr64 = Expr<f64>;
pub type Expr32 = Expr<f32>;
pub type ComplexValue = ExtComplex<f64>;
pub type ComplexValue32 = ExtComplex<f32>;
pub type Config64 = QuadratureConfig<f64>;
pub type Config32 = QuadratureConfig<f32>;
pub type Catalog64 = DivisorCatalog<f64>;
pub type Verdict64 = CheckVerdict<f64>;
