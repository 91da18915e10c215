//! Spherical geometry of the extended plane and numerical normality probes
//! for indexed families.

mod derivative;
mod family;
mod metric;
mod psi;
mod zalcman;

pub use derivative::{spherical_derivative, spherical_length};
pub use family::{marty_probe, FamilySpec, MartyEntry, MartyReport, MartyVerdict, ProbeConfig};
pub use metric::{chordal, geodesic, stereographic, SpherePoint};
pub use psi::{check_psi_distortion, psi_angle_rate};
pub use zalcman::{rescale, zalcman_extract, ZalcmanExtraction, ZalcmanMode, ZalcmanRecord, ZalcmanVerdict};
