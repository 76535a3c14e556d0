//! Assembly and verification of the level-N KZB connection.

pub mod connection;
pub mod flatness;
pub mod phi;
pub mod points;

pub use connection::{KZBConnection, KzbParts};
pub use flatness::{curvature, flatness_residual, flatness_residual_without_phi};
pub use phi::{build_phi, numeric_phi, symbolic_a, ATable};
pub use points::{puncture_distance, sample_points, DEFAULT_SEED};
pub mod fay;
pub mod gauge;
pub mod lifts;
pub mod main_identity;

pub use fay::{fay_check, FayResidual};
pub use gauge::{f_prime_check, gauge_compare_levin_racinet, GaugeResidual};
pub use lifts::{frame_change, kronecker_lift, lift_assembly_check, triple_wedge_residual, GaussManinMatrix};
pub use main_identity::{bracket_series, main_identity_check, MainIdentityResidual};
pub mod residue;
pub use residue::{expected_residue, residue_contour};
