//! Differential forms on the (z, w, τ) chart with non-commutative coefficients.

pub mod brown_levin;
pub mod exterior;
pub mod scalar;
pub mod value;

pub use brown_levin::{restrict_brown_levin, BrownLevinForm};
pub use exterior::{ext_deriv, ext_deriv2_fd, DerivScheme, NCForm1, NCForm2};
pub use scalar::{ScalarForm1, ScalarForm2};
pub use value::{CElem, Form1Jet, Form1Value, Form2Value};
