//! Truncated free associative algebra on {a, b, b_P} and its derivations.

pub mod alphabet;
pub mod coeff;
pub mod derivation;
pub mod element;
pub mod json;

pub use alphabet::{Alphabet, Gen, GEN_A, GEN_B};
pub use coeff::{rat, Coeff, EisSym, SymPoly};
pub use derivation::NCDerivation;
pub use element::{c_gen, NCElement, Word};
