//! Bar construction on a finite model of the fibre forms, its degree-0 cohomology,
//! and the Gauss–Manin derivation computed through the relative bar construction.

pub mod element;
pub mod gm;
pub mod h0;
pub mod kzb_form;
pub mod letter;
pub mod linalg;
pub mod projector;
pub mod relative;

pub use element::{BarElement, BarTensor, BarWord};
pub use gm::{delta_dual, delta_table, delta_vs_phi_numeric, delta_vs_phi_symbolic, write_delta_csv};
pub use h0::H0Basis;
pub use kzb_form::{antipode_kzb_check, kzb_form_from_antipode, KzbFormReport};
pub use letter::{kronecker_product, Kron, Mono, Presentation};
pub use projector::{dual_monomial, rho, rho_expanded};
pub use relative::{gauss_manin_tau, gauss_manin_tau_local, RelBarElement};
