pub mod bar;
pub mod error;
pub mod forms;
pub mod kzb;
pub mod modforms;
pub mod ncalg;
pub mod report;
pub mod suites;
pub mod torsion;
pub mod transport;

pub use error::{Error, Result};
pub use torsion::TorsionPoint;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
