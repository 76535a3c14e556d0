//! Parallel transport of the flat connection along paths in the z-plane.

pub mod chen;
pub mod path;

pub use chen::{monodromy, nc_log, polylog_value, shuffle_defect, transport, TransportOptions, TransportResult};
pub use path::{PathSpec, Segment, WRule};
