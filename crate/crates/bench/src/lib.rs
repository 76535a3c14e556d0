//! Shared inputs for the benchmarks.

use num_complex::Complex64;

use elliptic_kzb::modforms::ModularPoint;

pub fn sample_point() -> ModularPoint {
    ModularPoint { z: Complex64::new(0.31, 0.17), w: Complex64::new(0.2, -0.1), tau: Complex64::new(0.0, 1.7) }
}
