//! Seeded sample points away from the punctures.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::modforms::{lattice_distance, ModularPoint};
use crate::torsion::torsion_points;

pub const DEFAULT_SEED: u64 = 0xE11B;
pub const PUNCTURE_RADIUS: f64 = 0.05;

/// Distance from z to the nearest translate of a point of Γ_N.
pub fn puncture_distance(z: Complex64, tau: Complex64, level: u32) -> f64 {
    torsion_points(level)
        .iter()
        .map(|p| lattice_distance(z - p.alpha_f64() - tau * p.beta_f64(), tau))
        .fold(f64::INFINITY, f64::min)
}

pub fn random_tau(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..3.0))
}

pub fn random_w(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// z = u + vτ with u, v ∈ (0,1), rejecting the discs of radius 0.05 around punctures.
pub fn random_z(rng: &mut ChaCha8Rng, tau: Complex64, level: u32) -> Complex64 {
    loop {
        let z = tau * rng.gen_range(0.0..1.0) + rng.gen_range(0.0..1.0);
        if puncture_distance(z, tau, level) > PUNCTURE_RADIUS {
            return z;
        }
    }
}

pub fn sample_points(level: u32, count: usize, seed: u64) -> Vec<ModularPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let tau = random_tau(&mut rng);
            let z = random_z(&mut rng, tau, level);
            let w = random_w(&mut rng);
            ModularPoint { z, w, tau }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_reproducible_and_clear() {
        let a = sample_points(2, 20, DEFAULT_SEED);
        let b = sample_points(2, 20, DEFAULT_SEED);
        assert_eq!(a, b);
        for p in &a {
            assert!(p.tau.im >= 0.8 && p.tau.im <= 3.0);
            assert!(puncture_distance(p.z, p.tau, 2) > PUNCTURE_RADIUS);
        }
    }
}
