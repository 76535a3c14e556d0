//! Theta functions, the Kronecker function and Eisenstein series as q-series.

pub mod eisenstein;
pub mod kronecker;
pub mod series;
pub mod theta;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::Write;

use crate::error::{Error, Result};

pub use eisenstein::{eisenstein_a, eisenstein_a_jet, eisenstein_g, eisenstein_g2, lattice_sum_g};
pub use kronecker::{kp_jets, kronecker_f, phi_coeffs, KPJets, KroneckerJets};
pub use series::{BiSeries, LaurentJet};
pub use theta::{theta, theta_derivs};

pub const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// Truncation controls shared by every q-series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Precision {
    /// Relative tail bound for theta sums and Eisenstein q-expansions.
    pub tol: f64,
    /// Highest power of q kept in Eisenstein q-expansions.
    pub q_order: usize,
    /// Hard cap on theta summation terms.
    pub term_cap: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Self { tol: 1e-16, q_order: 40, term_cap: 10_000 }
    }
}

impl Precision {
    pub fn with_q_order(q_order: usize) -> Self {
        Self { q_order, ..Self::default() }
    }
}

/// A point (z, w, τ) of the chart ℂ² × 𝔥.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularPoint {
    pub z: Complex64,
    pub w: Complex64,
    pub tau: Complex64,
}

impl ModularPoint {
    pub fn new(z: Complex64, w: Complex64, tau: Complex64) -> Result<Self> {
        check_tau(tau)?;
        Ok(Self { z, w, tau })
    }

    pub fn q(&self) -> Complex64 {
        (TWO_PI_I * self.tau).exp()
    }
}

pub fn check_tau(tau: Complex64) -> Result<()> {
    if !(tau.im > 0.0) {
        return Err(Error::UpperHalfPlane(tau.im));
    }
    Ok(())
}

/// Writes z = z0 + m + nτ with z0 in the period parallelogram centred at 0.
pub fn reduce_lattice(z: Complex64, tau: Complex64) -> (Complex64, i64, i64) {
    let n = (z.im / tau.im).round();
    let shifted = z - tau * n;
    let m = shifted.re.round();
    (shifted - m, m as i64, n as i64)
}

/// Distance from z to the nearest point of ℤ + τℤ (checked over neighbouring cells).
pub fn lattice_distance(z: Complex64, tau: Complex64) -> f64 {
    let (z0, _, _) = reduce_lattice(z, tau);
    let mut best = f64::INFINITY;
    for m in -1..=1 {
        for n in -1..=1 {
            best = best.min((z0 - (m as f64) - tau * n as f64).norm());
        }
    }
    best
}

/// CSV table with columns (index, Re, Im, tol, q_terms).
pub fn write_coeff_table<W: Write>(
    out: W,
    index_name: &str,
    rows: &[(i64, Complex64)],
    prec: &Precision,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([index_name, "Re", "Im", "tol", "q_terms"])?;
    for (k, v) in rows {
        w.write_record([
            k.to_string(),
            format!("{:e}", v.re),
            format!("{:e}", v.im),
            format!("{:e}", prec.tol),
            prec.q_order.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_lands_in_fundamental_cell() {
        let tau = Complex64::new(0.3, 1.2);
        let z = Complex64::new(3.7, -2.9);
        let (z0, m, n) = reduce_lattice(z, tau);
        assert!((z0 + m as f64 + tau * n as f64 - z).norm() < 1e-12);
        assert!((z0.im / tau.im).abs() <= 0.5 + 1e-12);
        assert!(lattice_distance(tau * 2.0 + 1.0, tau) < 1e-12);
    }

    #[test]
    fn tau_must_be_in_upper_half_plane() {
        let o = Complex64::new(0.0, 0.0);
        assert!(ModularPoint::new(o, o, Complex64::new(0.0, -1.0)).is_err());
        assert!(ModularPoint::new(o, o, Complex64::new(0.0, 1.0)).is_ok());
    }

    #[test]
    fn csv_has_header() {
        let mut buf = Vec::new();
        write_coeff_table(&mut buf, "m", &[(0, Complex64::new(1.0, 2.0))], &Precision::default()).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("m,Re,Im,tol,q_terms\n0,1e0,2e0,"));
    }
}
