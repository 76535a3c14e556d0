//! Residues of the Kronecker coefficients φ^(n)(z,w) along z = 0 by contour quadrature.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modforms::{phi_coeffs, Precision};

type C = Complex64;

/// (1/2πi)∮ φ^(n)(z,w) dz over |z| = radius by the trapezoid rule (spectrally accurate
/// for periodic integrands).
pub fn residue_contour(n: usize, w: C, tau: C, radius: f64, nodes: usize, prec: &Precision) -> Result<C> {
    if radius <= 0.0 || radius >= 0.5 * tau.im.min(1.0) {
        return Err(Error::Invalid(format!("contour radius {radius} must enclose only the origin")));
    }
    let mut acc = C::new(0.0, 0.0);
    for j in 0..nodes {
        let e = C::from_polar(1.0, std::f64::consts::TAU * j as f64 / nodes as f64);
        let z = e * radius;
        let phi = phi_coeffs(z, w, tau, n, prec)?[n];
        // dz = i z dθ, so (1/2πi)∮ f dz = mean of f·z
        acc += phi * z;
    }
    Ok(acc / nodes as f64)
}

/// w^{n−1}/(n−1)!, the expected residue (0 for n = 0).
pub fn expected_residue(n: usize, w: C) -> C {
    if n == 0 {
        return C::new(0.0, 0.0);
    }
    let fact: f64 = (1..n).map(|k| k as f64).product();
    w.powu(n as u32 - 1) / fact
}
