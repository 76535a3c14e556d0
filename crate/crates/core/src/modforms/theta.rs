//! Odd Jacobi theta function θ(z) = Σ (−1)^n q^{(n+½)²/2} e^{2πi(n+½)z} and its z-derivatives.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{check_tau, Precision};
use crate::error::{Error, Result};

type C = Complex64;

/// θ^{(k)}(z) for k = 0..=order, by termwise differentiation.
///
/// No lattice reduction here: callers pass a reduced z (see `reduce_lattice`).
pub fn theta_derivs(z: C, tau: C, order: usize, prec: &Precision) -> Result<Vec<C>> {
    check_tau(tau)?;
    let mut acc = vec![C::new(0.0, 0.0); order + 1];
    let mut peak = 0.0f64;
    let i_pi = C::new(0.0, PI);
    let term = |n: i64, acc: &mut Vec<C>| -> f64 {
        let h = n as f64 + 0.5;
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let base = (i_pi * tau * h * h + i_pi * 2.0 * h * z).exp() * sign;
        let factor = C::new(0.0, 2.0 * PI * h);
        let mut t = base;
        let mut biggest = 0.0f64;
        for slot in acc.iter_mut() {
            *slot += t;
            biggest = biggest.max(t.norm());
            t *= factor;
        }
        biggest
    };
    // Terms decay like a Gaussian in n once past the peak near n ≈ −Im z / Im τ.
    let centre = (-z.im / tau.im).round() as i64;
    let mut used = 0usize;
    for dir in [1i64, -1] {
        let mut n = if dir == 1 { centre } else { centre - 1 };
        loop {
            let size = term(n, &mut acc);
            used += 1;
            peak = peak.max(size);
            let h = n as f64 + 0.5;
            let past_peak = (dir as f64) * (h + z.im / tau.im) > 1.0;
            if past_peak && size <= prec.tol.min(1e-17) * peak {
                break;
            }
            if used > prec.term_cap {
                return Err(Error::NoConvergence(prec.term_cap));
            }
            n += dir;
        }
    }
    Ok(acc)
}

pub fn theta(z: C, tau: C, prec: &Precision) -> Result<C> {
    Ok(theta_derivs(z, tau, 0, prec)?[0])
}
