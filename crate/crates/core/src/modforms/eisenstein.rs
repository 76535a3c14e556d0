//! Eisenstein series G_{2k} by q-expansion, G_2 in the Σ_n Σ'_m summation order,
//! and the level-N coefficients A_{m,Q}.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;

use super::kronecker::k_at_origin;
use super::series::LaurentJet;
use super::{check_tau, Precision, TWO_PI_I};
use crate::error::{Error, Result};
use crate::torsion::TorsionPoint;

type C = Complex64;

/// B_0..=B_n (B_1 = −1/2).
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // Σ_{k=0}^{m} C(m+1,k) B_k = 0
        let mut s = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            s += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// ζ(2k) = (−1)^{k+1} B_{2k} (2π)^{2k} / (2 (2k)!).
pub fn zeta_even(two_k: usize) -> f64 {
    let b = bernoulli(two_k)[two_k].to_f64().unwrap_or(f64::NAN);
    let mut fact = 1.0;
    for i in 1..=two_k {
        fact *= i as f64;
    }
    let sign = if (two_k / 2) % 2 == 1 { 1.0 } else { -1.0 };
    sign * b * (2.0 * PI).powi(two_k as i32) / (2.0 * fact)
}

fn sigma(power: i32, m: usize) -> f64 {
    (1..=m).filter(|d| m.is_multiple_of(*d)).map(|d| (d as f64).powi(power)).sum()
}

/// Σ_{m=1}^{q_order} σ_{2k−1}(m) q^m, stopping early once terms fall below tol.
fn divisor_series(two_k: usize, tau: C, prec: &Precision) -> C {
    let q = (TWO_PI_I * tau).exp();
    let mut qm = C::new(1.0, 0.0);
    let mut s = C::new(0.0, 0.0);
    for m in 1..=prec.q_order {
        qm *= q;
        let t = qm * sigma(two_k as i32 - 1, m);
        s += t;
        if t.norm() < prec.tol * 1e-3 * s.norm().max(1.0) {
            break;
        }
    }
    s
}

/// G_{2k}(τ) = Σ' (r + sτ)^{−2k} for 2k ≥ 4.
pub fn eisenstein_g(two_k: i64, tau: C, prec: &Precision) -> Result<C> {
    check_tau(tau)?;
    if two_k < 4 || two_k % 2 != 0 {
        return Err(Error::BadWeight(two_k));
    }
    let k2 = two_k as usize;
    let mut fact = 1.0;
    for i in 1..k2 {
        fact *= i as f64;
    }
    let pref = TWO_PI_I.powi(two_k as i32) * 2.0 / fact;
    Ok(C::new(2.0 * zeta_even(k2), 0.0) + pref * divisor_series(k2, tau, prec))
}

/// G_2(τ) = Σ_n Σ'_m (m + nτ)^{−2} = π²/3 − 8π² Σ σ_1(m) q^m.
pub fn eisenstein_g2(tau: C, prec: &Precision) -> Result<C> {
    check_tau(tau)?;
    Ok(C::new(PI * PI / 3.0, 0.0) - divisor_series(2, tau, prec) * (8.0 * PI * PI))
}

/// Square-shell lattice sum Σ'_{|r|,|s| ≤ radius} (r + sτ)^{−2k}; a test oracle.
pub fn lattice_sum_g(two_k: i32, tau: C, radius: i64) -> C {
    let mut s = C::new(0.0, 0.0);
    for r in -radius..=radius {
        for n in -radius..=radius {
            if r == 0 && n == 0 {
                continue;
            }
            s += (tau * n as f64 + r as f64).powi(-two_k);
        }
    }
    s
}

/// A_{0..=deg, Q}(τ): Taylor coefficients of k′_{−Q}(0,0,x).
pub fn eisenstein_a_jet(q: &TorsionPoint, tau: C, deg: usize, prec: &Precision) -> Result<LaurentJet> {
    check_tau(tau)?;
    let k = k_at_origin(&q.neg(), tau, deg + 1, prec)?;
    Ok(k.derivative().truncate(deg as i32))
}

/// A_{m,−Q} = (−1)^m A_{m,Q}, so odd m vanishes identically when 2Q = 0.
pub fn eisenstein_a(m: usize, q: &TorsionPoint, tau: C, prec: &Precision) -> Result<C> {
    if m % 2 == 1 && q.neg() == *q {
        check_tau(tau)?;
        return Ok(C::new(0.0, 0.0));
    }
    Ok(eisenstein_a_jet(q, tau, m, prec)?.coeff(m as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::default()
    }

    #[test]
    fn bernoulli_and_zeta() {
        let b = bernoulli(6);
        assert_eq!(b[1], BigRational::new((-1).into(), 2.into()));
        assert_eq!(b[6], BigRational::new(1.into(), 42.into()));
        assert!((zeta_even(2) - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_even(4) - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn cusp_limit_and_translation() {
        let far = C::new(0.1, 40.0);
        assert!((eisenstein_g(4, far, &prec()).unwrap() - 2.0 * zeta_even(4)).norm() < 1e-14);
        let tau = C::new(0.23, 0.9);
        let a = eisenstein_g(4, tau, &prec()).unwrap();
        let b = eisenstein_g(4, tau + 1.0, &prec()).unwrap();
        assert!((a - b).norm() < 1e-11);
        assert!(eisenstein_g(3, tau, &prec()).is_err());
        assert!(eisenstein_g(2, tau, &prec()).is_err());
    }

    #[test]
    fn g4_at_i_matches_lattice_sum() {
        let tau = C::new(0.0, 1.0);
        let s1 = lattice_sum_g(4, tau, 200);
        let s2 = lattice_sum_g(4, tau, 400);
        // tail ~ c/R^2
        let extrap = (s2 * 4.0 - s1) / 3.0;
        let g4 = eisenstein_g(4, tau, &prec()).unwrap();
        assert!((g4 - extrap).norm() < 1e-8, "{g4} vs {extrap}");
    }

    #[test]
    fn origin_coefficients_are_minus_eisenstein() {
        let tau = C::new(0.17, 1.05);
        let a = eisenstein_a_jet(&TorsionPoint::origin(), tau, 6, &prec()).unwrap();
        let g2 = eisenstein_g2(tau, &prec()).unwrap();
        assert!((a.coeff(0) + g2).norm() < 1e-11);
        assert!((a.coeff(2) + eisenstein_g(4, tau, &prec()).unwrap() * 3.0).norm() < 1e-10);
        assert!((a.coeff(4) + eisenstein_g(6, tau, &prec()).unwrap() * 5.0).norm() < 1e-9);
        for m in [1, 3, 5] {
            assert!(a.coeff(m).norm() < 1e-10);
        }
    }

    #[test]
    fn symmetry_under_negation() {
        let tau = C::new(-0.2, 1.3);
        for (i, j) in [(1, 0), (1, 2), (2, 1), (0, 1)] {
            let q = TorsionPoint::from_indices(i, j, 3);
            let a = eisenstein_a_jet(&q, tau, 5, &prec()).unwrap();
            let b = eisenstein_a_jet(&q.neg(), tau, 5, &prec()).unwrap();
            for m in 0..=5 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((a.coeff(m) - b.coeff(m) * sign).norm() < 1e-10);
            }
        }
    }
}
