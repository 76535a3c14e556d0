//! Canonical lifts ν̃, ω̃^(0), ω̃^(n)_P, the Gauss–Manin matrix in the analytic frame,
//! and the frame change of the Kronecker differentials.

use num_complex::Complex64;

use super::connection::KZBConnection;
use crate::error::{Error, Result};
use crate::forms::{CElem, ScalarForm1};
use crate::modforms::{phi_coeffs, ModularPoint, Precision, TWO_PI_I};
use crate::ncalg::GEN_B;
use crate::torsion::TorsionPoint;

type C = Complex64;

fn zero() -> C {
    C::new(0.0, 0.0)
}

pub fn nu_tilde() -> ScalarForm1 {
    ScalarForm1::new(zero(), C::new(1.0, 0.0), zero())
}

/// ω̃^(0) = dz − w dτ/2πi.
pub fn omega0_tilde(w: C) -> ScalarForm1 {
    ScalarForm1::new(C::new(1.0, 0.0), zero(), -w / TWO_PI_I)
}

/// ω̃^(n)_P = φ^(n)_P (dz − w dτ/2πi) + n φ^(n+1)_P dτ/2πi, with φ_P the translated coefficients.
pub fn kronecker_lift(n: usize, p: &TorsionPoint, pt: &ModularPoint, prec: &Precision) -> Result<ScalarForm1> {
    let phis = translated_phis(p, pt, n + 1, prec)?;
    Ok(lift_from_phis(n, &phis, pt.w))
}

fn lift_from_phis(n: usize, phis: &[C], w: C) -> ScalarForm1 {
    let a21 = TWO_PI_I.inv();
    ScalarForm1::new(phis[n], zero(), -w * phis[n] * a21 + phis[n + 1] * (n as f64) * a21)
}

pub fn translated_phis(p: &TorsionPoint, pt: &ModularPoint, n_max: usize, prec: &Precision) -> Result<Vec<C>> {
    let (alpha, beta) = (p.alpha_f64(), p.beta_f64());
    phi_coeffs(pt.z - alpha - pt.tau * beta, pt.w - TWO_PI_I * beta, pt.tau, n_max, prec)
}

/// Gauss–Manin matrix: dτ-coefficients of α_ij.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussManinMatrix {
    pub a11: C,
    pub a12: C,
    pub a21: C,
    pub a22: C,
}

impl GaussManinMatrix {
    /// ∇ω = (dτ/2πi) ⊗ η, ∇η = 0.
    pub fn analytic_frame() -> Self {
        Self { a11: zero(), a12: zero(), a21: TWO_PI_I.inv(), a22: zero() }
    }
}

/// |ω̃^(n)∧ν̃∧ω̃^(0) − n α21∧ν̃∧ω̃^(n+1)| with ω̃^(n) perturbed by ε dτ.
pub fn triple_wedge_residual(n: usize, p: &TorsionPoint, pt: &ModularPoint, eps: f64, prec: &Precision) -> Result<f64> {
    let phis = translated_phis(p, pt, n + 2, prec)?;
    let mut lift = lift_from_phis(n, &phis, pt.w);
    lift.dtau += eps;
    let next = lift_from_phis(n + 1, &phis, pt.w);
    let a21 = ScalarForm1::new(zero(), zero(), GaussManinMatrix::analytic_frame().a21);
    let lhs = lift.triple(&nu_tilde(), &omega0_tilde(pt.w));
    let rhs = a21.triple(&nu_tilde(), &next) * n as f64;
    Ok((lhs - rhs).norm())
}

/// dτ-coefficient of ω̃_N rebuilt from the lifts: −ω̃^(0)⊗b − Σ ω̃^(n)_P ⊗ ad_a^{n−1} c_P;
/// returns its distance from the g_P assembly.
pub fn lift_assembly_check(conn: &KZBConnection, pt: &ModularPoint) -> Result<f64> {
    let (al, len) = (conn.alphabet().clone(), conn.max_len());
    let mut dtau = CElem::gen(&al, len, GEN_B).scale(&-omega0_tilde(pt.w).dtau);
    for (i, p) in al.points().iter().enumerate() {
        let phis = translated_phis(p, pt, len + 1, conn.precision())?;
        for n in 1..=len {
            let lift = lift_from_phis(n, &phis, pt.w);
            dtau.add_scaled(&conn.ad_table()[i][n - 1], &-lift.dtau);
        }
    }
    let v = conn.omega_tilde().eval(pt)?;
    Ok((&v.dtau - &dtau).max_norm())
}

/// Frame change ν′ = uν + vω^(0): ω^(n)′ = u^{n−1} ω^(n); v does not enter.
pub fn frame_change(u: C, _v: C, phis: &[C]) -> Result<Vec<C>> {
    if u == zero() {
        return Err(Error::Invalid("frame change needs a unit u".into()));
    }
    Ok(phis.iter().enumerate().map(|(n, c)| c * u.powi(n as i32 - 1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kzb::points::sample_points;

    #[test]
    fn lifts_vanish_on_identity_section() {
        // along e: (z, w) = (0, 0) only the dτ part survives, and it is −w/2πi = 0
        assert_eq!(omega0_tilde(zero()).dtau, zero());
        assert_eq!(nu_tilde().dtau, zero());
    }

    #[test]
    fn d_omega0_is_alpha21_wedge_nu() {
        // d(dz − w dτ/2πi) has only a dw∧dτ part, −1/2πi
        let d_omega0 = -TWO_PI_I.inv();
        let rhs = ScalarForm1::new(zero(), zero(), TWO_PI_I.inv()).wedge(&nu_tilde());
        assert!((rhs.dwdtau - d_omega0).norm() < 1e-16);
        assert_eq!(rhs.dzdw, zero());
    }

    #[test]
    fn triple_wedge_and_uniqueness_probe() {
        let prec = Precision::default();
        for pt in sample_points(1, 5, 31) {
            for n in 0..=4 {
                let r = triple_wedge_residual(n, &TorsionPoint::origin(), &pt, 0.0, &prec).unwrap();
                assert!(r < 1e-9, "n={n}: {r}");
                let r1 = triple_wedge_residual(n, &TorsionPoint::origin(), &pt, 1e-3, &prec).unwrap();
                let r2 = triple_wedge_residual(n, &TorsionPoint::origin(), &pt, 1e-5, &prec).unwrap();
                assert!((r1 / r2 / 100.0 - 1.0).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn lifts_reassemble_dtau_part() {
        for level in 1..=2 {
            let conn = KZBConnection::new(level, 4, Precision::default()).unwrap();
            for pt in sample_points(level, 3, 37) {
                assert!(lift_assembly_check(&conn, &pt).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn frame_change_cases() {
        let phis = vec![C::new(1.0, 0.0), C::new(0.3, 0.2), C::new(-0.1, 0.5), C::new(2.0, -1.0)];
        let same = frame_change(C::new(1.0, 0.0), C::new(7.0, 3.0), &phis).unwrap();
        assert_eq!(same, phis);
        let two = frame_change(C::new(2.0, 0.0), zero(), &phis).unwrap();
        assert_eq!(two[1], phis[1]);
        assert_eq!(two[3], phis[3] * 4.0);
        assert!(frame_change(zero(), zero(), &phis).is_err());
    }
}
