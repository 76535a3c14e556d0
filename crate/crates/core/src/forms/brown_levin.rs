//! Pullback along the real-analytic section z ↦ (z, 2πi r(z)), r(z) = Im z / Im τ.
//!
//! dr is not holomorphic; it is carried as a formal basis element.

use num_complex::Complex64;

use super::exterior::NCForm1;
use super::value::CElem;
use crate::error::Result;
use crate::modforms::{check_tau, ModularPoint, TWO_PI_I};

/// σ*f at a point of the fibre: f_dz dz + f_dr dr.
#[derive(Clone, Debug, PartialEq)]
pub struct BrownLevinForm {
    pub dz: CElem,
    pub dr: CElem,
}

pub fn brown_levin_w(z: Complex64, tau: Complex64) -> Complex64 {
    TWO_PI_I * (z.im / tau.im)
}

pub fn restrict_brown_levin(f: &NCForm1, z: Complex64, tau: Complex64) -> Result<BrownLevinForm> {
    check_tau(tau)?;
    let v = f.eval(&ModularPoint::new(z, brown_levin_w(z, tau), tau)?)?;
    Ok(BrownLevinForm { dz: v.dz, dr: v.dw.scale(&TWO_PI_I) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::value::Form1Value;
    use crate::modforms::kronecker::kronecker_f;
    use crate::modforms::{phi_coeffs, LaurentJet, Precision};
    use crate::ncalg::{Alphabet, GEN_A, GEN_B};
    use std::sync::Arc;

    #[test]
    fn nu_and_omega_pullbacks() {
        let al = Alphabet::new(1).unwrap();
        let (z, tau) = (Complex64::new(0.3, 0.4), Complex64::new(0.1, 1.2));
        // ν = dw ⊗ a, ω^(0) = dz ⊗ b
        let mut v = Form1Value::zero(&al, 2);
        v.dw = CElem::gen(&al, 2, GEN_A);
        v.dz = CElem::gen(&al, 2, GEN_B);
        let bl = restrict_brown_levin(&NCForm1::constant(v), z, tau).unwrap();
        assert_eq!(bl.dr.coeff(&[GEN_A]), TWO_PI_I);
        assert_eq!(bl.dz.coeff(&[GEN_B]), Complex64::new(1.0, 0.0));
        // ω^(1) dz ⊗ a: coefficient is the x^0 term of e^{2πirx}F(z,x)
        let p = Precision::default();
        let pc = p;
        let al2 = al.clone();
        let f = NCForm1::from_values(
            &al,
            2,
            Arc::new(move |q| {
                let phi = phi_coeffs(q.z, q.w, q.tau, 1, &pc)?;
                let mut v = Form1Value::zero(&al2, 2);
                v.dz = CElem::gen(&al2, 2, GEN_A).scale(&phi[1]);
                Ok(v)
            }),
        );
        let bl = restrict_brown_levin(&f, z, tau).unwrap();
        let r = z.im / tau.im;
        let direct = LaurentJet::exp_linear(TWO_PI_I * r, 3).mul(&kronecker_f(z, tau, 2, &p).unwrap().f);
        assert!((bl.dz.coeff(&[GEN_A]) - direct.coeff(0)).norm() < 1e-13);
    }
}
