//! Comparison with the level-1 connection d − dz ⊗ ad_a F(z, ad_a) b after the gauge
//! transformation f ↦ e^{−wa} f, and the F′ form of the dτ coefficient.

use num_complex::Complex64;

use super::connection::KZBConnection;
use crate::error::{Error, Result};
use crate::forms::CElem;
use crate::modforms::kronecker::kronecker_f;
use crate::modforms::{LaurentJet, ModularPoint, TWO_PI_I};
use crate::ncalg::{GEN_A, GEN_B};

type C = Complex64;

/// exp(s·a), truncated.
pub fn exp_gen(alphabet: &std::sync::Arc<crate::ncalg::Alphabet>, len: usize, s: C) -> CElem {
    let a = CElem::gen(alphabet, len, GEN_A);
    let mut term = CElem::one(alphabet, len);
    let mut out = term.clone();
    for n in 1..=len {
        term = (&term * &a).scale(&(s / n as f64));
        out = &out + &term;
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct GaugeResidual {
    pub dw: f64,
    pub dz: f64,
}

impl GaugeResidual {
    pub fn max(&self) -> f64 {
        self.dw.max(self.dz)
    }
}

/// ω′ = e^{−wa} ω e^{wa} + a dw on the fibre (τ fixed) vs −dz ⊗ ad_a F(z, ad_a) b.
pub fn gauge_compare_levin_racinet(conn: &KZBConnection, p: &ModularPoint) -> Result<GaugeResidual> {
    if conn.level() != 1 {
        return Err(Error::Invalid("the gauge comparison is a level-1 statement".into()));
    }
    let (al, len) = (conn.alphabet().clone(), conn.max_len());
    let v = conn.omega_rel().eval(p)?;
    let g = exp_gen(&al, len, -p.w);
    let ginv = exp_gen(&al, len, p.w);
    let dz = &(&g * &v.dz) * &ginv;
    let dw = &(&(&g * &v.dw) * &ginv) + &CElem::gen(&al, len, GEN_A);
    // x F(z, x) is a power series
    let f = kronecker_f(p.z, p.tau, len, conn.precision())?.f.shift(1);
    let b = CElem::gen(&al, len, GEN_B);
    let target = -CElem::substitute_series(&b, GEN_A, 0, &f.coeffs, None)?;
    Ok(GaugeResidual { dw: dw.max_norm(), dz: (&dz - &target).max_norm() })
}

/// |dτ-coefficient of ω̃_1 + (1/2πi) ad_a F′(z,w,ad_a) b| with F′ = e^{wx}∂_x F + 1/x².
pub fn f_prime_check(conn: &KZBConnection, p: &ModularPoint) -> Result<f64> {
    if conn.level() != 1 {
        return Err(Error::Invalid("F′ normalisation is a level-1 statement".into()));
    }
    let (al, len) = (conn.alphabet().clone(), conn.max_len());
    let v = conn.omega_tilde().eval(p)?;
    let f = kronecker_f(p.z, p.tau, len + 1, conn.precision())?.f;
    let fp = LaurentJet::exp_linear(p.w, len as i32 + 2).mul(&f.derivative());
    let inv_sq = LaurentJet::monomial(-2, C::new(1.0, 0.0), fp.order_max());
    let x_fp = fp.add(&inv_sq).shift(1).regular_part();
    let b = CElem::gen(&al, len, GEN_B);
    let want = CElem::substitute_series(&b, GEN_A, 0, &x_fp.coeffs, None)?.scale(&(-TWO_PI_I.inv()));
    Ok((&v.dtau - &want).max_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kzb::points::sample_points;
    use crate::modforms::Precision;

    #[test]
    fn gauge_removes_dw_and_matches() {
        let conn = KZBConnection::new(1, 4, Precision::default()).unwrap();
        for p in sample_points(1, 5, 23) {
            let r = gauge_compare_levin_racinet(&conn, &p).unwrap();
            assert!(r.dw < 1e-10 && r.dz < 1e-9, "{r:?}");
        }
        let c1 = KZBConnection::new(1, 1, Precision::default()).unwrap();
        let p = sample_points(1, 1, 23)[0];
        assert!(gauge_compare_levin_racinet(&c1, &p).unwrap().max() < 1e-14);
        assert!(gauge_compare_levin_racinet(&KZBConnection::new(2, 2, Precision::default()).unwrap(), &p).is_err());
    }

    #[test]
    fn dtau_coefficient_is_f_prime() {
        let conn = KZBConnection::new(1, 4, Precision::default()).unwrap();
        for p in sample_points(1, 5, 29) {
            let r = f_prime_check(&conn, &p).unwrap();
            assert!(r < 1e-10, "{r}");
        }
    }
}
