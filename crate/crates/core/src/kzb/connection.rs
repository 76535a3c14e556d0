//! The level-N relative KZB form ω_N, its canonical lift ω̃_N and the derivation Φ_N.

use num_complex::Complex64;
use std::sync::Arc;

use super::phi::{ad_tables, numeric_phi};
use super::points::puncture_distance;
use crate::error::{Error, Result};
use crate::forms::{CElem, Form1Jet, Form1Value, NCForm1};
use crate::modforms::{kp_jets, phi_coeffs, LaurentJet, ModularPoint, Precision, TWO_PI_I};
use crate::ncalg::{Alphabet, NCDerivation, GEN_A, GEN_B};

type C = Complex64;

/// b + Σ k_P(ad_a)c_P and −wb + Σ g_P(ad_a)c_P with their partial derivatives.
#[derive(Clone, Debug)]
pub struct KzbParts {
    pub k_sum: CElem,
    pub k_z: CElem,
    pub k_w: CElem,
    pub k_tau: CElem,
    pub g_sum: CElem,
    pub g_z: CElem,
    pub g_w: CElem,
    pub g_tau: CElem,
}

struct Shared {
    alphabet: Arc<Alphabet>,
    max_len: usize,
    prec: Precision,
    /// ad_a^n c_P, complex coefficients
    ads: Vec<Vec<CElem>>,
}

impl Shared {
    fn substitute(&self, point: usize, jet: &LaurentJet) -> CElem {
        let mut out = CElem::zero(&self.alphabet, self.max_len);
        for (n, term) in self.ads[point].iter().enumerate() {
            let c = jet.coeff(n as i32);
            if term.is_zero() {
                break;
            }
            out.add_scaled(term, &c);
        }
        out
    }

    fn parts(&self, p: &ModularPoint) -> Result<KzbParts> {
        let (al, len) = (&self.alphabet, self.max_len);
        let b = CElem::gen(al, len, GEN_B);
        let zero = CElem::zero(al, len);
        let mut out = KzbParts {
            k_sum: b.clone(),
            k_z: zero.clone(),
            k_w: zero.clone(),
            k_tau: zero.clone(),
            g_sum: b.scale(&-p.w),
            g_z: zero.clone(),
            g_w: -&b,
            g_tau: zero,
        };
        for (i, pt) in al.points().iter().enumerate() {
            let j = kp_jets(p.z, p.w, p.tau, pt, len, &self.prec)?;
            out.k_sum.add_scaled(&self.substitute(i, &j.k), &C::new(1.0, 0.0));
            out.k_z.add_scaled(&self.substitute(i, &j.k_z), &C::new(1.0, 0.0));
            out.k_w.add_scaled(&self.substitute(i, &j.k_w), &C::new(1.0, 0.0));
            out.k_tau.add_scaled(&self.substitute(i, &j.k_tau), &C::new(1.0, 0.0));
            out.g_sum.add_scaled(&self.substitute(i, &j.g), &C::new(1.0, 0.0));
            out.g_z.add_scaled(&self.substitute(i, &j.g_z), &C::new(1.0, 0.0));
            out.g_w.add_scaled(&self.substitute(i, &j.g_w), &C::new(1.0, 0.0));
            out.g_tau.add_scaled(&self.substitute(i, &j.g_tau), &C::new(1.0, 0.0));
        }
        Ok(out)
    }

    fn jet(&self, p: &ModularPoint, lifted: bool) -> Result<Form1Jet> {
        let (al, len) = (&self.alphabet, self.max_len);
        let parts = self.parts(p)?;
        let m1 = C::new(-1.0, 0.0);
        let t = -TWO_PI_I.inv();
        let zero = CElem::zero(al, len);
        let pick = |e: &CElem| if lifted { e.scale(&t) } else { zero.clone() };
        let value =
            Form1Value { dz: parts.k_sum.scale(&m1), dw: -&CElem::gen(al, len, GEN_A), dtau: pick(&parts.g_sum) };
        let d_z = Form1Value { dz: parts.k_z.scale(&m1), dw: zero.clone(), dtau: pick(&parts.g_z) };
        let d_w = Form1Value { dz: parts.k_w.scale(&m1), dw: zero.clone(), dtau: pick(&parts.g_w) };
        let d_tau = Form1Value { dz: parts.k_tau.scale(&m1), dw: zero.clone(), dtau: pick(&parts.g_tau) };
        Ok(Form1Jet { value, d_z, d_w, d_tau })
    }
}

/// ∇_N = d + ω̃_N + Φ_N in level N, truncated at word length L.
#[derive(Clone)]
pub struct KZBConnection {
    level: u32,
    max_len: usize,
    shared: Arc<Shared>,
    omega_rel: NCForm1,
    omega_tilde: NCForm1,
}

impl KZBConnection {
    pub fn new(level: u32, max_len: usize, prec: Precision) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::Invalid("truncation length must be at least 1".into()));
        }
        let alphabet = Alphabet::new(level)?;
        let ads = ad_tables::<C>(&alphabet, max_len)?;
        let shared = Arc::new(Shared { alphabet: alphabet.clone(), max_len, prec, ads });
        let (s1, s2) = (shared.clone(), shared.clone());
        let omega_rel = NCForm1::from_jets(&alphabet, max_len, Arc::new(move |p| s1.jet(p, false)));
        let omega_tilde = NCForm1::from_jets(&alphabet, max_len, Arc::new(move |p| s2.jet(p, true)));
        Ok(Self { level, max_len, shared, omega_rel, omega_tilde })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.shared.alphabet
    }

    pub fn precision(&self) -> &Precision {
        &self.shared.prec
    }

    /// ω_N: no dτ component.
    pub fn omega_rel(&self) -> &NCForm1 {
        &self.omega_rel
    }

    /// ω̃_N.
    pub fn omega_tilde(&self) -> &NCForm1 {
        &self.omega_tilde
    }

    /// D with Φ_N = −(dτ/2πi) ⊗ D.
    pub fn phi(&self, tau: C) -> Result<NCDerivation<C>> {
        numeric_phi(&self.shared.alphabet, self.max_len, tau, &self.shared.prec)
    }

    pub fn parts(&self, p: &ModularPoint) -> Result<KzbParts> {
        self.shared.parts(p)
    }

    pub fn puncture_distance(&self, p: &ModularPoint) -> f64 {
        puncture_distance(p.z, p.tau, self.level)
    }

    /// ad_a^n c_P table used in the assembly.
    pub fn ad_table(&self) -> &[Vec<CElem>] {
        &self.shared.ads
    }

    /// dz-coefficient of ω_N assembled from translated φ-coefficients instead of k_P jets:
    /// −(b + Σ_P Σ_n φ_P^(n) ad_a^{n−1} c_P).
    pub fn dz_coefficient_from_phi(&self, p: &ModularPoint) -> Result<CElem> {
        let sh = &self.shared;
        let mut out = CElem::gen(&sh.alphabet, self.max_len, GEN_B);
        for (i, pt) in sh.alphabet.points().iter().enumerate() {
            let (alpha, beta) = (pt.alpha_f64(), pt.beta_f64());
            let phis =
                phi_coeffs(p.z - alpha - p.tau * beta, p.w - TWO_PI_I * beta, p.tau, self.max_len + 1, &sh.prec)?;
            for n in 1..=self.max_len {
                out.add_scaled(&sh.ads[i][n - 1], &phis[n]);
            }
        }
        Ok(-out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kzb::points::sample_points;

    #[test]
    fn length_one_form() {
        let conn = KZBConnection::new(1, 1, Precision::default()).unwrap();
        let p = ModularPoint::new(C::new(0.3, 0.2), C::new(0.1, 0.4), C::new(0.0, 1.5)).unwrap();
        let v = conn.omega_rel().eval(&p).unwrap();
        let al = conn.alphabet();
        assert_eq!(v.dw, -&CElem::gen(al, 1, GEN_A));
        assert_eq!(v.dz, -&CElem::gen(al, 1, GEN_B));
        assert!(v.dtau.is_zero());
    }

    #[test]
    fn two_assemblies_agree() {
        for level in 1..=2 {
            let conn = KZBConnection::new(level, 4, Precision::default()).unwrap();
            for p in sample_points(level, 5, 7) {
                let a = conn.omega_rel().eval(&p).unwrap().dz;
                let b = conn.dz_coefficient_from_phi(&p).unwrap();
                let scale = a.max_norm().max(1.0);
                assert!((&a - &b).max_norm() < 1e-10 * scale);
            }
        }
    }

    #[test]
    fn lift_differs_only_in_dtau() {
        let conn = KZBConnection::new(2, 3, Precision::default()).unwrap();
        let p = sample_points(2, 1, 3)[0];
        let r = conn.omega_rel().eval(&p).unwrap();
        let t = conn.omega_tilde().eval(&p).unwrap();
        assert_eq!(r.dz, t.dz);
        assert_eq!(r.dw, t.dw);
        assert!(r.dtau.is_zero() && !t.dtau.is_zero());
    }
}
