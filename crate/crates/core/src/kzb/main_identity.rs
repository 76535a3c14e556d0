//! D(b + Σ k_P c_P) = [b + Σ k_P c_P, −wb + Σ g_Q c_Q] and its bracket-calculus form.

use num_complex::Complex64;

use super::connection::KZBConnection;
use crate::error::Result;
use crate::forms::CElem;
use crate::modforms::{kp_jets, BiSeries, ModularPoint};
use crate::ncalg::{Gen, GEN_A, GEN_B};

type C = Complex64;

/// f(x,y)[[r,s]]_t = Σ f_ij [ad_t^i r, ad_t^j s].
pub fn bracket_series(f: &BiSeries, r: &CElem, s: &CElem, t: Gen) -> CElem {
    let d = f.degree();
    let pow = |x: &CElem| {
        let mut v = vec![x.clone()];
        for _ in 0..d {
            let next = CElem::ad_pow(t, 1, v.last().expect("nonempty"));
            v.push(next);
        }
        v
    };
    let (rs, ss) = (pow(r), pow(s));
    let mut out = CElem::zero(r.alphabet(), r.max_len().min(s.max_len()));
    for i in 0..=d {
        if rs[i].is_zero() {
            continue;
        }
        for j in 0..=d - i {
            let c = f.coeff(i, j);
            if c == C::new(0.0, 0.0) || ss[j].is_zero() {
                continue;
            }
            out.add_scaled(&rs[i].commutator(&ss[j]), &c);
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct MainIdentityResidual {
    /// |D(Z) − [Z, T]|
    pub derivation: f64,
    /// |[Z, T] − (ad_b Σ k′_P c_P + ½ Σ f_{P,Q}[[c_Q, c_P]]_a)|
    pub reformulation: f64,
}

impl MainIdentityResidual {
    pub fn max(&self) -> f64 {
        self.derivation.max(self.reformulation)
    }
}

pub fn main_identity_check(conn: &KZBConnection, p: &ModularPoint) -> Result<MainIdentityResidual> {
    let parts = conn.parts(p)?;
    let d = conn.phi(p.tau)?;
    let lhs = d.apply(&parts.k_sum)?;
    let rhs = parts.k_sum.commutator(&parts.g_sum);
    let derivation = (&lhs - &rhs).max_norm();

    let (al, len) = (conn.alphabet().clone(), conn.max_len());
    let deg = len;
    let pts = al.points().to_vec();
    let ads = conn.ad_table();
    let b = CElem::gen(&al, len, GEN_B);
    let mut jets = Vec::with_capacity(pts.len());
    for pt in &pts {
        let k = kp_jets(p.z, p.w, p.tau, pt, deg + 1, conn.precision())?.k;
        jets.push((k.truncate(deg as i32), k.derivative().truncate(deg as i32)));
    }
    let mut kprime_sum = CElem::zero(&al, len);
    for (i, (_, kp)) in jets.iter().enumerate() {
        for (n, term) in ads[i].iter().enumerate() {
            kprime_sum.add_scaled(term, &kp.coeff(n as i32));
        }
    }
    let mut alt = b.commutator(&kprime_sum);
    let half = C::new(0.5, 0.0);
    for (ip, _) in pts.iter().enumerate() {
        for (iq, _) in pts.iter().enumerate() {
            // f_{P,Q}(x,y) = k_Q(x) k′_P(y) − k_P(y) k′_Q(x)
            let (kp, kpp) = &jets[ip];
            let (kq, kqp) = &jets[iq];
            let f = BiSeries::in_x(kq, deg)
                .mul(&BiSeries::in_y(kpp, deg))
                .add(&BiSeries::in_y(kp, deg).mul(&BiSeries::in_x(kqp, deg)).scale(C::new(-1.0, 0.0)));
            alt.add_scaled(&bracket_series(&f, &ads[iq][0], &ads[ip][0], GEN_A), &half);
        }
    }
    let reformulation = (&rhs - &alt).max_norm();
    Ok(MainIdentityResidual { derivation, reformulation })
}
