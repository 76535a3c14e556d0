//! Kronecker function F(z,x) = θ′(0)θ(z+x)/(θ(z)θ(x)) as a Laurent jet in x, its
//! z- and τ-derivatives, and the translated coefficient functions k_P, g_P.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::series::LaurentJet;
use super::theta::theta_derivs;
use super::{lattice_distance, reduce_lattice, Precision, TWO_PI_I};
use crate::error::{Error, Result};
use crate::torsion::TorsionPoint;

type C = Complex64;

const PUNCTURE_EPS: f64 = 1e-10;

/// F(z,·), ∂_z F(z,·), ∂_τ F(z,·) as Laurent jets from x^{-1} to x^{n_max}.
#[derive(Clone, Debug)]
pub struct KroneckerJets {
    pub f: LaurentJet,
    pub dz: LaurentJet,
    pub dtau: LaurentJet,
}

fn taylor(derivs: &[C], start: usize, len: usize, extra: C) -> LaurentJet {
    let mut fact = 1.0;
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        if k > 0 {
            fact *= k as f64;
        }
        out.push(derivs[start + k] * extra / fact);
    }
    LaurentJet::new(0, out)
}

/// θ(x)/x and its τ-derivative as power series, from derivatives at 0.
fn theta_over_x(t0: &[C], len: usize) -> (LaurentJet, LaurentJet) {
    let heat = C::new(0.0, 4.0 * PI).inv();
    let mut d = Vec::with_capacity(len);
    let mut dt = Vec::with_capacity(len);
    let mut fact = 1.0;
    for k in 0..len {
        fact *= (k + 1) as f64;
        d.push(t0[k + 1] / fact);
        dt.push(t0[k + 3] * heat / fact);
    }
    (LaurentJet::new(0, d), LaurentJet::new(0, dt))
}

pub fn kronecker_f(z: C, tau: C, n_max: usize, prec: &Precision) -> Result<KroneckerJets> {
    let dist = lattice_distance(z, tau);
    if dist < PUNCTURE_EPS {
        return Err(Error::Puncture(dist));
    }
    let (z0, _m, n) = reduce_lattice(z, tau);
    let len = n_max + 2;
    let t0 = theta_derivs(C::new(0.0, 0.0), tau, len + 3, prec)?;
    let tz = theta_derivs(z0, tau, len + 3, prec)?;
    let heat = C::new(0.0, 4.0 * PI).inv();
    let one = C::new(1.0, 0.0);

    let num = taylor(&tz, 0, len, one);
    let num_z = taylor(&tz, 1, len, one);
    let num_t = taylor(&tz, 2, len, heat);
    let (den, den_t) = theta_over_x(&t0, len);

    let th1 = t0[1];
    let th1_t = t0[3] * heat;
    let thz = tz[0];
    let thz_z = tz[1];
    let thz_t = tz[2] * heat;

    let f0 = num.div(&den).scale(th1 / thz).shift(-1).truncate(n_max as i32);
    let log_z = num_z.div(&num).add(&LaurentJet::new(0, vec![-thz_z / thz]));
    let log_t = num_t.div(&num).sub(&den_t.div(&den)).add(&LaurentJet::new(0, vec![th1_t / th1 - thz_t / thz]));
    let f0_z = f0.mul(&log_z).truncate(n_max as i32);
    let f0_t = f0.mul(&log_t).truncate(n_max as i32);

    if n == 0 {
        return Ok(KroneckerJets { f: f0, dz: f0_z, dtau: f0_t });
    }
    // F(z0 + m + nτ, x) = e^{−2πinx} F(z0, x); z0 moves with τ, hence the −n∂_zF term.
    let twist = LaurentJet::exp_linear(-TWO_PI_I * n as f64, n_max as i32 + 1);
    let dtau_local = f0_t.sub(&f0_z.scale(C::new(n as f64, 0.0)));
    Ok(KroneckerJets {
        f: twist.mul(&f0).truncate(n_max as i32),
        dz: twist.mul(&f0_z).truncate(n_max as i32),
        dtau: twist.mul(&dtau_local).truncate(n_max as i32),
    })
}

/// φ^(0..=n_max)(z,w), the coefficients of e^{wx}F(z,x) = Σ φ^(n) x^{n−1}.
pub fn phi_coeffs(z: C, w: C, tau: C, n_max: usize, prec: &Precision) -> Result<Vec<C>> {
    let k = kronecker_f(z, tau, n_max, prec)?;
    let e = LaurentJet::exp_linear(w, n_max as i32 + 1);
    let g = e.mul(&k.f);
    Ok((0..=n_max).map(|n| g.coeff(n as i32 - 1)).collect())
}

/// k_P, g_P and their first derivatives in z, w, τ, each a power series in x up to x^deg.
#[derive(Clone, Debug)]
pub struct KPJets {
    pub k: LaurentJet,
    pub k_z: LaurentJet,
    pub k_w: LaurentJet,
    pub k_tau: LaurentJet,
    pub g: LaurentJet,
    pub g_z: LaurentJet,
    pub g_w: LaurentJet,
    pub g_tau: LaurentJet,
}

pub fn kp_jets(z: C, w: C, tau: C, p: &TorsionPoint, deg: usize, prec: &Precision) -> Result<KPJets> {
    let (alpha, beta) = (p.alpha_f64(), p.beta_f64());
    let zs = z - alpha - tau * beta;
    let ws = w - TWO_PI_I * beta;
    let kj = kronecker_f(zs, tau, deg + 1, prec)?;
    let e = LaurentJet::exp_linear(ws, deg as i32 + 2);
    let top = deg as i32 + 1;

    let k = e.mul(&kj.f).regular_part().truncate(top);
    let k_z = e.mul(&kj.dz).regular_part().truncate(top);
    let k_w = e.mul(&kj.f).shift(1).truncate(top);
    let k_tau = e.mul(&kj.dtau.sub(&kj.dz.scale(C::new(beta, 0.0)))).regular_part().truncate(top);

    let d = deg as i32;
    let g = k.derivative().sub(&k.scale(w)).truncate(d);
    let g_z = k_z.derivative().sub(&k_z.scale(w)).truncate(d);
    let g_w = k_w.derivative().sub(&k).sub(&k_w.scale(w)).truncate(d);
    let g_tau = k_tau.derivative().sub(&k_tau.scale(w)).truncate(d);
    Ok(KPJets {
        k: k.truncate(d),
        k_z: k_z.truncate(d),
        k_w: k_w.truncate(d),
        k_tau: k_tau.truncate(d),
        g,
        g_z,
        g_w,
        g_tau,
    })
}

/// Regular part of F at z = 0 as a function of x: θ′(x)/θ(x) − 1/x, through x^deg.
pub fn log_theta_regular(tau: C, deg: usize, prec: &Precision) -> Result<LaurentJet> {
    let len = deg + 2;
    let t0 = theta_derivs(C::new(0.0, 0.0), tau, len + 3, prec)?;
    let (den, _) = theta_over_x(&t0, len);
    let num = taylor(&t0, 1, len, C::new(1.0, 0.0));
    let ratio = num.div(&den).shift(-1);
    Ok(ratio.regular_part().truncate(deg as i32))
}

/// k_R(0,0,x), regularised at R = O, through x^deg.
pub fn k_at_origin(r: &TorsionPoint, tau: C, deg: usize, prec: &Precision) -> Result<LaurentJet> {
    if r.is_origin() {
        return log_theta_regular(tau, deg, prec);
    }
    let (alpha, beta) = (r.alpha_f64(), r.beta_f64());
    let kj = kronecker_f(-tau * beta - alpha, tau, deg, prec)?;
    let e = LaurentJet::exp_linear(-TWO_PI_I * beta, deg as i32 + 1);
    Ok(e.mul(&kj.f).regular_part().truncate(deg as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec() -> Precision {
        Precision::default()
    }

    #[test]
    fn residue_in_x_is_one() {
        let tau = C::new(0.1, 1.4);
        for z in [C::new(0.3, 0.2), C::new(-0.4, 0.9), C::new(2.3, -3.1)] {
            let k = kronecker_f(z, tau, 6, &prec()).unwrap();
            assert!((k.f.coeff(-1) - 1.0).norm() < 1e-13);
            assert!(k.dz.coeff(-1).norm() < 1e-12);
            assert!(k.dtau.coeff(-1).norm() < 1e-12);
        }
    }

    #[test]
    fn constant_term_is_log_derivative() {
        let tau = C::new(-0.3, 0.9);
        let z = C::new(0.27, 0.31);
        let k = kronecker_f(z, tau, 4, &prec()).unwrap();
        let t = theta_derivs(z, tau, 1, &prec()).unwrap();
        assert!((k.f.coeff(0) - t[1] / t[0]).norm() < 1e-12);
    }

    #[test]
    fn jets_match_direct_quotient() {
        // Cauchy-integral oracle on a small circle in x, using scalar theta values only.
        let tau = C::new(0.2, 1.1);
        let z = C::new(0.33, -0.21);
        let k = kronecker_f(z, tau, 6, &prec()).unwrap();
        let t1 = theta_derivs(C::new(0.0, 0.0), tau, 1, &prec()).unwrap()[1];
        let th = |u: C| theta_derivs(u, tau, 0, &prec()).unwrap()[0];
        let (r, m) = (0.25, 64);
        for n in -1..=6i32 {
            let mut s = C::new(0.0, 0.0);
            for j in 0..m {
                let x = C::from_polar(r, 2.0 * PI * j as f64 / m as f64);
                s += t1 * th(z + x) / (th(z) * th(x)) * x.powi(-n);
            }
            s /= m as f64;
            assert!((s - k.f.coeff(n)).norm() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn lattice_transformation() {
        let tau = C::new(0.15, 1.25);
        let z = C::new(0.21, 0.37);
        let base = kronecker_f(z, tau, 6, &prec()).unwrap();
        for (m, n) in [(1i64, 0i64), (-2, 1), (3, -2)] {
            let moved = kronecker_f(z + m as f64 + tau * n as f64, tau, 6, &prec()).unwrap();
            let twist = LaurentJet::exp_linear(-TWO_PI_I * n as f64, 8);
            let want = twist.mul(&base.f).truncate(6);
            assert!(moved.f.max_diff(&want) < 1e-9 * want.max_abs().max(1.0));
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let tau = C::new(0.1, 1.3);
        for z in [C::new(0.31, 0.17), C::new(0.45, 1.0)] {
            let k = kronecker_f(z, tau, 5, &prec()).unwrap();
            let h = 1e-5;
            let fz =
                kronecker_f(z + h, tau, 5, &prec()).unwrap().f.sub(&kronecker_f(z - h, tau, 5, &prec()).unwrap().f);
            assert!(fz.scale(C::new(0.5 / h, 0.0)).max_diff(&k.dz) < 1e-6);
            let ft =
                kronecker_f(z, tau + h, 5, &prec()).unwrap().f.sub(&kronecker_f(z, tau - h, 5, &prec()).unwrap().f);
            assert!(ft.scale(C::new(0.5 / h, 0.0)).max_diff(&k.dtau) < 1e-6);
        }
    }

    fn kp(z: C, w: C, tau: C, p: &TorsionPoint) -> KPJets {
        kp_jets(z, w, tau, p, 6, &prec()).unwrap()
    }

    #[test]
    fn kp_identities_against_finite_differences() {
        let (z, w, tau) = (C::new(0.31, 0.17), C::new(0.2, -0.1), C::new(0.05, 1.2));
        let h = 1e-5;
        let half = C::new(0.5 / h, 0.0);
        for p in [TorsionPoint::origin(), TorsionPoint::from_indices(1, 0, 2), TorsionPoint::from_indices(1, 2, 3)] {
            let j = kp(z, w, tau, &p);
            let x_k_plus_1 = j.k.shift(1).add(&LaurentJet::new(0, vec![C::new(1.0, 0.0)])).truncate(6);
            assert!(j.k_w.max_diff(&x_k_plus_1) < 1e-12);
            let g_w = j.g.shift(1).sub(&LaurentJet::new(0, vec![w])).truncate(5);
            assert!(j.g_w.max_diff(&g_w) < 1e-10);
            // finite-difference checks of the closed-form derivatives
            let dw = kp(z, w + h, tau, &p).k.sub(&kp(z, w - h, tau, &p).k).scale(half);
            assert!(dw.max_diff(&j.k_w) < 1e-6);
            let dz = kp(z + h, w, tau, &p).g.sub(&kp(z - h, w, tau, &p).g).scale(half);
            assert!(dz.max_diff(&j.g_z) < 1e-5);
            let dt = kp(z, w, tau + h, &p).k.sub(&kp(z, w, tau - h, &p).k).scale(half);
            assert!(dt.max_diff(&j.k_tau) < 1e-5);
            let gt = kp(z, w, tau + h, &p).g.sub(&kp(z, w, tau - h, &p).g).scale(half);
            assert!(gt.max_diff(&j.g_tau) < 1e-5);
            // mixed heat equation 2πi ∂_τ k = ∂_z g
            assert!(j.k_tau.scale(TWO_PI_I).max_diff(&j.g_z) < 1e-9 * j.g_z.max_abs().max(1.0));
        }
    }

    #[test]
    fn k_origin_translate_matches_definition() {
        let (z, w, tau) = (C::new(0.4, 0.3), C::new(-0.3, 0.6), C::new(0.0, 1.7));
        let j = kp(z, w, tau, &TorsionPoint::origin());
        let f = kronecker_f(z, tau, 7, &prec()).unwrap().f;
        let want = LaurentJet::exp_linear(w, 8).mul(&f).regular_part().truncate(6);
        assert!(j.k.max_diff(&want) < 1e-13);
        // k_P coefficients are the translated φ's
        let p = TorsionPoint::from_indices(1, 1, 2);
        let jp = kp(z, w, tau, &p);
        let phis = phi_coeffs(z - 0.5 - tau * 0.5, w - TWO_PI_I * 0.5, tau, 7, &prec()).unwrap();
        for n in 1..=7 {
            assert!((jp.k.coeff(n as i32 - 1) - phis[n]).norm() < 1e-11);
        }
    }

    #[test]
    fn a_half_period_matches_cauchy_oracle() {
        // A_{0,Q} for Q = (1/2,0) at τ = 2i from scalar theta values on a circle.
        let tau = C::new(0.0, 2.0);
        let q = TorsionPoint::from_indices(1, 0, 2);
        let jet = super::super::eisenstein::eisenstein_a_jet(&q, tau, 4, &prec()).unwrap();
        let t1 = theta_derivs(C::new(0.0, 0.0), tau, 1, &prec()).unwrap()[1];
        let th = |u: C| theta_derivs(u, tau, 0, &prec()).unwrap()[0];
        let zr = C::new(-0.5, 0.0);
        let k = |x: C| t1 * th(zr + x) / (th(zr) * th(x)) - 1.0 / x;
        let (r, m) = (0.2, 64);
        for n in 0..=3i32 {
            // coefficient of x^n in k' is (n+1) times the x^{n+1} coefficient of k
            let mut s = C::new(0.0, 0.0);
            for j in 0..m {
                let x = C::from_polar(r, 2.0 * PI * j as f64 / m as f64);
                s += k(x) * x.powi(-(n + 1));
            }
            s = s / m as f64 * (n + 1) as f64;
            assert!((s - jet.coeff(n)).norm() < 1e-10, "m={n}: {s} vs {}", jet.coeff(n));
        }
    }

    #[test]
    fn puncture_is_an_error() {
        let tau = C::new(0.0, 1.0);
        assert!(matches!(kronecker_f(tau + 1.0, tau, 3, &prec()), Err(Error::Puncture(_))));
    }

    #[test]
    fn phi_zero_is_one() {
        let phi = phi_coeffs(C::new(0.2, 0.3), C::new(0.5, -0.1), C::new(0.0, 1.5), 4, &prec()).unwrap();
        assert!((phi[0] - 1.0).norm() < 1e-13);
        let phi0 = phi_coeffs(C::new(0.2, 0.3), C::new(0.0, 0.0), C::new(0.0, 1.5), 2, &prec()).unwrap();
        let t = theta_derivs(C::new(0.2, 0.3), C::new(0.0, 1.5), 1, &prec()).unwrap();
        assert!((phi0[1] - t[1] / t[0]).norm() < 1e-12);
    }
}
