use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use elliptic_kzb::forms::CElem;
use elliptic_kzb::kzb::KZBConnection;
use elliptic_kzb::modforms::{Precision, TWO_PI_I};
use elliptic_kzb::ncalg::{c_gen, NCElement, GEN_A};
use elliptic_kzb::transport::{monodromy, shuffle_defect, transport, PathSpec, TransportOptions, WRule};
use elliptic_kzb::{Error, TorsionPoint};

const TOL: f64 = 1e-9;
const LEN: usize = 4;

fn conn(level: u32) -> KZBConnection {
    KZBConnection::new(level, LEN, Precision::default()).unwrap()
}

fn run(p: &PathSpec, k: &KZBConnection) -> CElem {
    transport(p, k, LEN, TOL, &TransportOptions::default()).unwrap().element
}

fn tau() -> C {
    C::new(0.1, 1.1)
}

fn w() -> C {
    C::new(0.3, -0.2)
}

#[test]
fn loop_around_origin_matches_residues() {
    let k = conn(1);
    let al = k.alphabet();
    let co = c_gen::<C>(al, LEN, &TorsionPoint::origin()).unwrap();
    for (wv, r) in [(w(), 0.2), (C::new(-0.7, 0.4), 0.1), (C::new(0.0, 0.0), 0.3)] {
        let lp = PathSpec::circle(tau(), wv, C::new(0.0, 0.0), r);
        let m = monodromy(&lp, &k, LEN, TOL, &TransportOptions::default()).unwrap();
        let mut want = NCElement::zero(al, LEN);
        let mut fact = 1.0;
        for n in 1..=LEN {
            if n > 1 {
                fact *= (n - 1) as f64;
            }
            want.add_scaled(&NCElement::ad_pow(GEN_A, n - 1, &co), &(TWO_PI_I * wv.powu(n as u32 - 1) / fact));
        }
        assert!((&m.first_order - &want).max_norm() < 1e-7);
        assert!(m.log.is_some());
    }
}

#[test]
fn reversal_and_composition() {
    let k = conn(1);
    let one = CElem::one(k.alphabet(), LEN);
    let mut rng = ChaCha8Rng::seed_from_u64(0xE11B);
    let verts = [C::new(0.3, 0.2), C::new(0.7, 0.5), C::new(0.4, 0.9)];
    let whole = run(&PathSpec::polyline(tau(), w(), &verts), &k);
    let back = run(&PathSpec::polyline(tau(), w(), &verts).reversed(), &k);
    assert!((&(&back * &whole) - &one).max_norm() < 10.0 * TOL);
    for _ in 0..3 {
        let t: f64 = rng.gen_range(0.2..0.8);
        let cut = verts[0] + (verts[1] - verts[0]) * t;
        let first = run(&PathSpec::polyline(tau(), w(), &[verts[0], cut]), &k);
        let second = run(&PathSpec::polyline(tau(), w(), &[cut, verts[1], verts[2]]), &k);
        assert!((&(&second * &first) - &whole).max_norm() < 10.0 * TOL);
    }
}

#[test]
fn transports_are_grouplike() {
    for level in [1u32, 2] {
        let k = conn(level);
        let mut p = PathSpec::polyline(tau(), w(), &[C::new(0.2, 0.15), C::new(0.8, 0.25), C::new(0.3, 0.35)]);
        for rule in [WRule::Constant, WRule::BrownLevin, WRule::Lattice] {
            p.w_rule = rule;
            let t = run(&p, &k);
            assert!(shuffle_defect(&t) < 10.0 * TOL, "level {level} {rule:?}");
        }
    }
}

#[test]
fn homotopy_invariance() {
    let k = conn(1);
    for rule in [WRule::Constant, WRule::BrownLevin] {
        let mut a = PathSpec::polyline(tau(), w(), &[C::new(0.3, 0.2), C::new(0.7, 0.5), C::new(0.4, 0.9)]);
        let mut b = PathSpec::polyline(tau(), w(), &[C::new(0.3, 0.2), C::new(0.71, 0.49), C::new(0.4, 0.9)]);
        a.w_rule = rule;
        b.w_rule = rule;
        assert!((&run(&a, &k) - &run(&b, &k)).max_norm() < 10.0 * TOL, "{rule:?}");
    }
}

#[test]
fn contractible_loop_is_trivial() {
    let k = conn(2);
    let p = PathSpec::polyline(tau(), w(), &[C::new(0.2, 0.2), C::new(0.4, 0.25), C::new(0.3, 0.4), C::new(0.2, 0.2)]);
    let m = monodromy(&p, &k, LEN, TOL, &TransportOptions::default()).unwrap();
    assert!((&m.element - &CElem::one(k.alphabet(), LEN)).max_norm() < 10.0 * TOL);
    assert!(m.log.unwrap().max_norm() < 10.0 * TOL);
}

#[test]
fn fundamental_parallelogram_equals_rebased_small_loop() {
    // the boundary of z0 + [0,1] + [0,1]τ encloses the single lattice point 1 + τ
    let k = conn(1);
    let z0 = C::new(0.55, 0.35);
    let t = tau();
    let boundary = PathSpec::polyline(t, w(), &[z0, z0 + 1.0, z0 + 1.0 + t, z0 + t, z0]);
    let centre = C::new(1.0, 0.0) + t;
    let r = 0.2;
    let entry = centre + C::new(r, 0.0);
    let go = PathSpec::polyline(t, w(), &[z0, entry]);
    let rebased = go.then(&PathSpec::circle(t, w(), centre, r)).then(&go.reversed());
    let a = monodromy(&boundary, &k, LEN, TOL, &TransportOptions::default()).unwrap();
    let b = monodromy(&rebased, &k, LEN, TOL, &TransportOptions::default()).unwrap();
    assert!((&a.element - &b.element).max_norm() < 10.0 * TOL);
    // conjugate of the loop based at the puncture circle
    let small = monodromy(&PathSpec::circle(t, w(), centre, r), &k, LEN, TOL, &TransportOptions::default()).unwrap();
    let g = run(&go, &k);
    let g_inv = run(&go.reversed(), &k);
    let conj = &(&g_inv * &small.element) * &g;
    assert!((&conj - &b.element).max_norm() < 10.0 * TOL);
}

#[test]
fn gauss_legendre_order() {
    let k = conn(1);
    let p = PathSpec::polyline(tau(), w(), &[C::new(0.3, 0.2), C::new(0.7, 0.5)]);
    let m = 3;
    let est = |panels: usize| {
        let o = TransportOptions { nodes: m, initial_panels: panels, max_depth: 0, fixed: true };
        transport(&p, &k, LEN, TOL, &o).unwrap().error_estimate.iter().sum::<f64>()
    };
    let (e1, e2) = (est(4), est(8));
    let order = (e1 / e2).log2();
    assert!(order > 2.0 * m as f64 - 1.0, "observed order {order}");
}

#[test]
fn clearance_violation_is_reported() {
    let k = conn(1);
    let p = PathSpec::polyline(tau(), w(), &[C::new(-0.3, 0.01), C::new(0.3, 0.01)]);
    assert!(matches!(transport(&p, &k, LEN, TOL, &TransportOptions::default()), Err(Error::Clearance(..))));
}
