//! Truncated Chen series of the relative KZB form along a path.
//!
//! Solves dT = −ω T with T(start) = 1, so T(γ₂∘γ₁) = T(γ₂)T(γ₁). On each panel the
//! length grading is built up by the recursion U_n(t) = 1 − ∫ A U_{n−1} on Gauss–Legendre
//! nodes (spectral integration matrix); panels are compared with their two halves and
//! subdivided until the difference is below the local tolerance.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use serde::Serialize;

use super::path::{PathSpec, Segment};
use crate::error::{Error, Result};
use crate::forms::CElem;
use crate::kzb::KZBConnection;
use crate::modforms::ModularPoint;
use crate::ncalg::{Alphabet, Gen};

type C = Complex64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransportOptions {
    /// Gauss–Legendre nodes per panel.
    pub nodes: usize,
    /// Initial panels per segment.
    pub initial_panels: usize,
    /// Maximum bisection depth below an initial panel.
    pub max_depth: usize,
    /// No subdivision: each initial panel is split once, and the split is only used for the estimate.
    pub fixed: bool,
}

impl Default for TransportOptions {
    fn default() -> Self {
        Self { nodes: 10, initial_panels: 4, max_depth: 24, fixed: false }
    }
}

#[derive(Clone, Debug)]
pub struct TransportResult {
    /// T, truncated at the requested length; the empty word has coefficient 1.
    pub element: CElem,
    /// −∫_γ ω, the single-integral part of T.
    pub first_order: CElem,
    /// Sum over panels of the panel-vs-halves difference, per word length 0..=L.
    pub error_estimate: Vec<f64>,
    pub panels: usize,
    pub evaluations: usize,
    /// Truncated log T (monodromy only).
    pub log: Option<CElem>,
}

impl TransportResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "element": crate::ncalg::json::to_json(&self.element),
            "first_order": crate::ncalg::json::to_json(&self.first_order),
            "error_estimate": self.error_estimate,
            "panels": self.panels,
            "evaluations": self.evaluations,
            "log": self.log.as_ref().map(crate::ncalg::json::to_json),
        })
    }
}

struct Rule {
    x: Vec<f64>,
    w: Vec<f64>,
    /// s[i][j] = ∫_0^{x_i} ℓ_j
    s: Vec<Vec<f64>>,
}

impl Rule {
    fn new(m: usize) -> Result<Self> {
        let m = NonZeroUsize::new(m).ok_or_else(|| Error::Invalid("need at least one node".into()))?;
        let gl = GaussLegendre::new(m);
        let mut pairs: Vec<(f64, f64)> =
            gl.as_node_weight_pairs().iter().map(|&(x, w)| ((x + 1.0) / 2.0, w / 2.0)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (x, w): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let lagrange = |j: usize, t: f64| -> f64 {
            (0..x.len()).filter(|&k| k != j).map(|k| (t - x[k]) / (x[j] - x[k])).product()
        };
        let s = x
            .iter()
            .map(|&xi| {
                (0..x.len()).map(|j| x.iter().zip(&w).map(|(&xk, &wk)| wk * xi * lagrange(j, xi * xk)).sum()).collect()
            })
            .collect();
        Ok(Self { x, w, s })
    }
}

struct Integrator<'a> {
    conn: &'a KZBConnection,
    path: &'a PathSpec,
    len: usize,
    rule: Rule,
    evaluations: usize,
}

struct Panel {
    full: CElem,
    first: CElem,
}

impl Integrator<'_> {
    fn alphabet(&self) -> &std::sync::Arc<Alphabet> {
        self.conn.alphabet()
    }

    /// Pulled-back form ω(dz/dt, dw/dt) at parameter t of a segment.
    fn pulled_back(&mut self, seg: &Segment, t: f64) -> Result<CElem> {
        let z = seg.point(t);
        let dz = seg.velocity(t);
        let (w, dw) = self.path.w_at(z, dz);
        let pt = ModularPoint::new(z, w, self.path.tau())?;
        let v = self.conn.omega_rel().eval(&pt)?;
        self.evaluations += 1;
        let mut a = v.dz.scale(&dz);
        if dw != C::new(0.0, 0.0) {
            a.add_scaled(&v.dw, &dw);
        }
        Ok(a.with_bound(self.len))
    }

    fn panel(&mut self, seg: &Segment, a: f64, b: f64) -> Result<Panel> {
        let h = b - a;
        let m = self.rule.x.len();
        let mut forms = Vec::with_capacity(m);
        for i in 0..m {
            forms.push(self.pulled_back(seg, a + h * self.rule.x[i])?.scale(&C::new(h, 0.0)));
        }
        let one = CElem::one(self.alphabet(), self.len);
        let mut u: Vec<CElem> = vec![one.clone(); m];
        for _ in 1..self.len {
            let prods: Vec<CElem> = forms.iter().zip(&u).map(|(f, ui)| f * ui).collect();
            u = (0..m)
                .map(|i| {
                    let mut next = one.clone();
                    for (j, p) in prods.iter().enumerate() {
                        next.add_scaled(p, &C::new(-self.rule.s[i][j], 0.0));
                    }
                    next
                })
                .collect();
        }
        let mut full = one;
        let mut first = CElem::zero(self.alphabet(), self.len);
        for j in 0..m {
            let wj = C::new(-self.rule.w[j], 0.0);
            full.add_scaled(&(&forms[j] * &u[j]), &wj);
            first.add_scaled(&forms[j], &wj);
        }
        Ok(Panel { full, first })
    }

    #[allow(clippy::too_many_arguments)]
    fn adaptive(
        &mut self,
        seg: &Segment,
        a: f64,
        b: f64,
        whole: Panel,
        tol: f64,
        depth: usize,
        fixed: bool,
        out: &mut Acc,
    ) -> Result<()> {
        let mid = 0.5 * (a + b);
        let left = self.panel(seg, a, mid)?;
        let right = self.panel(seg, mid, b)?;
        let halves = &right.full * &left.full;
        let diff = &whole.full - &halves;
        let err = diff.max_norm();
        let scale = halves.max_norm().max(1.0);
        if fixed || err <= tol * (b - a) * scale || depth == 0 {
            if !fixed && err > tol * (b - a) * scale {
                return Err(Error::Quadrature(tol, err));
            }
            out.push(halves, &left.first + &right.first, &diff, 2);
            return Ok(());
        }
        self.adaptive(seg, a, mid, left, tol, depth - 1, false, out)?;
        self.adaptive(seg, mid, b, right, tol, depth - 1, false, out)
    }
}

struct Acc {
    total: CElem,
    first: CElem,
    err: Vec<f64>,
    panels: usize,
}

impl Acc {
    fn push(&mut self, p: CElem, first: CElem, diff: &CElem, panels: usize) {
        self.total = &p * &self.total;
        self.first = &self.first + &first;
        for (n, e) in self.err.iter_mut().enumerate() {
            *e += diff.homogeneous(n).max_norm();
        }
        self.panels += panels;
    }
}

/// T along `path` for the relative form of `conn`, truncated at word length `len`.
pub fn transport(
    path: &PathSpec,
    conn: &KZBConnection,
    len: usize,
    tol: f64,
    opts: &TransportOptions,
) -> Result<TransportResult> {
    if len > conn.max_len() {
        return Err(Error::Truncation(conn.max_len(), len));
    }
    if !(tol > 0.0) {
        return Err(Error::Invalid("tolerance must be positive".into()));
    }
    path.validate(conn.level())?;
    let mut it = Integrator { conn, path, len, rule: Rule::new(opts.nodes)?, evaluations: 0 };
    let mut acc = Acc {
        total: CElem::one(conn.alphabet(), len),
        first: CElem::zero(conn.alphabet(), len),
        err: vec![0.0; len + 1],
        panels: 0,
    };
    let seg_tol = tol / path.segments.len().max(1) as f64;
    for seg in &path.segments {
        let k = opts.initial_panels.max(1);
        for i in 0..k {
            let (a, b) = (i as f64 / k as f64, (i + 1) as f64 / k as f64);
            let whole = it.panel(seg, a, b)?;
            it.adaptive(seg, a, b, whole, seg_tol, opts.max_depth, opts.fixed, &mut acc)?;
        }
    }
    Ok(TransportResult {
        element: acc.total,
        first_order: acc.first,
        error_estimate: acc.err,
        panels: acc.panels,
        evaluations: it.evaluations,
        log: None,
    })
}

/// Truncated logarithm Σ_k (−1)^{k+1}(x − 1)^k / k.
pub fn nc_log(x: &CElem) -> CElem {
    let len = x.max_len();
    let y = x - &CElem::one(x.alphabet(), len);
    let mut out = CElem::zero(x.alphabet(), len);
    let mut pow = y.clone();
    for k in 1..=len {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        out.add_scaled(&pow, &C::new(sign / k as f64, 0.0));
        pow = &pow * &y;
    }
    out
}

/// Transport around a closed path, with its logarithm.
pub fn monodromy(
    path: &PathSpec,
    conn: &KZBConnection,
    len: usize,
    tol: f64,
    opts: &TransportOptions,
) -> Result<TransportResult> {
    if !path.is_closed() {
        return Err(Error::Invalid("monodromy needs a closed path".into()));
    }
    let mut r = transport(path, conn, len, tol, opts)?;
    r.log = Some(nc_log(&r.element));
    Ok(r)
}

/// Largest |T[u]T[v] − Σ_{w ∈ u ш v} T[w]| over nonempty words with |u| + |v| ≤ max_len.
pub fn shuffle_defect(t: &CElem) -> f64 {
    let al = t.alphabet();
    let len = t.max_len();
    let gens = al.num_gens() as Gen;
    let mut words: Vec<Vec<Gen>> = vec![Vec::new()];
    let mut frontier = words.clone();
    for _ in 1..len {
        frontier = frontier.iter().flat_map(|w| (0..gens).map(move |g| [w.as_slice(), &[g]].concat())).collect();
        words.extend(frontier.iter().cloned());
    }
    let mut worst = 0.0f64;
    for u in words.iter().filter(|u| !u.is_empty()) {
        for v in words.iter().filter(|v| !v.is_empty() && u.len() + v.len() <= len) {
            let mut sum = C::new(0.0, 0.0);
            shuffles(u, v, &mut Vec::new(), &mut |w| sum += t.coeff(w));
            worst = worst.max((t.coeff(u) * t.coeff(v) - sum).norm());
        }
    }
    worst
}

fn shuffles(u: &[Gen], v: &[Gen], acc: &mut Vec<Gen>, f: &mut dyn FnMut(&[Gen])) {
    if u.is_empty() || v.is_empty() {
        let n = acc.len();
        acc.extend_from_slice(u);
        acc.extend_from_slice(v);
        f(acc);
        acc.truncate(n);
        return;
    }
    acc.push(u[0]);
    shuffles(&u[1..], v, acc, f);
    acc.pop();
    acc.push(v[0]);
    shuffles(u, &v[1..], acc, f);
    acc.pop();
}

/// Coefficient of a word in a, b, b_P in the transport: the iterated integral dual to it.
pub fn polylog_value(word: &[Gen], path: &PathSpec, conn: &KZBConnection, tol: f64) -> Result<C> {
    let r = transport(path, conn, word.len(), tol, &TransportOptions::default())?;
    Ok(r.element.coeff(word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::Precision;
    use crate::ncalg::GEN_B;

    #[test]
    fn integration_matrix_integrates_polynomials() {
        let r = Rule::new(5).unwrap();
        for (i, &x) in r.x.iter().enumerate() {
            // ∫_0^x t^3 dt
            let v: f64 = (0..5).map(|j| r.s[i][j] * r.x[j].powi(3)).sum();
            assert!((v - x.powi(4) / 4.0).abs() < 1e-14);
        }
        assert!((r.w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn constant_path_gives_one() {
        let conn = KZBConnection::new(1, 3, Precision::default()).unwrap();
        let z = C::new(0.3, 0.4);
        let p = PathSpec::polyline(C::new(0.0, 1.0), C::new(0.1, 0.0), &[z, z]);
        let r = transport(&p, &conn, 3, 1e-10, &TransportOptions::default()).unwrap();
        assert_eq!(r.element, CElem::one(conn.alphabet(), 3));
    }

    #[test]
    fn single_letters() {
        let conn = KZBConnection::new(1, 2, Precision::default()).unwrap();
        let (z0, z1) = (C::new(0.3, 0.4), C::new(0.6, 0.7));
        let p = PathSpec::polyline(C::new(0.0, 1.0), C::new(0.1, 0.2), &[z0, z1]);
        assert!((polylog_value(&[GEN_B], &p, &conn, 1e-11).unwrap() - (z1 - z0)).norm() < 1e-12);
        assert!(polylog_value(&[crate::ncalg::GEN_A], &p, &conn, 1e-11).unwrap().norm() < 1e-14);
    }

    #[test]
    fn log_of_exp_is_identity() {
        let al = Alphabet::new(1).unwrap();
        let x = &CElem::gen(&al, 4, GEN_B) + &CElem::gen(&al, 4, crate::ncalg::GEN_A).scale(&C::new(0.5, 0.0));
        let mut e = CElem::one(&al, 4);
        let mut term = CElem::one(&al, 4);
        for k in 1..=4 {
            term = (&term * &x).scale(&C::new(1.0 / k as f64, 0.0));
            e = &e + &term;
        }
        assert!((&nc_log(&e) - &x).max_norm() < 1e-15);
        assert!(shuffle_defect(&e) < 1e-15);
    }
}
