//! Bar construction on the total forms 𝒞, relative to {1, T}, T = dτ/2πi.
//!
//! Words are kept in normal form: an attached T sits in the first slot, using
//! [c_1|T∧c_2] = −(−1)^{deg c_1}[T∧c_1|c_2]. Coefficients (polynomials in the A_{m,Q})
//! are treated as horizontal: their dτ-derivative would be absorbed by a T already in
//! the first slot, and a non-constant coefficient elsewhere is rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::element::{bar_d_terms, insert, BarElement, BarWord};
use super::letter::{Mono, Presentation};
use crate::error::{Error, Result};
use crate::ncalg::{Coeff, SymPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct RelBarElement {
    pres: Arc<Presentation>,
    terms: BTreeMap<BarWord, SymPoly>,
}

/// Normal form of a single word: sign and rewritten word, or `None` if it vanishes.
pub fn normalise(w: &[Mono]) -> Option<(BarWord, i64)> {
    let t_count = w.iter().filter(|m| m.t).count();
    if t_count > 1 {
        return None;
    }
    let mut w = w.to_vec();
    let mut sign = 1i64;
    while let Some(i) = (1..w.len()).find(|&i| w[i].t && w[i] != Mono::T) {
        sign *= -w[i - 1].j_sign();
        w[i - 1].t = true;
        w[i].t = false;
    }
    Some((w, sign))
}

impl RelBarElement {
    pub fn zero(pres: &Arc<Presentation>) -> Self {
        Self { pres: pres.clone(), terms: BTreeMap::new() }
    }

    pub fn word(pres: &Arc<Presentation>, w: BarWord, c: SymPoly) -> Self {
        let mut e = Self::zero(pres);
        e.add_term(w, c);
        e
    }

    /// Canonical lift s: the same words read in 𝒞.
    pub fn lift<R: Coeff>(x: &BarElement<R>, to_sym: impl Fn(&R) -> SymPoly) -> Self {
        let mut e = Self::zero(x.presentation());
        for (w, c) in x.terms() {
            e.add_term(w.clone(), to_sym(c));
        }
        e
    }

    pub fn add_term(&mut self, w: BarWord, c: SymPoly) {
        if let Some((nw, s)) = normalise(&w) {
            insert(&mut self.terms, nw, c * SymPoly::from_i64(s));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BarWord, &SymPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn d_bar(&self) -> Result<Self> {
        let mut out = Self::zero(&self.pres);
        for (w, c) in &self.terms {
            if !c.is_constant() && !w.first().is_some_and(|m| m.t) {
                return Err(Error::Invalid("non-constant coefficient on a word without T".into()));
            }
            for (nw, k) in bar_d_terms(&self.pres, w, true) {
                out.add_term(nw, c.clone() * k);
            }
        }
        Ok(out)
    }

    /// Part without any T.
    pub fn t_free_part(&self) -> Self {
        let terms =
            self.terms.iter().filter(|(w, _)| w.iter().all(|m| !m.t)).map(|(w, c)| (w.clone(), c.clone())).collect();
        Self { pres: self.pres.clone(), terms }
    }

    /// π: the T-coefficient, as a bar element over 𝒜. Words whose T is a bare letter drop out.
    pub fn project(&self) -> BarElement<SymPoly> {
        let mut out = BarElement::zero(&self.pres);
        for (w, c) in &self.terms {
            match w.first() {
                Some(m) if m.t && *m != Mono::T => {
                    let mut nw = w.clone();
                    nw[0] = m.without_t();
                    out.add_term(nw, c.clone());
                }
                _ => {}
            }
        }
        out
    }
}

/// The T-coefficient of δ(ξ) = −π(d_B s ξ) for closed ξ; errors if ξ is not closed.
pub fn gauss_manin_tau<R: Coeff>(xi: &BarElement<R>, to_sym: impl Fn(&R) -> SymPoly) -> Result<BarElement<SymPoly>> {
    let d = RelBarElement::lift(xi, to_sym).d_bar()?;
    if !d.t_free_part().is_zero() {
        return Err(Error::Invalid("element is not closed in the fibre bar complex".into()));
    }
    let p = d.project();
    Ok(p.scale(&SymPoly::from_i64(-1)))
}

/// δ_τ by the local rule: each ω^(0) becomes ν, each adjacent pair (x, y) becomes μ(x, y).
pub fn gauss_manin_tau_local<R: Coeff>(xi: &BarElement<R>, to_sym: impl Fn(&R) -> SymPoly) -> BarElement<SymPoly> {
    let pres = xi.presentation();
    let mut out = BarElement::zero(pres);
    for (w, c) in xi.terms() {
        let c = to_sym(c);
        for i in 0..w.len() {
            if w[i] == Mono::omega0() {
                let mut nw = w.clone();
                nw[i] = Mono::NU;
                out.add_term(nw, c.clone());
            }
            if i + 1 < w.len() {
                if let (Some(x), Some(y)) = (w[i].x, w[i + 1].x) {
                    if w[i].nu || w[i + 1].nu {
                        continue;
                    }
                    for (k, mu) in super::letter::kronecker_product(pres.points(), x, y) {
                        let mut nw = Vec::with_capacity(w.len() - 1);
                        nw.extend_from_slice(&w[..i]);
                        nw.push(Mono::kron(k));
                        nw.extend_from_slice(&w[i + 2..]);
                        out.add_term(nw, c.clone() * mu);
                    }
                }
            }
        }
    }
    out
}
