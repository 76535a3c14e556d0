//! Elements of the reduced bar construction on the fibre model 𝒜, and its Hopf structure.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::letter::{Mono, MonoDisplay, Presentation};
use crate::ncalg::{Coeff, SymPoly};

pub type BarWord = Vec<Mono>;

/// Shifted degree of a word: Σ (deg c_i − 1).
pub fn word_degree(w: &[Mono]) -> usize {
    w.iter().map(|m| m.degree() - 1).sum()
}

pub(crate) fn insert<R: Coeff>(map: &mut BTreeMap<BarWord, R>, w: BarWord, c: R) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        Entry::Occupied(mut o) => {
            let v = o.get().clone() + c;
            if v.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = v;
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Terms of d_B[c_1|…|c_n] = d_1 + d_2 with
/// d_1 = Σ_i (−1)^i [Jc_1|…|Jc_{i−1}|dc_i|…] and
/// d_2 = Σ_i (−1)^{i−1} [Jc_1|…|Jc_{i−1}|Jc_i∧c_{i+1}|…].
pub(crate) fn bar_d_terms(pres: &Presentation, w: &[Mono], total: bool) -> Vec<(BarWord, SymPoly)> {
    let mut out = Vec::new();
    let mut prefix_sign = 1i64;
    for i in 0..w.len() {
        let s1 = if (i + 1) % 2 == 0 { prefix_sign } else { -prefix_sign };
        for (m, c) in pres.d(&w[i], total) {
            let mut nw = w.to_vec();
            nw[i] = m;
            out.push((nw, c * SymPoly::from_i64(s1)));
        }
        if i + 1 < w.len() {
            let s2 = if i % 2 == 0 { 1 } else { -1 } * prefix_sign * w[i].j_sign();
            for (m, c) in pres.wedge(&w[i], &w[i + 1], total) {
                let mut nw = Vec::with_capacity(w.len() - 1);
                nw.extend_from_slice(&w[..i]);
                nw.push(m);
                nw.extend_from_slice(&w[i + 2..]);
                out.push((nw, c * SymPoly::from_i64(s2)));
            }
        }
        prefix_sign *= w[i].j_sign();
    }
    out
}

fn sym_to<R: Coeff>(c: &SymPoly) -> R {
    debug_assert!(c.is_constant());
    R::from_ratio(&c.constant_part())
}

/// Finite linear combination of bar words over 𝒜.
#[derive(Clone, Debug, PartialEq)]
pub struct BarElement<R: Coeff> {
    pres: Arc<Presentation>,
    terms: BTreeMap<BarWord, R>,
}

impl<R: Coeff> BarElement<R> {
    pub fn zero(pres: &Arc<Presentation>) -> Self {
        Self { pres: pres.clone(), terms: BTreeMap::new() }
    }

    /// The empty word [ ].
    pub fn one(pres: &Arc<Presentation>) -> Self {
        Self::word(pres, Vec::new(), R::one())
    }

    pub fn word(pres: &Arc<Presentation>, w: BarWord, c: R) -> Self {
        let mut e = Self::zero(pres);
        e.add_term(w, c);
        e
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BarWord, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &[Mono]) -> R {
        self.terms.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: BarWord, c: R) {
        insert(&mut self.terms, w, c);
    }

    pub fn add_scaled(&mut self, other: &Self, c: &R) {
        for (w, x) in &other.terms {
            insert(&mut self.terms, w.clone(), x.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(&self.pres);
        out.add_scaled(self, c);
        out
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> BarElement<S> {
        let mut out = BarElement::zero(&self.pres);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Longest word length present (0 for scalars and zero).
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Part made of words of the given length.
    pub fn length_part(&self, n: usize) -> Self {
        let terms = self.terms.iter().filter(|(w, _)| w.len() == n).map(|(w, c)| (w.clone(), c.clone())).collect();
        Self { pres: self.pres.clone(), terms }
    }

    /// Counit: coefficient of the empty word.
    pub fn counit(&self) -> R {
        self.coeff(&[])
    }

    pub fn d_bar(&self) -> Self {
        let mut out = Self::zero(&self.pres);
        for (w, c) in &self.terms {
            for (nw, k) in bar_d_terms(&self.pres, w, false) {
                out.add_term(nw, c.clone() * sym_to::<R>(&k));
            }
        }
        out
    }

    /// Shuffle product, with Koszul signs in the shifted degrees.
    pub fn shuffle(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.pres);
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                for (w, s) in shuffle_words(u, v) {
                    out.add_term(w, cu.clone() * cv.clone() * R::from_i64(s));
                }
            }
        }
        out
    }

    /// Deconcatenation coproduct.
    pub fn deconcat(&self) -> BarTensor<R> {
        let mut out = BarTensor::zero(&self.pres);
        for (w, c) in &self.terms {
            for i in 0..=w.len() {
                out.add_term(w[..i].to_vec(), w[i..].to_vec(), c.clone());
            }
        }
        out
    }

    /// σ[c_1|…|c_n] = (−1)^n ε [c_n|…|c_1], ε the Koszul sign of the reversal.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero(&self.pres);
        for (w, c) in &self.terms {
            let mut sign = if w.len() % 2 == 0 { 1 } else { -1 };
            let degs: Vec<usize> = w.iter().map(|m| m.degree() - 1).collect();
            for i in 0..degs.len() {
                for j in i + 1..degs.len() {
                    if degs[i] * degs[j] % 2 == 1 {
                        sign = -sign;
                    }
                }
            }
            let rev: BarWord = w.iter().rev().copied().collect();
            out.add_term(rev, c.clone() * R::from_i64(sign));
        }
        out
    }

    /// Substitutes each letter by a combination of letters (degree-preserving).
    pub fn map_letters(&self, f: impl Fn(&Mono) -> Vec<(Mono, R)>) -> Self {
        let mut out = Self::zero(&self.pres);
        for (w, c) in &self.terms {
            let mut acc: Vec<(BarWord, R)> = vec![(Vec::with_capacity(w.len()), c.clone())];
            for m in w {
                let images = f(m);
                let mut next = Vec::with_capacity(acc.len() * images.len());
                for (pre, pc) in &acc {
                    for (x, xc) in &images {
                        let mut nw = pre.clone();
                        nw.push(*x);
                        next.push((nw, pc.clone() * xc.clone()));
                    }
                }
                acc = next;
            }
            for (nw, nc) in acc {
                out.add_term(nw, nc);
            }
        }
        out
    }

    pub fn to_json(&self, coeff: impl Fn(&R) -> String) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let letters: Vec<String> = w.iter().map(|m| MonoDisplay(&self.pres, m).to_string()).collect();
                serde_json::json!({ "word": letters, "coeff": coeff(c) })
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

impl<R: Coeff> std::ops::Add for &BarElement<R> {
    type Output = BarElement<R>;
    fn add(self, rhs: &BarElement<R>) -> BarElement<R> {
        let mut out = self.clone();
        out.add_scaled(rhs, &R::one());
        out
    }
}

impl<R: Coeff> std::ops::Sub for &BarElement<R> {
    type Output = BarElement<R>;
    fn sub(self, rhs: &BarElement<R>) -> BarElement<R> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-R::one());
        out
    }
}

/// All shuffles of u and v with their Koszul signs.
pub fn shuffle_words(u: &[Mono], v: &[Mono]) -> Vec<(BarWord, i64)> {
    fn rec(u: &[Mono], v: &[Mono], acc: &mut BarWord, sign: i64, out: &mut Vec<(BarWord, i64)>) {
        if u.is_empty() || v.is_empty() {
            let mut w = acc.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            out.push((w, sign));
            return;
        }
        acc.push(u[0]);
        rec(&u[1..], v, acc, sign, out);
        acc.pop();
        // v[0] jumps over all of u
        let dv = v[0].degree() - 1;
        let du = word_degree(u);
        let s = if dv * du % 2 == 1 { -sign } else { sign };
        acc.push(v[0]);
        rec(u, &v[1..], acc, s, out);
        acc.pop();
    }
    let mut out = Vec::new();
    rec(u, v, &mut Vec::with_capacity(u.len() + v.len()), 1, &mut out);
    out
}

/// Element of B ⊗ B.
#[derive(Clone, Debug, PartialEq)]
pub struct BarTensor<R: Coeff> {
    pres: Arc<Presentation>,
    terms: BTreeMap<(BarWord, BarWord), R>,
}

impl<R: Coeff> BarTensor<R> {
    pub fn zero(pres: &Arc<Presentation>) -> Self {
        Self { pres: pres.clone(), terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, l: BarWord, r: BarWord, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((l, r)) {
            Entry::Occupied(mut o) => {
                let v = o.get().clone() + c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(BarWord, BarWord), &R)> {
        self.terms.iter()
    }

    /// f ⊗ g applied termwise.
    pub fn map(
        &self,
        f: impl Fn(&BarElement<R>) -> BarElement<R>,
        g: impl Fn(&BarElement<R>) -> BarElement<R>,
    ) -> Self {
        let mut out = Self::zero(&self.pres);
        for ((l, r), c) in &self.terms {
            let fl = f(&BarElement::word(&self.pres, l.clone(), R::one()));
            let gr = g(&BarElement::word(&self.pres, r.clone(), R::one()));
            for (wl, cl) in fl.terms() {
                for (wr, cr) in gr.terms() {
                    self_add(&mut out, wl, wr, c.clone() * cl.clone() * cr.clone());
                }
            }
        }
        out
    }

    /// Multiplication by shuffle.
    pub fn multiply(&self) -> BarElement<R> {
        let mut out = BarElement::zero(&self.pres);
        for ((l, r), c) in &self.terms {
            for (w, s) in shuffle_words(l, r) {
                out.add_term(w, c.clone() * R::from_i64(s));
            }
        }
        out
    }
}

fn self_add<R: Coeff>(t: &mut BarTensor<R>, l: &BarWord, r: &BarWord, c: R) {
    t.add_term(l.clone(), r.clone(), c);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::letter::Kron;
    use num_rational::BigRational;

    type E = BarElement<BigRational>;

    fn k(p: u16, n: u16) -> Mono {
        Mono::kron(Kron::new(p, n))
    }

    #[test]
    fn small_kernel_elements() {
        let pres = Presentation::new(1, 4).unwrap();
        let one = BigRational::from_i64(1);
        // [ω0|ν] + [ω^(1)] is closed
        let mut x = E::word(&pres, vec![Mono::omega0(), Mono::NU], one.clone());
        x.add_term(vec![k(0, 1)], one.clone());
        assert!(x.d_bar().is_zero());
        // [ν|ω0] + [ω^(1)] is not
        let mut y = E::word(&pres, vec![Mono::NU, Mono::omega0()], one.clone());
        y.add_term(vec![k(0, 1)], one);
        assert!(!y.d_bar().is_zero());
    }

    #[test]
    fn shuffle_counts() {
        let u = vec![Mono::NU, Mono::omega0()];
        let v = vec![k(0, 1), k(0, 2), Mono::NU];
        assert_eq!(shuffle_words(&u, &v).len(), 10);
    }

    #[test]
    fn antipode_reverses() {
        let pres = Presentation::new(1, 2).unwrap();
        let x = E::word(&pres, vec![Mono::NU, Mono::omega0(), k(0, 1)], BigRational::from_i64(2));
        let s = x.antipode();
        assert_eq!(s.coeff(&[k(0, 1), Mono::omega0(), Mono::NU]), BigRational::from_i64(-2));
    }
}
