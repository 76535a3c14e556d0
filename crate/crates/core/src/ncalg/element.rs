use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::alphabet::{Alphabet, Gen, GEN_A, GEN_B};
use super::coeff::Coeff;
use crate::error::{Error, Result};
use crate::torsion::TorsionPoint;

pub type Word = Vec<Gen>;

/// Truncated element of the free algebra on {a, b, b_P}: words of length ≤ `max_len`.
#[derive(Clone, PartialEq)]
pub struct NCElement<R: Coeff> {
    alphabet: Arc<Alphabet>,
    max_len: usize,
    terms: BTreeMap<Word, R>,
}

impl<R: Coeff> NCElement<R> {
    pub fn zero(alphabet: &Arc<Alphabet>, max_len: usize) -> Self {
        Self { alphabet: alphabet.clone(), max_len, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: &Arc<Alphabet>, max_len: usize) -> Self {
        Self::scalar(alphabet, max_len, R::one())
    }

    pub fn scalar(alphabet: &Arc<Alphabet>, max_len: usize, r: R) -> Self {
        let mut e = Self::zero(alphabet, max_len);
        e.add_term(Vec::new(), r);
        e
    }

    pub fn gen(alphabet: &Arc<Alphabet>, max_len: usize, g: Gen) -> Self {
        Self::monomial(alphabet, max_len, vec![g], R::one())
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, max_len: usize, word: Word, r: R) -> Self {
        let mut e = Self::zero(alphabet, max_len);
        e.add_term(word, r);
        e
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[Gen]) -> R {
        self.terms.get(word).cloned().unwrap_or_else(R::zero)
    }

    /// Adds `r·word`, discarding words beyond the bound and cancelled terms.
    pub fn add_term(&mut self, word: Word, r: R) {
        if word.len() > self.max_len || r.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Occupied(mut o) => {
                let v = o.get().clone() + r;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(r);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alphabet.level() != other.alphabet.level() {
            return Err(Error::AlphabetMismatch(self.alphabet.level(), other.alphabet.level()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.truncate(self.max_len.min(other.max_len));
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let bound = self.max_len.min(other.max_len);
        let mut out = Self::zero(&self.alphabet, bound);
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                if u.len() + v.len() > bound {
                    continue;
                }
                let mut w = Vec::with_capacity(u.len() + v.len());
                w.extend_from_slice(u);
                w.extend_from_slice(v);
                out.add_term(w, cu.clone() * cv.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, r: &R) -> Self {
        let mut out = Self::zero(&self.alphabet, self.max_len);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone() * r.clone());
        }
        out
    }

    /// Adds `r·other` in place.
    pub fn add_scaled(&mut self, other: &Self, r: &R) {
        assert_eq!(self.alphabet.level(), other.alphabet.level(), "alphabet mismatch");
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone() * r.clone());
        }
    }

    pub fn truncate(&self, len: usize) -> Self {
        let bound = len.min(self.max_len);
        Self {
            alphabet: self.alphabet.clone(),
            max_len: bound,
            terms: self.terms.iter().filter(|(w, _)| w.len() <= bound).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Same terms, new bound (words longer than it are dropped).
    pub fn with_bound(&self, len: usize) -> Self {
        let mut out = self.truncate(len);
        out.max_len = len;
        out
    }

    /// Part of pure word length `n`.
    pub fn homogeneous(&self, n: usize) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            max_len: self.max_len,
            terms: self.terms.iter().filter(|(w, _)| w.len() == n).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    /// ad_x^n y with x a single generator.
    pub fn ad_pow(x: Gen, n: usize, y: &Self) -> Self {
        let gx = Self::gen(&y.alphabet, y.max_len, x);
        let mut cur = y.clone();
        for _ in 0..n {
            cur = gx.commutator(&cur);
        }
        cur
    }

    /// Σ_n f_n ad_g^n(tail) for f = Σ_{n ≥ order_min} f_n x^n. A pole term
    /// (order_min = −1) needs `pole_value`, the element standing for ad_g^{-1}(tail).
    pub fn substitute_series(
        tail: &Self,
        g: Gen,
        order_min: i32,
        coeffs: &[R],
        pole_value: Option<&Self>,
    ) -> Result<Self> {
        let mut out = Self::zero(&tail.alphabet, tail.max_len);
        let mut start = 0usize;
        if order_min < 0 {
            if order_min < -1 {
                return Err(Error::PoleNotRouted);
            }
            if let Some(c) = coeffs.first() {
                if !c.is_zero() {
                    let pv = pole_value.ok_or(Error::PoleNotRouted)?;
                    out.add_scaled(pv, c);
                }
            }
            start = 1;
        }
        let gx = Self::gen(&tail.alphabet, tail.max_len, g);
        let mut cur = tail.clone();
        for c in coeffs.iter().skip(start) {
            if cur.is_zero() {
                break;
            }
            out.add_scaled(&cur, c);
            cur = gx.commutator(&cur);
        }
        Ok(out)
    }

    /// Max coefficient modulus, the comparison norm used throughout.
    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(|c| c.modulus()).fold(0.0, f64::max)
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> NCElement<S> {
        let mut out = NCElement::zero(&self.alphabet, self.max_len);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    pub fn min_word_len(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).min()
    }

    pub fn word_to_string(&self, w: &[Gen]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|g| self.alphabet.symbol(*g)).collect::<Vec<_>>().join("·")
    }
}

/// c_P: b_P for P ≠ O, and [a,b] − Σ_{Q≠O} b_Q for P = O.
pub fn c_gen<R: Coeff>(alphabet: &Arc<Alphabet>, max_len: usize, p: &TorsionPoint) -> Result<NCElement<R>> {
    alphabet.check_point(p)?;
    if let Some(g) = alphabet.gen_of_point(p) {
        return Ok(NCElement::gen(alphabet, max_len, g));
    }
    let a = NCElement::gen(alphabet, max_len, GEN_A);
    let b = NCElement::gen(alphabet, max_len, GEN_B);
    let mut out = a.commutator(&b);
    for q in alphabet.points().iter().skip(1) {
        let g = alphabet.gen_of_point(q).expect("nonzero point");
        out.add_term(vec![g], -R::one());
    }
    Ok(out)
}

impl<R: Coeff> fmt::Debug for NCElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(w, c)| format!("({c:?})·{}", self.word_to_string(w))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a, R: Coeff> Add<&'a NCElement<R>> for &'a NCElement<R> {
    type Output = NCElement<R>;
    fn add(self, rhs: &'a NCElement<R>) -> NCElement<R> {
        self.checked_add(rhs).expect("alphabet mismatch")
    }
}

impl<'a, R: Coeff> Sub<&'a NCElement<R>> for &'a NCElement<R> {
    type Output = NCElement<R>;
    fn sub(self, rhs: &'a NCElement<R>) -> NCElement<R> {
        self.checked_add(&-rhs).expect("alphabet mismatch")
    }
}

impl<'a, R: Coeff> Mul<&'a NCElement<R>> for &'a NCElement<R> {
    type Output = NCElement<R>;
    fn mul(self, rhs: &'a NCElement<R>) -> NCElement<R> {
        self.checked_mul(rhs).expect("alphabet mismatch")
    }
}

impl<R: Coeff> Add for NCElement<R> {
    type Output = NCElement<R>;
    fn add(self, rhs: NCElement<R>) -> NCElement<R> {
        &self + &rhs
    }
}

impl<R: Coeff> Sub for NCElement<R> {
    type Output = NCElement<R>;
    fn sub(self, rhs: NCElement<R>) -> NCElement<R> {
        &self - &rhs
    }
}

impl<R: Coeff> Mul for NCElement<R> {
    type Output = NCElement<R>;
    fn mul(self, rhs: NCElement<R>) -> NCElement<R> {
        &self * &rhs
    }
}

impl<R: Coeff> Neg for &NCElement<R> {
    type Output = NCElement<R>;
    fn neg(self) -> NCElement<R> {
        self.scale(&-R::one())
    }
}

impl<R: Coeff> Neg for NCElement<R> {
    type Output = NCElement<R>;
    fn neg(self) -> NCElement<R> {
        -&self
    }
}
