//! The KZB form read off from the antipode of H.
//!
//! σ̂ = Σ_w σ(ι(w)) ⊗ g(w) over pure words w, g the dual monomial. Its length-one part
//! Σ_x [x] ⊗ ω_x gives the form attached to every letter x of 𝒜, and σ̂ is group-like:
//! its length-k part is Σ [x_1|…|x_k] ⊗ ω_{x_1}…ω_{x_k}.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use super::element::BarWord;
use super::h0::H0Basis;
use super::letter::{Mono, MonoDisplay};
use super::projector::dual_monomial;
use crate::error::Result;
use crate::ncalg::{c_gen, Alphabet, NCElement, GEN_A, GEN_B};

type Q = NCElement<BigRational>;

/// σ̂ as a map from bar words to elements of the free algebra.
pub fn antipode_series(h: &H0Basis, alphabet: &Arc<Alphabet>) -> Result<BTreeMap<BarWord, Q>> {
    let len = h.max_len();
    let mut out: BTreeMap<BarWord, Q> = BTreeMap::new();
    for (w, e) in h.iter() {
        let dual = dual_monomial(h.presentation(), alphabet, w)?;
        for (u, c) in e.antipode().terms() {
            out.entry(u.clone()).or_insert_with(|| Q::zero(alphabet, len)).add_term(dual.clone(), c.clone());
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// ω_x for every letter x of the presentation, from the length-one part of σ̂.
pub fn kzb_form_from_antipode(h: &H0Basis, alphabet: &Arc<Alphabet>) -> Result<BTreeMap<Mono, Q>> {
    let series = antipode_series(h, alphabet)?;
    Ok(h.presentation()
        .letters()
        .into_iter()
        .map(|x| {
            let form = series.get(&vec![x]).cloned().unwrap_or_else(|| Q::zero(alphabet, h.max_len()));
            (x, form)
        })
        .collect())
}

/// Closed form: ω_ν = −a, ω_{ω^(0)} = −b, ω_{ω^(n)_P} = −ad_a^{n−1} c_P.
pub fn expected_kzb_form(h: &H0Basis, alphabet: &Arc<Alphabet>, x: &Mono) -> Result<Q> {
    let len = h.max_len();
    let minus = -BigRational::one();
    Ok(match x.x {
        None => Q::gen(alphabet, len, GEN_A).scale(&minus),
        Some(k) if k.n == 0 => Q::gen(alphabet, len, GEN_B).scale(&minus),
        Some(k) => {
            let c = c_gen::<BigRational>(alphabet, len, &h.presentation().points()[k.point as usize])?;
            Q::ad_pow(GEN_A, k.n as usize - 1, &c).scale(&minus)
        }
    })
}

#[derive(Clone, Debug, Default)]
pub struct KzbFormReport {
    pub letters_checked: usize,
    /// Letters whose antipode-derived form differs from the closed form.
    pub mismatches: Vec<String>,
    pub words_checked: usize,
    /// Bar words where σ̂ differs from the product of forms.
    pub grouplike_failures: Vec<String>,
}

impl KzbFormReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.grouplike_failures.is_empty()
    }
}

/// Exact comparison of the antipode-derived form with the closed form, plus the
/// group-like property on every bar word of length ≤ max_len.
pub fn antipode_kzb_check(h: &H0Basis, alphabet: &Arc<Alphabet>) -> Result<KzbFormReport> {
    let pres = h.presentation();
    let forms = kzb_form_from_antipode(h, alphabet)?;
    let mut report = KzbFormReport::default();
    for (x, form) in &forms {
        report.letters_checked += 1;
        if form != &expected_kzb_form(h, alphabet, x)? {
            report.mismatches.push(MonoDisplay(pres, x).to_string());
        }
    }
    let series = antipode_series(h, alphabet)?;
    let letters: Vec<Mono> = forms.keys().copied().collect();
    let mut layer: Vec<(BarWord, Q)> = vec![(Vec::new(), Q::one(alphabet, h.max_len()))];
    for _ in 0..h.max_len() {
        let mut next = Vec::new();
        for (u, prod) in &layer {
            for x in &letters {
                let p = prod * &forms[x];
                let mut nu = u.clone();
                nu.push(*x);
                next.push((nu, p));
            }
        }
        for (u, p) in &next {
            report.words_checked += 1;
            let want = series.get(u).cloned().unwrap_or_else(|| Q::zero(alphabet, h.max_len()));
            if p != &want {
                report
                    .grouplike_failures
                    .push(u.iter().map(|m| MonoDisplay(pres, m).to_string()).collect::<Vec<_>>().join("|"));
            }
        }
        layer = next;
    }
    Ok(report)
}
