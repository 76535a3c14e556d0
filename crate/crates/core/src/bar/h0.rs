//! Degree-0 bar cohomology H = H^0(B(𝒜)) and the section ι of the letter projection ρ.
//!
//! d_B preserves the number r of non-ν letters and the weight W, so the kernel is
//! computed block by block. Columns are ordered with words containing non-pure letters
//! first; the free columns of the reduced matrix are then exactly the pure words, and the
//! kernel vector attached to a pure word w is the unique closed element w + (impure terms).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;

use super::element::{bar_d_terms, BarElement, BarWord};
use super::letter::{Mono, MonoDisplay, Presentation};
use super::linalg::{kernel_of_columns, SparseRow};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct H0Basis {
    pres: Arc<Presentation>,
    max_len: usize,
    iota: BTreeMap<BarWord, BarElement<BigRational>>,
}

fn block_key(w: &[Mono]) -> (usize, usize) {
    let r = w.iter().filter(|m| m.x.is_some()).count();
    (r, w.iter().map(Mono::weight).sum())
}

/// Degree-0 words of length 1..=max_len and weight ≤ max_len, grouped by (r, W).
fn blocks(pres: &Presentation, max_len: usize) -> BTreeMap<(usize, usize), Vec<BarWord>> {
    let letters: Vec<Mono> = pres.letters().into_iter().filter(|m| m.weight() <= max_len).collect();
    let mut out: BTreeMap<(usize, usize), Vec<BarWord>> = BTreeMap::new();
    let mut layer: Vec<(BarWord, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, wt) in &layer {
            for m in &letters {
                let nwt = wt + m.weight();
                if nwt <= max_len {
                    let mut nw = w.clone();
                    nw.push(*m);
                    next.push((nw, nwt));
                }
            }
        }
        for (w, _) in &next {
            out.entry(block_key(w)).or_default().push(w.clone());
        }
        layer = next;
    }
    out
}

impl H0Basis {
    /// Computes ι(w) for every pure word of length ≤ max_len.
    pub fn compute(pres: &Arc<Presentation>, max_len: usize) -> Result<Self> {
        if (pres.n_max() as usize) < max_len {
            return Err(Error::Truncation(pres.n_max() as usize, max_len));
        }
        let blocks = blocks(pres, max_len);
        let results = blocks
            .into_par_iter()
            .map(|(_, words)| Self::block_kernel(pres, words))
            .collect::<Result<Vec<_>>>()?;
        let mut iota = BTreeMap::new();
        iota.insert(Vec::new(), BarElement::one(pres));
        for r in results {
            iota.extend(r);
        }
        Ok(Self { pres: pres.clone(), max_len, iota })
    }

    fn block_kernel(
        pres: &Arc<Presentation>,
        mut words: Vec<BarWord>,
    ) -> Result<Vec<(BarWord, BarElement<BigRational>)>> {
        let is_pure = |w: &BarWord| w.iter().all(|m| pres.is_pure(m));
        words.sort_by(|a, b| (is_pure(a), a.len(), a).cmp(&(is_pure(b), b.len(), b)));
        let mut targets: BTreeMap<BarWord, usize> = BTreeMap::new();
        let columns: Vec<SparseRow> = words
            .iter()
            .map(|w| {
                let mut col = SparseRow::new();
                for (t, c) in bar_d_terms(pres, w, false) {
                    let n = targets.len();
                    let i = *targets.entry(t).or_insert(n);
                    let e = col.entry(i).or_default();
                    *e += c.constant_part();
                }
                col.retain(|_, v| *v != BigRational::default());
                col
            })
            .collect();
        let kernel = kernel_of_columns(&columns);
        let pure_count = words.iter().filter(|w| is_pure(w)).count();
        if kernel.len() != pure_count || kernel.iter().any(|(f, _)| !is_pure(&words[*f])) {
            return Err(Error::Invalid(format!(
                "closed elements do not match pure words in a block: {} free columns, {} pure words",
                kernel.len(),
                pure_count
            )));
        }
        Ok(kernel
            .into_iter()
            .map(|(f, vec)| {
                let mut e = BarElement::zero(pres);
                for (j, v) in vec {
                    e.add_term(words[j].clone(), v);
                }
                (words[f].clone(), e)
            })
            .collect())
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// ι(w) = ρ^{-1}(w) for a pure word w.
    pub fn iota(&self, w: &[Mono]) -> Option<&BarElement<BigRational>> {
        self.iota.get(w)
    }

    /// (pure word, ι(word)) in word order.
    pub fn iter(&self) -> impl Iterator<Item = (&BarWord, &BarElement<BigRational>)> {
        self.iota.iter()
    }

    /// dim H_n for n = 0..=max_len, H_n the closed elements of length ≤ n modulo length < n.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.max_len + 1];
        for w in self.iota.keys() {
            dims[w.len()] += 1;
        }
        dims
    }

    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<serde_json::Value> = self
            .iota
            .iter()
            .map(|(w, e)| {
                let word: Vec<String> = w.iter().map(|m| MonoDisplay(&self.pres, m).to_string()).collect();
                serde_json::json!({ "pure_word": word, "element": e.to_json(|c| c.to_string()) })
            })
            .collect();
        serde_json::json!({
            "level": self.pres.level(),
            "max_len": self.max_len,
            "graded_dims": self.graded_dims(),
            "basis": basis,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::letter::Kron;

    #[test]
    fn level_one_length_two() {
        let pres = Presentation::new(1, 3).unwrap();
        let h = H0Basis::compute(&pres, 2).unwrap();
        assert_eq!(h.graded_dims(), vec![1, 2, 4]);
        for (w, e) in h.iter() {
            assert!(e.d_bar().is_zero());
            assert_eq!(e.max_len(), w.len());
        }
        // ι([ω0|ν]) = [ω0|ν] + [ω^(1)_O]
        let x = h.iota(&[Mono::omega0(), Mono::NU]).unwrap();
        assert_eq!(x.num_terms(), 2);
        assert_eq!(x.coeff(&[Mono::kron(Kron::new(0, 1))]), BigRational::from_integer(1.into()));
    }

    #[test]
    fn too_small_n_max_is_rejected() {
        let pres = Presentation::new(1, 2).unwrap();
        assert!(matches!(H0Basis::compute(&pres, 3), Err(Error::Truncation(2, 3))));
    }
}
