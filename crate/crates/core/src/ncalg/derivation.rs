use std::sync::Arc;

use super::alphabet::{Alphabet, Gen};
use super::coeff::Coeff;
use super::element::NCElement;
use crate::error::{Error, Result};

/// Derivation of the free algebra, fixed by its values on generators.
#[derive(Clone, Debug)]
pub struct NCDerivation<R: Coeff> {
    alphabet: Arc<Alphabet>,
    images: Vec<NCElement<R>>,
}

impl<R: Coeff> NCDerivation<R> {
    /// Zero derivation.
    pub fn new(alphabet: &Arc<Alphabet>, max_len: usize) -> Self {
        let images = (0..alphabet.num_gens()).map(|_| NCElement::zero(alphabet, max_len)).collect();
        Self { alphabet: alphabet.clone(), images }
    }

    pub fn set_image(&mut self, g: Gen, image: NCElement<R>) -> Result<()> {
        if image.alphabet().level() != self.alphabet.level() {
            return Err(Error::AlphabetMismatch(self.alphabet.level(), image.alphabet().level()));
        }
        let slot = self
            .images
            .get_mut(g as usize)
            .ok_or_else(|| Error::Invalid(format!("generator index {g} out of range")))?;
        *slot = image;
        Ok(())
    }

    pub fn image(&self, g: Gen) -> &NCElement<R> {
        &self.images[g as usize]
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Leibniz rule: D(x1…xn) = Σ_i x1…x_{i-1} D(x_i) x_{i+1}…xn.
    pub fn apply(&self, x: &NCElement<R>) -> Result<NCElement<R>> {
        if x.alphabet().level() != self.alphabet.level() {
            return Err(Error::AlphabetMismatch(self.alphabet.level(), x.alphabet().level()));
        }
        let bound = x.max_len();
        let mut out = NCElement::zero(&self.alphabet, bound);
        for (w, c) in x.terms() {
            for (i, g) in w.iter().enumerate() {
                for (v, cv) in self.images[*g as usize].terms() {
                    if w.len() - 1 + v.len() > bound {
                        continue;
                    }
                    let mut word = Vec::with_capacity(w.len() - 1 + v.len());
                    word.extend_from_slice(&w[..i]);
                    word.extend_from_slice(v);
                    word.extend_from_slice(&w[i + 1..]);
                    out.add_term(word, c.clone() * cv.clone());
                }
            }
        }
        Ok(out)
    }
}
