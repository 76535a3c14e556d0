//! The letter projection ρ: H → T^c(H^1(𝒜)) and the duality with the free algebra.

use std::sync::Arc;

use super::element::{BarElement, BarWord};
use super::letter::{Kron, Mono, Presentation};
use crate::error::{Error, Result};
use crate::ncalg::{Alphabet, Coeff, Gen, Word, GEN_A, GEN_B};

/// ρ in coordinates: the part of h on pure words, ω^(1)_P (P ≠ O) standing for its class η_P.
pub fn rho<R: Coeff>(h: &BarElement<R>) -> BarElement<R> {
    let pres = h.presentation();
    let mut out = BarElement::zero(pres);
    for (w, c) in h.terms() {
        if w.iter().all(|m| pres.is_pure(m)) {
            out.add_term(w.clone(), c.clone());
        }
    }
    out
}

/// ρ with η_P written out as ω^(1)_P − ω^(1)_O in letters of 𝒜.
pub fn rho_expanded<R: Coeff>(h: &BarElement<R>) -> BarElement<R> {
    rho(h).map_letters(|m| match m.x {
        Some(k) if k.n == 1 && k.point != 0 => vec![(*m, R::one()), (Mono::kron(Kron::new(0, 1)), -R::one())],
        _ => vec![(*m, R::one())],
    })
}

/// Generator dual to a pure letter: ν ↔ a, ω^(0) ↔ b, η_P ↔ b_P.
pub fn dual_gen(pres: &Presentation, alphabet: &Alphabet, m: &Mono) -> Result<Gen> {
    if !pres.is_pure(m) {
        return Err(Error::Invalid("letter has no dual generator".into()));
    }
    match m.x {
        None => Ok(GEN_A),
        Some(k) if k.n == 0 => Ok(GEN_B),
        Some(k) => alphabet
            .gen_of_point(&pres.points()[k.point as usize])
            .ok_or_else(|| Error::Invalid("origin has no b_P".into())),
    }
}

/// The monomial paired with a pure word: [x_1|…|x_k] ↦ g(x_k)…g(x_1).
pub fn dual_monomial(pres: &Presentation, alphabet: &Alphabet, w: &[Mono]) -> Result<Word> {
    w.iter().rev().map(|m| dual_gen(pres, alphabet, m)).collect()
}

/// Inverse of [`dual_monomial`].
pub fn word_of_monomial(pres: &Arc<Presentation>, alphabet: &Alphabet, word: &[Gen]) -> Result<BarWord> {
    word.iter()
        .rev()
        .map(|&g| match g {
            GEN_A => Ok(Mono::NU),
            GEN_B => Ok(Mono::omega0()),
            _ => {
                let p = alphabet.point_of_gen(g).ok_or_else(|| Error::Invalid(format!("generator {g}")))?;
                Ok(Mono::kron(Kron::new(pres.point_index(&p)?, 1)))
            }
        })
        .collect()
}
