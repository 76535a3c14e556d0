//! The dual of δ_τ on the free algebra, to be compared with the derivation D of the connection.

use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;

use super::element::BarElement;
use super::h0::H0Basis;
use super::letter::{Kron, Mono, MonoDisplay};
use super::projector::{dual_monomial, rho};
use super::relative::gauss_manin_tau;
use crate::error::Result;
use crate::kzb::{build_phi, symbolic_a};
use crate::ncalg::{Alphabet, Coeff, EisSym, NCDerivation, NCElement, SymPoly, GEN_A, GEN_B};

fn sym(c: &num_rational::BigRational) -> SymPoly {
    SymPoly::from_ratio(c)
}

/// Letter dual to generator g: a ↔ ν, b ↔ ω^(0), b_P ↔ ω^(1)_P.
fn letter_of_gen(h: &H0Basis, alphabet: &Alphabet, g: u16) -> Result<Mono> {
    Ok(match g {
        GEN_A => Mono::NU,
        GEN_B => Mono::omega0(),
        _ => {
            let p = alphabet.point_of_gen(g).expect("generator in range");
            Mono::kron(Kron::new(h.presentation().point_index(&p)?, 1))
        }
    })
}

/// δ_τ(ι(w)) in ρ-coordinates for every pure word w.
pub fn delta_in_coordinates(h: &H0Basis) -> Result<Vec<(Vec<Mono>, BarElement<SymPoly>)>> {
    h.iter().map(|(w, xi)| Ok((w.clone(), rho(&gauss_manin_tau(xi, sym)?)))).collect()
}

/// D^∨(g) = Σ_w ⟨g, δ_τ ι(w)⟩ · (dual monomial of w).
pub fn delta_dual(h: &H0Basis, alphabet: &Arc<Alphabet>) -> Result<NCDerivation<SymPoly>> {
    let len = h.max_len();
    let deltas = delta_in_coordinates(h)?;
    let mut d = NCDerivation::new(alphabet, len);
    for g in 0..alphabet.num_gens() as u16 {
        let x = letter_of_gen(h, alphabet, g)?;
        let mut image = NCElement::zero(alphabet, len);
        for (w, dw) in &deltas {
            let c = dw.coeff(&[x]);
            if !c.is_zero() {
                image.add_term(dual_monomial(h.presentation(), alphabet, w)?, c);
            }
        }
        d.set_image(g, image)?;
    }
    Ok(d)
}

/// Generators on which the dual of δ_τ differs from D (exact, symbolic A_{m,Q}).
pub fn delta_vs_phi_symbolic(h: &H0Basis, alphabet: &Arc<Alphabet>) -> Result<Vec<String>> {
    let dual = delta_dual(h, alphabet)?;
    let phi = build_phi(alphabet, h.max_len(), &symbolic_a)?;
    Ok((0..alphabet.num_gens() as u16).filter(|&g| dual.image(g) != phi.image(g)).map(|g| alphabet.symbol(g)).collect())
}

/// Max-modulus distance between the dual of δ_τ and D after substituting numeric A_{m,Q}.
pub fn delta_vs_phi_numeric(
    h: &H0Basis,
    alphabet: &Arc<Alphabet>,
    a_value: &dyn Fn(&EisSym) -> Complex64,
    reference: &NCDerivation<Complex64>,
) -> Result<f64> {
    let dual = delta_dual(h, alphabet)?;
    let mut worst = 0.0f64;
    for g in 0..alphabet.num_gens() as u16 {
        let ev = dual.image(g).map_coeffs(|s| s.evaluate(a_value));
        worst = worst.max((&ev - reference.image(g)).max_norm());
    }
    Ok(worst)
}

/// Rows (length block, source word, target word, coefficient) of δ_τ in the basis ι.
pub fn delta_table(h: &H0Basis) -> Result<Vec<(usize, String, String, String)>> {
    let pres = h.presentation();
    let show = |w: &[Mono]| w.iter().map(|m| MonoDisplay(pres, m).to_string()).collect::<Vec<_>>().join("|");
    let mut rows = Vec::new();
    for (w, dw) in delta_in_coordinates(h)? {
        for (u, c) in dw.terms() {
            rows.push((w.len(), show(&w), show(u), c.to_string()));
        }
    }
    Ok(rows)
}

pub fn write_delta_csv<W: std::io::Write>(h: &H0Basis, out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["length", "source", "target", "coefficient"])?;
    for (n, s, t, c) in delta_table(h)? {
        wtr.write_record([n.to_string(), s, t, c])?;
    }
    wtr.flush()?;
    Ok(())
}
