//! The derivation part Φ_N = −(dτ/2πi) ⊗ D of the connection, built on the free
//! generators a, b, b_P.

use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::modforms::{eisenstein_a_jet, Precision};
use crate::ncalg::{c_gen, Alphabet, Coeff, NCDerivation, NCElement, SymPoly, GEN_A, GEN_B};
use crate::torsion::TorsionPoint;

/// ad_a^n c_P for n ≤ max_len, for every P, in alphabet order.
pub fn ad_tables<R: Coeff>(alphabet: &Arc<Alphabet>, max_len: usize) -> Result<Vec<Vec<NCElement<R>>>> {
    alphabet
        .points()
        .iter()
        .map(|p| {
            let mut row = vec![c_gen::<R>(alphabet, max_len, p)?];
            for _ in 0..max_len {
                let next = NCElement::ad_pow(GEN_A, 1, row.last().expect("nonempty"));
                row.push(next);
            }
            Ok(row)
        })
        .collect()
}

fn signed<R: Coeff>(x: &NCElement<R>, negate: bool) -> NCElement<R> {
    if negate {
        -x
    } else {
        x.clone()
    }
}

/// D with D(a) = b and the A_{m,Q}-weighted images of b and b_P; `a_coeff(m, Q)` supplies A_{m,Q}.
pub fn build_phi<R: Coeff>(
    alphabet: &Arc<Alphabet>,
    max_len: usize,
    a_coeff: &dyn Fn(u16, &TorsionPoint) -> R,
) -> Result<NCDerivation<R>> {
    let pts = alphabet.points();
    let ads = ad_tables::<R>(alphabet, max_len)?;
    let idx = |p: &TorsionPoint| alphabet.point_index(p).expect("torsion point");
    let half = R::from_ratio(&crate::ncalg::rat(1, 2));
    let mut d = NCDerivation::new(alphabet, max_len);
    d.set_image(GEN_A, NCElement::gen(alphabet, max_len, GEN_B))?;

    // D(b) = ½ Σ_Q Σ_m A_{m,Q} Σ_{i+j=m−1} Σ_P [(−ad)^i c_P, ad^j c_{P−Q}]
    let mut db = NCElement::zero(alphabet, max_len);
    for q in pts {
        for m in 1..max_len {
            let coeff = a_coeff(m as u16, q);
            if coeff.is_zero() {
                continue;
            }
            let mut inner = NCElement::zero(alphabet, max_len);
            for i in 0..m {
                let j = m - 1 - i;
                for p in pts {
                    let left = signed(&ads[idx(p)][i], i % 2 == 1);
                    let right = &ads[idx(&p.sub(q))][j];
                    inner = &inner + &left.commutator(right);
                }
            }
            db.add_scaled(&inner, &(coeff * half.clone()));
        }
    }
    d.set_image(GEN_B, db)?;

    // D(b_P) = ½ Σ_Q Σ_m A_{m,Q} [c_P, ad^m c_{P−Q} + (−ad)^m c_{P+Q}]
    for p in pts.iter().skip(1) {
        let image = c_image(alphabet, max_len, &ads, p, a_coeff)?;
        d.set_image(alphabet.gen_of_point(p).expect("nonzero point"), image)?;
    }
    Ok(d)
}

/// The displayed image of c_P under D (any P, including O).
pub fn c_image<R: Coeff>(
    alphabet: &Arc<Alphabet>,
    max_len: usize,
    ads: &[Vec<NCElement<R>>],
    p: &TorsionPoint,
    a_coeff: &dyn Fn(u16, &TorsionPoint) -> R,
) -> Result<NCElement<R>> {
    let idx = |x: &TorsionPoint| alphabet.point_index(x).expect("torsion point");
    let half = R::from_ratio(&crate::ncalg::rat(1, 2));
    let cp = &ads[idx(p)][0];
    let mut out = NCElement::zero(alphabet, max_len);
    for q in alphabet.points() {
        for m in 0..max_len.saturating_sub(1) {
            let coeff = a_coeff(m as u16, q);
            if coeff.is_zero() {
                continue;
            }
            let sum = &ads[idx(&p.sub(q))][m] + &signed(&ads[idx(&p.add(q))][m], m % 2 == 1);
            out.add_scaled(&cp.commutator(&sum), &(coeff * half.clone()));
        }
    }
    Ok(out)
}

/// D([a,b]) − Σ_{P≠O} D(b_P) minus the displayed image of c_O; zero when the
/// ∂/∂c_O part is consistent with the defining relation.
pub fn c_origin_defect<R: Coeff>(
    alphabet: &Arc<Alphabet>,
    max_len: usize,
    d: &NCDerivation<R>,
    a_coeff: &dyn Fn(u16, &TorsionPoint) -> R,
) -> Result<NCElement<R>> {
    let ads = ad_tables::<R>(alphabet, max_len)?;
    let c_o = &ads[0][0];
    let mut lhs = d.apply(c_o)?;
    let want = c_image(alphabet, max_len, &ads, &TorsionPoint::origin(), a_coeff)?;
    lhs = &lhs - &want;
    Ok(lhs)
}

/// Symbolic A_{m,Q}.
pub fn symbolic_a(m: u16, q: &TorsionPoint) -> SymPoly {
    SymPoly::eisenstein(m, *q)
}

/// Numeric A_{m,Q}(τ) for all Q ∈ Γ_N and m ≤ deg.
#[derive(Clone, Debug)]
pub struct ATable {
    values: HashMap<(u16, TorsionPoint), Complex64>,
}

impl ATable {
    pub fn new(alphabet: &Alphabet, tau: Complex64, deg: usize, prec: &Precision) -> Result<Self> {
        let mut values = HashMap::new();
        for q in alphabet.points() {
            let jet = eisenstein_a_jet(q, tau, deg, prec)?;
            for m in 0..=deg {
                values.insert((m as u16, *q), jet.coeff(m as i32));
            }
        }
        Ok(Self { values })
    }

    pub fn get(&self, m: u16, q: &TorsionPoint) -> Complex64 {
        self.values.get(&(m, *q)).copied().unwrap_or_default()
    }
}

pub fn numeric_phi(
    alphabet: &Arc<Alphabet>,
    max_len: usize,
    tau: Complex64,
    prec: &Precision,
) -> Result<NCDerivation<Complex64>> {
    let table = ATable::new(alphabet, tau, max_len, prec)?;
    build_phi(alphabet, max_len, &|m, q| table.get(m, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::eisenstein_g;
    use crate::ncalg::{rat, EisSym};
    use num_rational::BigRational;

    type S = NCElement<SymPoly>;

    #[test]
    fn a_maps_to_b() {
        let al = Alphabet::new(1).unwrap();
        let d = build_phi(&al, 3, &symbolic_a).unwrap();
        assert_eq!(d.image(GEN_A), &S::gen(&al, 3, GEN_B));
    }

    #[test]
    fn level_one_b_image_is_eisenstein_sum() {
        // weight-4 part: (3G_4/2) Σ_{j+k=3, j,k>0} [(−ad)^j b, ad^k b]; A_{2,O} = −3G_4.
        let al = Alphabet::new(1).unwrap();
        let d = build_phi(&al, 5, &symbolic_a).unwrap();
        let b = S::gen(&al, 5, GEN_B);
        let mut want = S::zero(&al, 5);
        for j in 1..3 {
            let k = 3 - j;
            let left = signed(&S::ad_pow(GEN_A, j, &b), j % 2 == 1);
            want = &want + &left.commutator(&S::ad_pow(GEN_A, k, &b));
        }
        let a2 = SymPoly::eisenstein(2, TorsionPoint::origin());
        let want = want.scale(&(a2 * SymPoly::from_ratio(&rat(-1, 2))));
        assert_eq!(d.image(GEN_B), &want);
        // nothing below length 5
        assert!(build_phi(&al, 4, &symbolic_a).unwrap().image(GEN_B).is_zero());
        let _ = EisSym { m: 2, q: TorsionPoint::origin() };
    }

    #[test]
    fn c_origin_image_is_consistent() {
        for level in 1..=3 {
            let al = Alphabet::new(level).unwrap();
            let len = if level == 3 { 4 } else { 5 };
            let d = build_phi(&al, len, &symbolic_a).unwrap();
            let defect = c_origin_defect(&al, len, &d, &symbolic_a).unwrap();
            assert!(defect.is_zero(), "level {level}: {defect:?}");
        }
    }

    #[test]
    fn level_two_index_bookkeeping_matches_brute_force() {
        // Brute force over all (P, Q) with explicit coordinates instead of group operations.
        let al = Alphabet::new(2).unwrap();
        let len = 4;
        let d = build_phi(&al, len, &symbolic_a).unwrap();
        let pts = al.points().to_vec();
        let find = |a: i64, b: i64| {
            pts.iter().position(|p| p == &TorsionPoint::from_indices(a.rem_euclid(2), b.rem_euclid(2), 2)).unwrap()
        };
        let coords: Vec<(i64, i64)> = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).collect();
        let c = |k: usize| c_gen::<SymPoly>(&al, len, &pts[k]).unwrap();
        let half = SymPoly::from_ratio(&rat(1, 2));
        for (pi, &(p0, p1)) in coords.iter().enumerate().skip(1) {
            let mut want = S::zero(&al, len);
            for &(q0, q1) in &coords {
                let qk = find(q0, q1);
                for m in 0..len - 1 {
                    let am = SymPoly::eisenstein(m as u16, pts[qk]) * half.clone();
                    let minus = S::ad_pow(GEN_A, m, &c(find(p0 - q0, p1 - q1)));
                    let plus = S::ad_pow(GEN_A, m, &c(find(p0 + q0, p1 + q1)));
                    let plus = if m % 2 == 1 { -plus } else { plus };
                    want.add_scaled(&c(find(p0, p1)).commutator(&(&minus + &plus)), &am);
                }
            }
            let g = al.gen_of_point(&pts[find(p0, p1)]).unwrap();
            assert_eq!(d.image(g), &want, "P index {pi}");
        }
    }

    #[test]
    fn numeric_matches_symbolic_evaluation() {
        let al = Alphabet::new(2).unwrap();
        let tau = Complex64::new(0.1, 1.1);
        let prec = Precision::default();
        let num = numeric_phi(&al, 4, tau, &prec).unwrap();
        let sym = build_phi(&al, 4, &symbolic_a).unwrap();
        let table = ATable::new(&al, tau, 4, &prec).unwrap();
        for g in 0..al.num_gens() as u16 {
            let ev = sym.image(g).map_coeffs(|s| s.evaluate(&|e: &EisSym| table.get(e.m, &e.q)));
            assert!((&ev - num.image(g)).max_norm() < 1e-12);
        }
        let g4 = eisenstein_g(4, tau, &prec).unwrap();
        assert!((table.get(2, &TorsionPoint::origin()) + g4 * 3.0).norm() < 1e-10);
        let _: BigRational = rat(1, 1);
    }
}
