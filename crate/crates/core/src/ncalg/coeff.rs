//! Coefficient rings for non-commutative series.
//!
//! Three instances: exact rationals, complex floats, and polynomials in opaque
//! Eisenstein symbols over ℚ (used when the analytic constants must stay formal).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::ops::{Add, Mul, Neg, Sub};

use crate::torsion::TorsionPoint;

pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    fn from_ratio(r: &BigRational) -> Self;
    /// Size used by the comparison norm (max modulus over coefficients).
    fn modulus(&self) -> f64;
}

impl Coeff for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }
    fn modulus(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Coeff for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Opaque analytic constant: A_{m,Q}(τ), the x^m coefficient of g_{-Q}(0,0,x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EisSym {
    pub m: u16,
    pub q: TorsionPoint,
}

impl fmt::Display for EisSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A[{},{}]", self.m, self.q)
    }
}

type Monomial = Vec<(EisSym, u32)>;

/// Polynomial over ℚ in Eisenstein symbols.
#[derive(Clone, PartialEq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl SymPoly {
    pub fn constant(r: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Vec::new(), r);
        }
        Self { terms }
    }

    /// The symbol A_{m,Q} in canonical form: A_{m,-Q} = (-1)^m A_{m,Q}, so the
    /// representative of {Q, -Q} is the smaller one and odd m vanishes on 2-torsion.
    pub fn eisenstein(m: u16, q: TorsionPoint) -> Self {
        let nq = q.neg();
        let (rep, sign) = if nq < q { (nq, if m % 2 == 1 { -1 } else { 1 }) } else { (q, 1) };
        if rep == rep.neg() && m % 2 == 1 {
            return Self::zero();
        }
        let mut terms = BTreeMap::new();
        terms.insert(vec![(EisSym { m, q: rep }, 1)], BigRational::from_integer(BigInt::from(sign)));
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn constant_part(&self) -> BigRational {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Substitutes numeric values for every symbol.
    pub fn evaluate(&self, value: &dyn Fn(&EisSym) -> Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for (mono, c) in &self.terms {
            let mut t = Complex64::from_ratio(c);
            for (s, e) in mono {
                t *= value(s).powu(*e);
            }
            acc += t;
        }
        acc
    }

    fn insert(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<EisSym, u32> = BTreeMap::new();
    for (s, e) in a.iter().chain(b.iter()) {
        *out.entry(*s).or_insert(0) += e;
    }
    out.into_iter().collect()
}

impl Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (s, e) in mono {
                if *e == 1 {
                    write!(f, "*{s}")?;
                } else {
                    write!(f, "*{s}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Zero for SymPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SymPoly {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl Add for SymPoly {
    type Output = SymPoly;
    fn add(mut self, rhs: SymPoly) -> SymPoly {
        for (m, c) in rhs.terms {
            self.insert(m, c);
        }
        self
    }
}

impl Neg for SymPoly {
    type Output = SymPoly;
    fn neg(mut self) -> SymPoly {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl Sub for SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: SymPoly) -> SymPoly {
        self + (-rhs)
    }
}

impl Mul for SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Coeff for SymPoly {
    fn from_i64(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }
    fn from_ratio(r: &BigRational) -> Self {
        Self::constant(r.clone())
    }
    fn modulus(&self) -> f64 {
        self.terms.values().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_symbol_symmetry() {
        let q = TorsionPoint::from_indices(1, 2, 3);
        let a = SymPoly::eisenstein(3, q);
        let b = SymPoly::eisenstein(3, q.neg());
        assert_eq!(a, -b);
        let c = SymPoly::eisenstein(2, q);
        assert_eq!(c, SymPoly::eisenstein(2, q.neg()));
        let half = TorsionPoint::from_indices(1, 0, 2);
        assert!(SymPoly::eisenstein(1, half).is_zero());
        assert!(SymPoly::eisenstein(5, TorsionPoint::origin()).is_zero());
    }

    #[test]
    fn ring_laws_small() {
        let x = SymPoly::eisenstein(2, TorsionPoint::origin());
        let y = SymPoly::from_i64(3);
        let p = (x.clone() + y.clone()) * (x.clone() - y.clone());
        let q = x.clone() * x.clone() - SymPoly::from_i64(9);
        assert_eq!(p, q);
        assert!((x.clone() - x).is_zero());
    }
}
