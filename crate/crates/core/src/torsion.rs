//! N-torsion points of the curve, written as α + βτ with α, β ∈ N⁻¹ℤ/ℤ.

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorsionPoint {
    pub alpha: Rational64,
    pub beta: Rational64,
}

fn reduce_unit(x: Rational64) -> Rational64 {
    let f = x - x.floor();
    if f >= Rational64::one() {
        f - Rational64::one()
    } else {
        f
    }
}

impl TorsionPoint {
    pub fn new(alpha: Rational64, beta: Rational64) -> Self {
        Self { alpha: reduce_unit(alpha), beta: reduce_unit(beta) }
    }

    pub fn origin() -> Self {
        Self { alpha: Rational64::zero(), beta: Rational64::zero() }
    }

    /// The point (i/N, j/N).
    pub fn from_indices(i: i64, j: i64, level: u32) -> Self {
        let n = level as i64;
        Self::new(Rational64::new(i, n), Rational64::new(j, n))
    }

    pub fn is_origin(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.alpha + other.alpha, self.beta + other.beta)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.alpha - other.alpha, self.beta - other.beta)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.alpha, -self.beta)
    }

    /// True when N·P = O.
    pub fn is_torsion_of(&self, level: u32) -> bool {
        let n = level as i64;
        (self.alpha * n).is_integer() && (self.beta * n).is_integer()
    }

    pub fn alpha_f64(&self) -> f64 {
        *self.alpha.numer() as f64 / *self.alpha.denom() as f64
    }

    pub fn beta_f64(&self) -> f64 {
        *self.beta.numer() as f64 / *self.beta.denom() as f64
    }

    /// Parses `O`, `(1/2,0)` or `1/2,0`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("o") {
            return Ok(Self::origin());
        }
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("torsion point `{s}`")));
        }
        let a = parse_rational(parts[0])?;
        let b = parse_rational(parts[1])?;
        Ok(Self::new(a, b))
    }
}

fn parse_rational(s: &str) -> Result<Rational64> {
    let t = s.trim();
    let bad = || Error::Parse(format!("rational `{s}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational64::new(n, d))
    } else {
        Ok(Rational64::from_integer(t.parse().map_err(|_| bad())?))
    }
}

impl fmt::Display for TorsionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_origin() {
            return write!(f, "O");
        }
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

/// All points of Γ_N, origin first, then by (i, j).
pub fn torsion_points(level: u32) -> Vec<TorsionPoint> {
    let n = level as i64;
    let mut out = Vec::with_capacity((n * n) as usize);
    for i in 0..n {
        for j in 0..n {
            out.push(TorsionPoint::from_indices(i, j, level));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_group_law() {
        let p = TorsionPoint::from_indices(1, 0, 2);
        assert_eq!(p.add(&p), TorsionPoint::origin());
        assert_eq!(p.neg(), p);
        let q = TorsionPoint::from_indices(1, 2, 3);
        assert_eq!(q.neg(), TorsionPoint::from_indices(2, 1, 3));
        assert!(q.is_torsion_of(3));
        assert!(!q.is_torsion_of(2));
    }

    #[test]
    fn enumeration_size_and_order() {
        let pts = torsion_points(3);
        assert_eq!(pts.len(), 9);
        assert!(pts[0].is_origin());
    }

    #[test]
    fn parse_round_trip() {
        let p = TorsionPoint::parse("(1/2,0)").unwrap();
        assert_eq!(p.to_string(), "(1/2,0)");
        assert!(TorsionPoint::parse("O").unwrap().is_origin());
        assert_eq!(TorsionPoint::parse("3/2,-1/2").unwrap(), TorsionPoint::from_indices(1, 1, 2));
    }
}
