use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::torsion::{torsion_points, TorsionPoint};

/// Index of a free generator: 0 is `a`, 1 is `b`, 1 + k is `b_P` for the k-th
/// nonzero point of Γ_N.
pub type Gen = u16;

pub const GEN_A: Gen = 0;
pub const GEN_B: Gen = 1;

#[derive(Debug, PartialEq, Eq)]
pub struct Alphabet {
    level: u32,
    points: Vec<TorsionPoint>,
    index: HashMap<TorsionPoint, usize>,
}

impl Alphabet {
    pub fn new(level: u32) -> Result<Arc<Self>> {
        if level == 0 {
            return Err(Error::Invalid("level must be positive".into()));
        }
        let points = torsion_points(level);
        let index = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Ok(Arc::new(Self { level, points, index }))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Γ_N with the origin first.
    pub fn points(&self) -> &[TorsionPoint] {
        &self.points
    }

    pub fn num_gens(&self) -> usize {
        1 + self.points.len()
    }

    pub fn point_index(&self, p: &TorsionPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn check_point(&self, p: &TorsionPoint) -> Result<usize> {
        self.point_index(p).ok_or_else(|| Error::NotTorsion(p.to_string(), self.level))
    }

    /// Generator `b_P` for P ≠ O; `None` for the origin.
    pub fn gen_of_point(&self, p: &TorsionPoint) -> Option<Gen> {
        match self.point_index(p) {
            Some(0) | None => None,
            Some(k) => Some(1 + k as Gen),
        }
    }

    pub fn point_of_gen(&self, g: Gen) -> Option<TorsionPoint> {
        if g >= 2 {
            self.points.get(g as usize - 1).copied()
        } else {
            None
        }
    }

    pub fn symbol(&self, g: Gen) -> String {
        match g {
            GEN_A => "a".into(),
            GEN_B => "b".into(),
            _ => format!("bP{}", self.point_of_gen(g).expect("generator in range")),
        }
    }

    pub fn parse_symbol(&self, s: &str) -> Result<Gen> {
        match s {
            "a" => Ok(GEN_A),
            "b" => Ok(GEN_B),
            _ => {
                let rest = s.strip_prefix("bP").ok_or_else(|| Error::Parse(format!("generator `{s}`")))?;
                let p = TorsionPoint::parse(rest)?;
                self.gen_of_point(&p).ok_or_else(|| Error::Parse(format!("generator `{s}`")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_count() {
        for n in 1..=4 {
            let a = Alphabet::new(n).unwrap();
            assert_eq!(a.num_gens(), 2 + (n * n) as usize - 1);
        }
    }

    #[test]
    fn symbols_round_trip() {
        let a = Alphabet::new(2).unwrap();
        for g in 0..a.num_gens() as Gen {
            assert_eq!(a.parse_symbol(&a.symbol(g)).unwrap(), g);
        }
        assert_eq!(a.symbol(2), "bP(0,1/2)");
    }
}
