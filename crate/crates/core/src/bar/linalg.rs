//! Sparse exact row reduction over ℚ.
//!
//! Pivots are taken in the leftmost available column, so the caller controls which
//! columns end up free through the column order.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseRow = BTreeMap<usize, BigRational>;

fn axpy(row: &mut SparseRow, other: &SparseRow, factor: &BigRational) {
    for (&c, v) in other {
        let entry = row.entry(c).or_insert_with(BigRational::zero);
        *entry += v * factor;
        if entry.is_zero() {
            row.remove(&c);
        }
    }
}

/// Row echelon form built incrementally; rows are keyed by pivot column and have a unit pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        loop {
            let Some((&lead, v)) = row.iter().next() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(piv) => {
                    let f = -v.clone();
                    axpy(&mut row, piv, &f);
                }
                None => {
                    let inv = BigRational::one() / v;
                    for x in row.values_mut() {
                        *x *= &inv;
                    }
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Clears every pivot column above its pivot (reduced echelon form).
    pub fn back_substitute(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let prow = self.rows[&p].clone();
            for (_, row) in self.rows.range_mut(..p) {
                if let Some(f) = row.get(&p).cloned() {
                    axpy(row, &prow, &-f);
                }
            }
        }
    }

    /// Kernel basis of the reduced matrix, one vector per free column below `ncols`:
    /// e_f − Σ_r R[r,f] e_{pivot(r)}.
    pub fn kernel(&self, ncols: usize) -> Vec<(usize, SparseRow)> {
        let mut by_free: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for c in 0..ncols {
            if !self.rows.contains_key(&c) {
                by_free.insert(c, SparseRow::from([(c, BigRational::one())]));
            }
        }
        for (&p, row) in &self.rows {
            for (c, v) in row {
                if *c != p {
                    if let Some(vec) = by_free.get_mut(c) {
                        vec.insert(p, -v.clone());
                    }
                }
            }
        }
        by_free.into_iter().collect()
    }
}

/// Kernel of the matrix given by its columns.
pub fn kernel_of_columns(columns: &[SparseRow]) -> Vec<(usize, SparseRow)> {
    let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (&i, v) in col {
            rows.entry(i).or_default().insert(j, v.clone());
        }
    }
    let mut ech = Echelon::new();
    for (_, r) in rows {
        ech.insert(r);
    }
    ech.back_substitute();
    ech.kernel(columns.len())
}
