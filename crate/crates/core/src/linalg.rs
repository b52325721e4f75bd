//! Exact rank over ℚ by incremental sparse row reduction.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A sparse row: column index → nonzero entry.
pub type SparseRow = BTreeMap<usize, BigRational>;

/// Row-echelon basis of the span of the rows inserted so far. Each stored
/// row has leading entry 1 at its pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the basis; returns true if it was independent
    /// (and has been added).
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&col, lead)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&col) {
                Some(p) => {
                    let factor = lead.clone();
                    for (c, v) in p {
                        let entry = row.entry(*c).or_insert_with(BigRational::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = lead.recip();
                    if !inv.is_one() {
                        for v in row.values_mut() {
                            *v *= &inv;
                        }
                    }
                    self.pivots.insert(col, row);
                    return true;
                }
            }
        }
    }
}

/// Rank of the matrix whose rows are given.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
