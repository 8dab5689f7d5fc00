//! Minimal exact linear algebra over the rationals: an incremental echelon
//! form for rank computation and span membership with coordinates.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::rational::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

fn leading(v: &SparseVec) -> Option<usize> {
    v.keys().next().copied()
}

fn axpy(target: &mut SparseVec, coeff: &Rational, source: &SparseVec) {
    if coeff.is_zero() {
        return;
    }
    for (&i, c) in source {
        let entry = target.entry(i).or_insert_with(Rational::zero);
        *entry += c * coeff;
        if entry.is_zero() {
            target.remove(&i);
        }
    }
}

/// Incremental row echelon form. Inserted vectors are reduced against the
/// existing rows; independent residuals become new rows (normalized to a
/// unit leading coefficient). Optionally tracks, for each row, its expansion
/// over the inserted vectors, which turns span membership into coordinates.
pub struct Echelon {
    rows: Vec<(usize, SparseVec)>,
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(track_combos: bool) -> Self {
        Echelon {
            rows: Vec::new(),
            combos: track_combos.then(Vec::new),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduce `v` against the rows; returns the residual and the multiplier
    /// used on each row.
    fn reduce(&self, mut v: SparseVec) -> (SparseVec, Vec<Rational>) {
        let mut multipliers = vec![Rational::zero(); self.rows.len()];
        while let Some(lead) = leading(&v) {
            let Some(pos) = self.rows.iter().position(|(p, _)| *p == lead) else {
                break;
            };
            let coeff = v[&lead].clone();
            axpy(&mut v, &(-coeff.clone()), &self.rows[pos].1);
            multipliers[pos] += coeff;
        }
        (v, multipliers)
    }

    /// Insert a vector; returns true if it was independent of the rows so
    /// far. With combo tracking enabled, dependent inserts are rejected with
    /// a panic, because coordinates would no longer be unique.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let col = self.inserted;
        self.inserted += 1;
        let (mut residual, multipliers) = self.reduce(v);
        let Some(lead) = leading(&residual) else {
            assert!(
                self.combos.is_none(),
                "dependent column {col} inserted into a coordinate basis"
            );
            return false;
        };
        let scale = residual[&lead].clone();
        for c in residual.values_mut() {
            *c /= &scale;
        }
        if let Some(combos) = &mut self.combos {
            let mut combo: SparseVec = BTreeMap::new();
            combo.insert(col, Rational::one());
            for (pos, m) in multipliers.iter().enumerate() {
                axpy(&mut combo, &-m.clone(), &combos[pos]);
            }
            for c in combo.values_mut() {
                *c /= &scale;
            }
            combos.push(combo);
        }
        self.rows.push((lead, residual));
        true
    }

    /// Solve for coordinates of `v` over the inserted vectors. Returns
    /// `Err(residual)` with the reduced remainder when `v` is outside the
    /// span.
    pub fn solve(&self, v: SparseVec) -> Result<SparseVec, SparseVec> {
        let combos = self
            .combos
            .as_ref()
            .expect("solve requires combo tracking");
        let (residual, multipliers) = self.reduce(v);
        if !residual.is_empty() {
            return Err(residual);
        }
        let mut coords: SparseVec = BTreeMap::new();
        for (pos, m) in multipliers.iter().enumerate() {
            axpy(&mut coords, m, &combos[pos]);
        }
        Ok(coords)
    }
}

/// Rank of a list of sparse columns.
pub fn rank_of(columns: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::new(false);
    for c in columns {
        ech.insert(c);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn vec_of(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(i, c)| (i, rat_int(c))).collect()
    }

    #[test]
    fn rank_examples() {
        let cols = vec![
            vec_of(&[(0, 1), (1, 2)]),
            vec_of(&[(0, 2), (1, 4)]),
            vec_of(&[(2, 1)]),
        ];
        assert_eq!(rank_of(cols), 2);
        assert_eq!(rank_of(vec![vec_of(&[])]), 0);
    }

    #[test]
    fn solve_gives_exact_coordinates() {
        let mut ech = Echelon::new(true);
        assert!(ech.insert(vec_of(&[(0, 1), (1, 1)])));
        assert!(ech.insert(vec_of(&[(1, 1)])));
        // target = 3*(e0+e1) - 2*e1
        let coords = ech.solve(vec_of(&[(0, 3), (1, 1)])).unwrap();
        assert_eq!(coords, vec_of(&[(0, 3), (1, -2)]));
        let err = ech.solve(vec_of(&[(2, 1)])).unwrap_err();
        assert_eq!(err, vec_of(&[(2, 1)]));
    }
}
