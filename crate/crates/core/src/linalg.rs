//! Dense matrices over a residue tower, with exact rank and linear solving.
//!
//! Elimination pivots on the first nonzero entry in column order. A pivot
//! that cannot be inverted surfaces the tower's "ideal not maximal" error.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use crate::tower::{ResidueTower, TowerElem};

#[derive(Clone, PartialEq)]
pub struct FieldMatrix<F: Field> {
    tower: Arc<ResidueTower<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<TowerElem<F>>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn zeros(tower: &Arc<ResidueTower<F>>, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            tower: Arc::clone(tower),
            rows,
            cols,
            entries: vec![tower.zero(); rows * cols],
        }
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(
        tower: &Arc<ResidueTower<F>>,
        cols: usize,
        rows: Vec<Vec<TowerElem<F>>>,
    ) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if let Some(e) = row
                .iter()
                .find(|e| !Arc::ptr_eq(e.tower(), tower) && **e.tower() != **tower)
            {
                return Err(Error::InvalidInput(format!(
                    "entry {e} of row {i} belongs to a different residue field"
                )));
            }
            entries.extend(row);
        }
        Ok(FieldMatrix {
            tower: Arc::clone(tower),
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn tower(&self) -> &Arc<ResidueTower<F>> {
        &self.tower
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TowerElem<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TowerElem<F>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[TowerElem<F>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<TowerElem<F>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = FieldMatrix::zeros(&self.tower, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FieldMatrix::zeros(&self.tower, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.tower.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[TowerElem<F>]) -> Result<Vec<TowerElem<F>>> {
        if v.len() != self.cols {
            return Err(Error::InvalidInput(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.tower.zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    /// The matrix with `column` appended on the right.
    pub fn augment(&self, column: &[TowerElem<F>]) -> Result<Self> {
        if column.len() != self.rows {
            return Err(Error::InvalidInput(format!(
                "column of length {} for a matrix with {} rows",
                column.len(),
                self.rows
            )));
        }
        let rows = self
            .to_rows()
            .into_iter()
            .zip(column)
            .map(|(mut r, c)| {
                r.push(c.clone());
                r
            })
            .collect();
        FieldMatrix::from_rows(&self.tower, self.cols + 1, rows)
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Result<Vec<usize>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.entries.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv()?;
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j).sub(&factor.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(pivots)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.clone().rref()?.len())
    }
}

impl<F: Field> fmt::Debug for FieldMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        write!(f, "FieldMatrix{rows:?}")
    }
}

/// Rank of a matrix over its residue field.
pub fn rank<F: Field>(m: &FieldMatrix<F>) -> Result<usize> {
    m.rank()
}

/// Solves `A·v = b`. Returns a witness `v` when the system is consistent,
/// re-verified by multiplication; free variables are set to zero.
pub fn solve<F: Field>(
    a: &FieldMatrix<F>,
    b: &[TowerElem<F>],
) -> Result<Option<Vec<TowerElem<F>>>> {
    let mut aug = a.augment(b)?;
    let pivots = aug.rref()?;
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut v = vec![a.tower.zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = aug.get(r, a.cols).clone();
    }
    if a.mul_vec(&v)? != b {
        return Err(Error::InternalConsistency(
            "linear solve produced a witness that does not satisfy the system".into(),
        ));
    }
    Ok(Some(v))
}

/// Whether `A·v = b` has a solution, i.e. `rank(A) = rank(A|b)`.
pub fn solvable<F: Field>(a: &FieldMatrix<F>, b: &[TowerElem<F>]) -> Result<bool> {
    Ok(solve(a, b)?.is_some())
}
