//! Exact linear algebra over the integers.
//!
//! Ranks are computed by fraction-free (Bareiss) elimination, which keeps
//! every intermediate entry a minor of the input.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::modular;
use crate::Error;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Builds a matrix from rows of equal length; `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self, Error> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::WidthMismatch {
                got: r.len(),
                expected: cols,
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }
}

/// Fraction-free elimination in place; returns the rank and the sign of
/// the row permutation used.
fn bareiss(rows: &mut [Vec<BigInt>], cols: usize) -> (usize, bool) {
    let n = rows.len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut negated = false;
    for c in 0..cols {
        if rank == n {
            break;
        }
        // largest-magnitude pivot keeps the entries small
        let pivot = (rank..n)
            .filter(|&i| !rows[i][c].is_zero())
            .max_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()).then(j.cmp(&i)));
        let Some(pivot) = pivot else { continue };
        if pivot != rank {
            rows.swap(pivot, rank);
            negated = !negated;
        }
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            let factor = core::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                row[j] = v.div_floor(&prev);
            }
        }
        prev = pivot_row[c].clone();
        rank += 1;
    }
    (rank, negated)
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let mut rows = m.to_rows();
    bareiss(&mut rows, m.cols).0
}

pub fn kernel_dimension(m: &IntMatrix) -> usize {
    m.cols - rank(m)
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::from(1);
    }
    let mut rows = m.to_rows();
    let (rank, negated) = bareiss(&mut rows, n);
    if rank < n {
        return BigInt::zero();
    }
    let det = rows[n - 1][n - 1].clone();
    if negated {
        -det
    } else {
        det
    }
}

/// Rank of `m` reduced modulo the prime `p`; never exceeds the true rank.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| m.row(r).iter().map(|x| modular::residue(x, p)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(pivot) = (rank..m.rows).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(pivot, rank);
        let inv = modular::inv_mod(rows[rank][c], p);
        for i in rank + 1..m.rows {
            let f = modular::mul_mod(rows[i][c], inv, p);
            if f == 0 {
                continue;
            }
            for j in c..m.cols {
                let sub = modular::mul_mod(f, rows[rank][j], p);
                rows[i][j] = (rows[i][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Incrementally grown set of linearly independent integer rows, kept
/// alongside a primitive echelon form of their span.
#[derive(Debug, Clone)]
pub struct RowBasis {
    width: usize,
    accepted: Vec<Vec<BigInt>>,
    /// `(pivot column, primitive row)` sorted by pivot column
    echelon: Vec<(usize, Vec<BigInt>)>,
}

impl RowBasis {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            accepted: Vec::new(),
            echelon: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.accepted.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.accepted
    }

    /// Accepts `row` iff it is independent of the rows accepted so far.
    pub fn try_add_row(&mut self, row: &[BigInt]) -> Result<bool, Error> {
        if row.len() != self.width {
            return Err(Error::WidthMismatch {
                got: row.len(),
                expected: self.width,
            });
        }
        let mut reduced = row.to_vec();
        for (pivot, basis_row) in &self.echelon {
            if reduced[*pivot].is_zero() {
                continue;
            }
            let g = reduced[*pivot].gcd(&basis_row[*pivot]);
            let scale = &basis_row[*pivot] / &g;
            let factor = &reduced[*pivot] / &g;
            for (x, y) in reduced.iter_mut().zip(basis_row) {
                *x = &scale * &*x - &factor * y;
            }
            make_primitive(&mut reduced);
        }
        let Some(pivot) = reduced.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        make_primitive(&mut reduced);
        let at = self.echelon.partition_point(|(p, _)| *p < pivot);
        self.echelon.insert(at, (pivot, reduced));
        self.accepted.push(row.to_vec());
        Ok(true)
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}
