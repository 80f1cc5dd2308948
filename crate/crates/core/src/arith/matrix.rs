//! Dense matrices over a number field and exact Gaussian elimination.

use std::sync::Arc;

use super::field::{AlgebraicNumber, NumberField};

pub type FieldVector = Vec<AlgebraicNumber>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Arc<NumberField>,
    rows: usize,
    cols: usize,
    entries: Vec<AlgebraicNumber>,
}

impl FieldMatrix {
    pub fn zeros(field: &Arc<NumberField>, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            entries: vec![AlgebraicNumber::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, AlgebraicNumber::one(field));
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have `cols` entries.
    pub fn from_rows(field: &Arc<NumberField>, cols: usize, rows: &[FieldVector]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            entries.extend(r.iter().cloned());
        }
        Self {
            field: field.clone(),
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &AlgebraicNumber {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: AlgebraicNumber) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> FieldVector {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<FieldVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = AlgebraicNumber::zero(&self.field);
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * other.get(k, c));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[AlgebraicNumber]) -> FieldVector {
        (0..self.rows)
            .map(|r| dot(&self.entries[r * self.cols..(r + 1) * self.cols], v))
            .collect()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols);
        (Self::from_rows(&self.field, self.cols, &rows), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right null space: the reduced row echelon
    /// form of any spanning set, so equal subspaces give equal bases.
    pub fn kernel(&self) -> Vec<FieldVector> {
        let raw = kernel_basis(&self.to_rows(), self.cols, &self.field);
        canonical_basis(raw, self.cols)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<FieldVector> = (0..n)
            .map(|r| {
                let mut row = self.row(r);
                for c in 0..n {
                    row.push(if r == c {
                        AlgebraicNumber::one(&self.field)
                    } else {
                        AlgebraicNumber::zero(&self.field)
                    });
                }
                row
            })
            .collect();
        let pivots = rref_in_place(&mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows: Vec<FieldVector> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Self::from_rows(&self.field, n, &rows))
    }
}

pub fn dot(a: &[AlgebraicNumber], b: &[AlgebraicNumber]) -> AlgebraicNumber {
    let field = a.first().or(b.first()).map(|x| x.field().clone());
    let mut acc = match field {
        Some(f) => AlgebraicNumber::zero(&f),
        None => return AlgebraicNumber::zero(&NumberField::rational()),
    };
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(x * y);
    }
    acc
}

/// In-place reduced row echelon form over the first `cols` columns; returns
/// pivot columns. Zero rows are dropped.
pub fn rref_in_place(rows: &mut Vec<FieldVector>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{v : row . v = 0 for all rows}`, with one vector per free
/// column (that coordinate 1, other free coordinates 0).
pub fn kernel_basis(
    rows: &[FieldVector],
    cols: usize,
    field: &Arc<NumberField>,
) -> Vec<FieldVector> {
    let mut work = rows.to_vec();
    let pivots = rref_in_place(&mut work, cols);
    let mut basis = Vec::new();
    let mut pivot_iter = 0;
    for free in 0..cols {
        if pivot_iter < pivots.len() && pivots[pivot_iter] == free {
            pivot_iter += 1;
            continue;
        }
        let mut v = vec![AlgebraicNumber::zero(field); cols];
        v[free] = AlgebraicNumber::one(field);
        for (row, &p) in work.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -&row[free];
            }
        }
        basis.push(v);
    }
    basis
}

pub fn canonical_basis(mut vectors: Vec<FieldVector>, cols: usize) -> Vec<FieldVector> {
    rref_in_place(&mut vectors, cols);
    vectors
}

pub fn rank_of(rows: &[FieldVector], cols: usize) -> usize {
    let mut work = rows.to_vec();
    rref_in_place(&mut work, cols).len()
}
