use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A sparse matrix with coalesced entries; exact zeros are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator<S> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> SparseOperator<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseOperator {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| S::one()).collect())
    }

    pub fn diagonal(values: Vec<S>) -> Self {
        let n = values.len();
        let mut op = Self::zeros(n, n);
        for (i, v) in values.into_iter().enumerate() {
            op.add_entry(i, i, v);
        }
        op
    }

    /// Duplicate positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self> {
        let mut op = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            op.add_entry(r, c, v);
        }
        Ok(op)
    }

    /// Panics if the position is out of range.
    pub fn add_entry(&mut self, row: usize, col: usize, value: S) {
        assert!(row < self.rows && col < self.cols, "entry ({row}, {col}) out of range");
        if value.is_zero() {
            return;
        }
        match self.entries.entry((row, col)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + value;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn adjoint(&self) -> Self {
        SparseOperator {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.conj())).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (&(r, col), v) in &self.entries {
            out.add_entry(r, col, v.clone() * c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_entry(r, c, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &S)>> = vec![Vec::new(); other.rows];
        for (&(r, c), v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &by_row[k] {
                out.add_entry(r, c, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    /// `A x` for a dense vector.
    pub fn apply(&self, x: &[S]) -> Vec<S> {
        let mut y = vec![S::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            y[r] = y[r].clone() + v.clone() * x[c].clone();
        }
        y
    }

    pub fn to_complex(&self) -> SparseOperator<Complex64> {
        SparseOperator {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, v)| (k, v.to_complex())).collect(),
        }
    }

    /// Keep only the entries whose row and column pass the filters.
    pub fn restrict(&self, keep_row: impl Fn(usize) -> bool, keep_col: impl Fn(usize) -> bool) -> Self {
        SparseOperator {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .filter(|(&(r, c), _)| keep_row(r) && keep_col(c))
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    /// Largest entry modulus of `self - other` over rows and columns passing
    /// the filters.
    pub fn max_abs_diff_on(
        &self,
        other: &Self,
        keep_row: impl Fn(usize) -> bool,
        keep_col: impl Fn(usize) -> bool,
    ) -> f64 {
        let mut worst = 0.0f64;
        for &(r, c) in self.entries.keys().chain(other.entries.keys()) {
            if keep_row(r) && keep_col(c) {
                let d = (self.get(r, c) - other.get(r, c)).abs_sq().sqrt();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.max_abs_diff_on(other, |_| true, |_| true)
    }

    /// Diagonal with every diagonal entry equal to 0 or 1.
    pub fn is_diagonal_projection(&self) -> bool {
        self.entries.iter().all(|(&(r, c), v)| r == c && *v == S::one())
    }

    /// Matrix Market coordinate text, one-based.
    pub fn to_matrix_market(&self) -> String {
        let complex = self.entries.values().any(|v| v.to_complex().im != 0.0);
        let mut out = String::new();
        let field = if complex { "complex" } else { "real" };
        let _ = writeln!(out, "%%MatrixMarket matrix coordinate {field} general");
        let _ = writeln!(out, "{} {} {}", self.rows, self.cols, self.entries.len());
        for (&(r, c), v) in &self.entries {
            let z = v.to_complex();
            if complex {
                let _ = writeln!(out, "{} {} {:e} {:e}", r + 1, c + 1, z.re, z.im);
            } else {
                let _ = writeln!(out, "{} {} {:e}", r + 1, c + 1, z.re);
            }
        }
        out
    }
}
