//! Dense matrices over a cyclotomic field.
//!
//! Sizes here are tiny (at most 2^n x 2^n for small n), so the
//! implementation favors exactness and clarity: Gauss-Jordan elimination
//! with exact pivots, fraction-free nothing — every entry stays a
//! canonical `CycNum`.

use std::sync::Arc;

use crate::cyclotomic::{CycField, CycNum};
use crate::error::{Error, Result};

/// Row-major dense matrix over Q(zeta_N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycMatrix {
    field: Arc<CycField>,
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zero(field: &Arc<CycField>, rows: usize, cols: usize) -> Self {
        CycMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![CycNum::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CycField>, dim: usize) -> Self {
        let mut m = Self::zero(field, dim, dim);
        for i in 0..dim {
            m.set(i, i, CycNum::one(field));
        }
        m
    }

    pub fn from_rows(field: &Arc<CycField>, rows: Vec<Vec<CycNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        CycMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn mat_mul(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = CycMatrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let t = out.get(i, j).add(&a.mul(b)?)?;
                        out.set(i, j, t);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CycMatrix) -> Result<CycMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(b)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CycMatrix) -> Result<CycMatrix> {
        self.add(&other.scale_all_neg())
    }

    fn scale_all_neg(&self) -> CycMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.neg();
        }
        out
    }

    pub fn mat_pow(&self, e: i64) -> Result<CycMatrix> {
        assert_eq!(self.rows, self.cols);
        if e < 0 {
            return self.mat_inv()?.mat_pow(-e);
        }
        let mut base = self.clone();
        let mut acc = CycMatrix::identity(&self.field, self.rows);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mat_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mat_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Gauss-Jordan inverse; `SingularMatrix` when not invertible.
    pub fn mat_inv(&self) -> Result<CycMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CycMatrix::identity(&self.field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero());
            let pivot = pivot.ok_or(Error::SingularMatrix)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a.get(col, col).clone();
            let pinv = p.inv()?;
            a.scale_row(col, &pinv)?;
            inv.scale_row(col, &pinv)?;
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let factor = a.get(r, col).clone();
                    a.sub_scaled_row(r, col, &factor)?;
                    inv.sub_scaled_row(r, col, &factor)?;
                }
            }
        }
        Ok(inv)
    }

    /// Rank via row elimination.
    pub fn mat_rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let pivot = (rank..a.rows).find(|&r| !a.get(r, col).is_zero());
            let Some(pivot) = pivot else { continue };
            a.swap_rows(pivot, rank);
            let pinv = a.get(rank, col).inv().unwrap();
            a.scale_row(rank, &pinv).unwrap();
            for r in 0..a.rows {
                if r != rank && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.sub_scaled_row(r, rank, &f).unwrap();
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant by elimination.
    pub fn mat_det(&self) -> CycNum {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = CycNum::one(&self.field);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero());
            let Some(pivot) = pivot else {
                return CycNum::zero(&self.field);
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = det.neg();
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p).unwrap();
            let pinv = p.inv().unwrap();
            for r in col + 1..n {
                if !a.get(r, col).is_zero() {
                    let f = a.get(r, col).mul(&pinv).unwrap();
                    a.sub_scaled_row(r, col, &f).unwrap();
                }
            }
        }
        det
    }

    /// Solve self * X = rhs for X (self square invertible).
    pub fn solve(&self, rhs: &CycMatrix) -> Result<CycMatrix> {
        self.mat_inv()?.mat_mul(rhs)
    }

    /// Map all entries into a larger cyclotomic field.
    pub fn embed(&self, target: &Arc<CycField>) -> Result<CycMatrix> {
        let mut out = CycMatrix::zero(target, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).embed(target)?);
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &CycNum) -> Result<()> {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(c)?;
            self.set(r, j, v);
        }
        Ok(())
    }

    /// row[r] -= factor * row[src]
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &CycNum) -> Result<()> {
        for j in 0..self.cols {
            let t = self.get(src, j).mul(factor)?;
            let v = self.get(r, j).sub(&t)?;
            self.set(r, j, v);
        }
        Ok(())
    }
}

/// Block tensor product with the LEFT factor varying fastest: the result
/// consists of blocks (i, j) equal to b[i][j] * A. Equivalently this is
/// the conventional Kronecker product B (x) A.
pub fn kron_paper(a: &CycMatrix, b: &CycMatrix) -> Result<CycMatrix> {
    let field = a.field();
    let mut out = CycMatrix::zero(field, a.rows() * b.rows(), a.cols() * b.cols());
    for bi in 0..b.rows() {
        for bj in 0..b.cols() {
            let coef = b.get(bi, bj);
            if coef.is_zero() {
                continue;
            }
            for ai in 0..a.rows() {
                for aj in 0..a.cols() {
                    let v = a.get(ai, aj).mul(coef)?;
                    out.set(bi * a.rows() + ai, bj * a.cols() + aj, v);
                }
            }
        }
    }
    Ok(out)
}
