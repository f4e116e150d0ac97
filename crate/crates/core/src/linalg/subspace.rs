use crate::error::{Error, Result};

use super::matrix::{axpy, is_zero_vec, Matrix};
use super::scalar::{Field, Scalar};

/// A subspace of `field^ambient`, held as rref rows sorted by pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let mut s = Self::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![field.zero(); ambient];
            v[i] = field.one();
            s.rows.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn span<I: IntoIterator<Item = Vec<Scalar>>>(field: Field, ambient: usize, vectors: I) -> Self {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        Self::span(m.field(), m.cols(), m.row_vecs())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.rows.clone()).expect("rows have ambient length")
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        self.reduce_in_place(&mut out);
        out
    }

    fn reduce_in_place(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                axpy(v, &c, row);
            }
        }
    }

    /// Coefficients of `v` in terms of `basis()`, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut v = v;
        self.reduce_in_place(&mut v);
        let Some(p) = v.iter().position(|s| !s.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = -&row[p];
                axpy(row, &c, &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        Ok(s)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let m = super::matrix::intersect_rowspaces(&self.to_matrix(), &other.to_matrix())?;
        Ok(Subspace::from_matrix(&m))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    /// Non-pivot coordinates: the canonical complement, giving quotient coordinates.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of `v + self` in the quotient `ambient / self`, indexed by
    /// `complement_columns()`.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.complement_columns().into_iter().map(|c| r[c].clone()).collect()
    }

    /// Image under `v ↦ v·m` (row vectors acting on the right).
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::span(self.field, m.cols(), self.rows.iter().map(|r| m.left_apply(r)))
    }

    /// `{v ∈ self : v·m ∈ target}`.
    pub fn preimage_within(&self, m: &Matrix, target: &Subspace) -> Result<Subspace> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Solve Σ c_i (b_i·m) ∈ target: map each b_i·m into quotient coordinates and take the kernel.
        let cols = target.complement_columns();
        let images: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .map(|r| target.quotient_coords(&m.left_apply(r)))
            .collect();
        let q = Matrix::from_rows(self.field, cols.len(), images)?;
        let kernel = super::matrix::left_kernel_basis(&q)?;
        let mut out = Subspace::zero(self.field, self.ambient);
        for k in 0..kernel.rows() {
            let mut v = vec![self.field.zero(); self.ambient];
            for (c, row) in kernel.row(k).iter().zip(&self.rows) {
                if !c.is_zero() {
                    axpy(&mut v, c, row);
                }
            }
            out.insert(v);
        }
        Ok(out)
    }
}
