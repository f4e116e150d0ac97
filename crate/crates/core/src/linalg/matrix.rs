use std::fmt;

use crate::error::{Error, Result};

use super::scalar::{Field, Scalar};

/// Dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`row_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub rank: usize,
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from an explicit entry list; entry tags are checked lazily by the
    /// reduction routines.
    pub fn from_entries(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Self::from_entries(field, n, cols, data)
    }

    /// Integer matrix, convenient in tests and examples.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.from_i64(v)))
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Errors with `FieldMismatch` if some entry is not over `self.field()`.
    pub fn check_field(&self) -> Result<()> {
        match self.data.iter().find(|s| s.field() != self.field) {
            Some(s) => Err(Error::FieldMismatch(self.field, s.field())),
            None => Ok(()),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let rows = (0..self.rows).map(|r| other.left_apply(self.row(r))).collect();
        Matrix::from_rows(self.field, other.cols, rows)
    }

    /// Row vector times matrix: `v · self`.
    pub fn left_apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if !a.is_zero() {
                axpy(&mut out, a, self.row(r));
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::from_entries(self.field, self.rows + other.rows, self.cols, data)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn zero_vec(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

pub fn scale_vec(v: &[Scalar], a: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| a * x).collect()
}

fn gauss_jordan(field: Field, cols: usize, mut rows: Vec<Vec<Scalar>>) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, i);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r][c..].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        let support: Vec<usize> = (c..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                row[j] = &row[j] - &(&f * &pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    let _ = field;
    (rows, pivots)
}

/// Reduced row-echelon form. Pivots are chosen leftmost-column first, taking the first
/// row with a nonzero entry, so the output is reproducible.
pub fn row_reduce(m: &Matrix) -> Result<RowEchelon> {
    m.check_field()?;
    let (mut rows, pivots) = gauss_jordan(m.field, m.cols, m.row_vecs());
    let rank = rows.len();
    rows.resize(m.rows, zero_vec(m.field, m.cols));
    Ok(RowEchelon {
        rank,
        rref: Matrix::from_rows(m.field, m.cols, rows)?,
        pivots,
    })
}

/// Basis (as rows, in rref) of the right null space `{v : m·v = 0}`.
pub fn kernel_basis(m: &Matrix) -> Result<Matrix> {
    m.check_field()?;
    let field = m.field;
    let (rref, pivots) = gauss_jordan(field, m.cols, m.row_vecs());
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = unit_vec(field, m.cols, free);
        for (k, &p) in pivots.iter().enumerate() {
            v[p] = -&rref[k][free];
        }
        basis.push(v);
    }
    let (basis, _) = gauss_jordan(field, m.cols, basis);
    Matrix::from_rows(field, m.cols, basis)
}

/// Basis of the left null space `{v : v·m = 0}`.
pub fn left_kernel_basis(m: &Matrix) -> Result<Matrix> {
    kernel_basis(&m.transpose())
}

/// Basis (rref rows) of `rowspace(u) ∩ rowspace(v)`.
pub fn intersect_rowspaces(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    if u.cols != v.cols {
        return Err(Error::DimensionMismatch {
            expected: u.cols,
            found: v.cols,
        });
    }
    if u.field != v.field {
        return Err(Error::FieldMismatch(u.field, v.field));
    }
    u.check_field()?;
    v.check_field()?;
    // x·U + y·V = 0  <=>  x·U = (-y)·V lies in both row spaces.
    let stacked = u.stack(v)?;
    let relations = left_kernel_basis(&stacked)?;
    let mut rows = Vec::new();
    for r in 0..relations.rows() {
        let x = &relations.row(r)[..u.rows];
        rows.push(u.left_apply(x));
    }
    let (rows, _) = gauss_jordan(u.field, u.cols, rows);
    Matrix::from_rows(u.field, u.cols, rows)
}

/// Solves `x·p = t` for each target row `t`; `None` if some target is outside the row
/// space of `p`.
pub fn solve_left(p: &Matrix, targets: &[Vec<Scalar>]) -> Result<Option<Vec<Vec<Scalar>>>> {
    p.check_field()?;
    let field = p.field;
    let (r, c) = (p.rows, p.cols);
    let augmented: Vec<Vec<Scalar>> = (0..r)
        .map(|i| {
            let mut row = p.row(i).to_vec();
            row.extend(unit_vec(field, r, i));
            row
        })
        .collect();
    let (rows, pivots) = gauss_jordan(field, c + r, augmented);
    let mut out = Vec::with_capacity(targets.len());
    for t in targets {
        if t.len() != c {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: t.len(),
            });
        }
        let mut rest = t.clone();
        let mut x = zero_vec(field, r);
        for (row, &pc) in rows.iter().zip(&pivots) {
            if pc >= c {
                break;
            }
            let a = rest[pc].clone();
            if a.is_zero() {
                continue;
            }
            let neg = -&a;
            axpy(&mut rest, &neg, &row[..c]);
            axpy(&mut x, &a, &row[c..]);
        }
        if !is_zero_vec(&rest) {
            return Ok(None);
        }
        out.push(x);
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = Matrix::identity(q(), 2);
        let e = row_reduce(&id).unwrap();
        assert_eq!(e.rank, 2);
        assert_eq!(e.rref, id);
        assert_eq!(e.pivots, vec![0, 1]);
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        let m = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let e = row_reduce(&m).unwrap();
        assert_eq!(e.rank, 1);
        assert_eq!(e.rref, Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn full_rank_over_f2() {
        // [[1,1],[1,2]] = [[1,1],[1,0]] mod 2; subtracting rows leaves [0,1].
        let f2 = Field::prime(2).unwrap();
        let m = Matrix::from_i64(f2, &[&[1, 1], &[1, 2]]);
        assert_eq!(row_reduce(&m).unwrap().rank, 2);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::from_entries(q(), 1, 2, vec![q().one(), f5.one()]).unwrap();
        assert!(matches!(row_reduce(&m), Err(Error::FieldMismatch(..))));
        assert!(matches!(kernel_basis(&m), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn kernel_edge_cases() {
        assert_eq!(kernel_basis(&Matrix::identity(q(), 3)).unwrap().rows(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(q(), 2, 3)).unwrap().rows(), 3);
        let m = Matrix::from_i64(q(), &[&[1, 2, 3]]);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            let v = k.row(r);
            let dot = &(&(v[0].clone()) + &(&q().from_i64(2) * &v[1])) + &(&q().from_i64(3) * &v[2]);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_left_inverts_products() {
        let p = Matrix::from_i64(q(), &[&[1, 2, 0], &[0, 1, 1], &[1, 3, 1]]);
        let t = vec![vec![q().from_i64(2), q().from_i64(5), q().from_i64(1)]];
        let x = solve_left(&p, &t).unwrap().unwrap();
        assert_eq!(p.left_apply(&x[0]), t[0]);
        let outside = vec![vec![q().from_i64(0), q().from_i64(0), q().from_i64(1)]];
        assert!(solve_left(&p, &outside).unwrap().is_none());
    }

    #[test]
    fn intersections() {
        let e1 = Matrix::from_i64(q(), &[&[1, 0]]);
        let e2 = Matrix::from_i64(q(), &[&[0, 1]]);
        assert_eq!(intersect_rowspaces(&e1, &e2).unwrap().rows(), 0);
        let u = Matrix::from_i64(q(), &[&[1, 0, 0], &[0, 1, 0]]);
        let v = Matrix::from_i64(q(), &[&[0, 1, 0], &[0, 0, 1]]);
        let w = intersect_rowspaces(&u, &v).unwrap();
        assert_eq!(w, Matrix::from_i64(q(), &[&[0, 1, 0]]));
        let same = intersect_rowspaces(&u, &u).unwrap();
        assert_eq!(same, u);
        let bad = Matrix::zeros(q(), 1, 2);
        assert!(matches!(
            intersect_rowspaces(&u, &bad),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
