//! Exact dense matrices over F_p or Q.
//!
//! All reductions use deterministic pivoting (first nonzero entry in column
//! order), so kernel and solution bases are reproducible.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix data length {} != {rows}x{cols}",
                data.len()
            )));
        }
        for s in &data {
            field.validate(s)?;
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| self.field.is_zero(s))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.field.is_one(self.get(i, j))
                    } else {
                        self.field.is_zero(self.get(i, j))
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product: block (i,j) of the result is self[i][j] * other.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        Matrix::from_fn(
            f,
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let a = self.get(i / other.rows, j / other.cols);
                f.mul(a, other.get(i % other.rows, j % other.cols))
            },
        )
    }

    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, off + j, b.get(i, j).clone());
                }
            }
            off += b.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            for i in 0..b.rows {
                for j in 0..cols {
                    out.set(off + i, j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        out
    }

    /// Block diagonal assembly.
    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(
            self.field,
            rows.len(),
            cols.len(),
            |i, j| self.get(rows.start + i, cols.start + j).clone(),
        )
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.submatrix(0..self.rows, j..j + 1)
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            // first nonzero entry at or below `row`
            let Some(pr) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            if pr != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(row, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(row, col));
            for j in col..m.cols {
                let v = f.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !f.is_zero(m.get(r, col)) {
                    let factor = m.get(r, col).clone();
                    for j in col..m.cols {
                        let v = f.sub(m.get(r, j), &f.mul(&factor, m.get(row, j)));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, as columns. Deterministic: the basis
    /// derived from the reduced row echelon form with free variables in
    /// column order.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zero(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (pi, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(pi, fc)));
            }
        }
        out
    }

    /// One solution X of self * X = b, if consistent; free variables are 0.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.field != b.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs rhs {} rows",
                self.rows, b.rows
            )));
        }
        let f = self.field;
        let aug = Matrix::hstack(f, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        // inconsistent iff a pivot lands in the rhs block
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zero(f, self.cols, b.cols);
        for (pi, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(pi, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        match self.solve(&id) {
            Ok(Some(x)) => {
                if self.mul(&x).unwrap().is_identity() {
                    Some(x)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Indices of a maximal independent set of columns (deterministic:
    /// pivot columns of the rref), and the corresponding original columns
    /// as a basis matrix of the column space.
    pub fn column_space_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        let cols: Vec<Matrix> = pivots.iter().map(|&c| self.column(c)).collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        Matrix::hstack(self.field, self.rows, &refs)
    }

    /// Flattens column-major into a single column (vec operator).
    pub fn vec(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows * self.cols, 1, |i, _| {
            self.get(i % self.rows, i / self.rows).clone()
        })
    }

    /// Inverse of `vec` for the given shape.
    pub fn unvec(field: Field, rows: usize, cols: usize, v: &Matrix) -> Matrix {
        assert_eq!(v.rows, rows * cols);
        Matrix::from_fn(field, rows, cols, |i, j| v.get(j * rows + i, 0).clone())
    }

    pub fn trace(&self) -> Scalar {
        let f = self.field;
        let mut t = f.zero();
        for i in 0..self.rows.min(self.cols) {
            t = f.add(&t, self.get(i, i));
        }
        t
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }
}

/// Membership test of a column vector in the column space of `basis`.
pub fn in_column_space(basis: &Matrix, v: &Matrix) -> bool {
    matches!(basis.solve(v), Ok(Some(_)))
}

/// Incrementally maintained echelonized spanning set of column vectors.
/// Supports cheap membership tests while vectors are inserted one at a time.
#[derive(Debug, Clone)]
pub struct EchelonSpan {
    field: Field,
    ambient: usize,
    /// Reduced vectors, each paired with its pivot row; kept sorted by pivot.
    rows: Vec<(usize, Matrix)>,
}

impl EchelonSpan {
    pub fn new(field: Field, ambient: usize) -> EchelonSpan {
        EchelonSpan { field, ambient, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn reduce(&self, v: &Matrix) -> Matrix {
        let f = self.field;
        let mut v = v.clone();
        for (piv, b) in &self.rows {
            let c = v.get(*piv, 0);
            if !f.is_zero(c) {
                let c = c.clone();
                v = v.sub(&b.scale(&c)).unwrap();
            }
        }
        v
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &Matrix) -> bool {
        let f = self.field;
        let r = self.reduce(v);
        let Some(piv) = (0..self.ambient).find(|&i| !f.is_zero(r.get(i, 0))) else {
            return false;
        };
        let normalized = r.scale(&f.inv(r.get(piv, 0)));
        let pos = self.rows.partition_point(|(p, _)| *p < piv);
        self.rows.insert(pos, (piv, normalized));
        true
    }

    /// Basis matrix whose columns are the reduced spanning vectors.
    pub fn basis(&self) -> Matrix {
        let cols: Vec<&Matrix> = self.rows.iter().map(|(_, b)| b).collect();
        Matrix::hstack(self.field, self.ambient, &cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = Matrix::identity(f2(), 2);
        let k = m.kernel_basis();
        assert_eq!((k.rows(), k.cols()), (2, 0));
    }

    #[test]
    fn kernel_of_zero_map() {
        let m = Matrix::zero(f2(), 2, 3);
        let k = m.kernel_basis();
        assert_eq!((k.rows(), k.cols()), (3, 3));
        assert!(k.is_identity());
    }

    #[test]
    fn kernel_of_rank_one_over_f2() {
        // [[1,1],[1,1]] over F_2 has kernel spanned by (1,1)^T
        let m = Matrix::from_i64_rows(f2(), &[&[1, 1], &[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0), &Scalar::Fp(1));
        assert_eq!(k.get(1, 0), &Scalar::Fp(1));
        assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn solve_scalar_inverse_over_q() {
        let m = Matrix::from_i64_rows(Field::Rational, &[&[2]]);
        let b = Matrix::from_i64_rows(Field::Rational, &[&[1]]);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(x.get(0, 0), &Field::Rational.parse_scalar("1/2").unwrap());
    }

    #[test]
    fn solve_inconsistent() {
        let m = Matrix::zero(Field::Rational, 1, 1);
        let b = Matrix::from_i64_rows(Field::Rational, &[&[1]]);
        assert!(m.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let f = f2();
        let m = Matrix::identity(f, 3);
        let b = Matrix::from_i64_rows(f, &[&[1], &[0], &[1]]);
        assert_eq!(m.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(f2(), 4).rank(), 4);
        assert_eq!(Matrix::zero(f2(), 3, 5).rank(), 0);
        let m = Matrix::from_i64_rows(Field::Rational, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn zero_dimension_matrices() {
        let m = Matrix::zero(f2(), 0, 3);
        assert_eq!(m.kernel_basis().cols(), 3);
        let m2 = Matrix::zero(f2(), 3, 0);
        assert_eq!(m2.rank(), 0);
        let prod = m2.mul(&m).unwrap();
        assert_eq!((prod.rows(), prod.cols()), (3, 3));
        assert!(prod.is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64_rows(Field::Rational, &[&[1, 2], &[3, 5]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        let sing = Matrix::from_i64_rows(Field::Rational, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn rank_nullity_on_random_f2() {
        // rank + nullity = cols, m * ker = 0 for a spread of small matrices
        let f = f2();
        let mut state = 0x9e3779b9u64;
        for rows in 0..=8 {
            for cols in 0..=8 {
                let m = Matrix::from_fn(f, rows, cols, |_, _| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    f.from_i64((state >> 33) as i64 % 2)
                });
                let k = m.kernel_basis();
                assert_eq!(m.rank() + k.cols(), cols);
                assert!(m.mul(&k).unwrap().is_zero());
                assert_eq!(k.rank(), k.cols());
            }
        }
    }
}
