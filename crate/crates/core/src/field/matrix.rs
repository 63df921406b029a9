use std::fmt;
use std::ops::{Index, IndexMut};

use super::{ensure_field, Field, FieldError, Poly, Scalar};

/// Dense matrix over a single field, row-major, indices from 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Result<Self, FieldError> {
        ensure_field(field, diag)?;
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, v) in diag.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        Ok(m)
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self, FieldError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(FieldError::DimensionMismatch("ragged rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        ensure_field(field, &data)?;
        Ok(Self {
            field,
            rows: n,
            cols: m,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self, FieldError> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.field(), field, "field mismatch in Matrix::from_fn");
                data.push(v);
            }
        }
        Self {
            field,
            rows,
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn check_same(&self, other: &Matrix) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.check_same(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Product; zero entries of the left factor are skipped, so products with
    /// sparse (bidiagonal, rank-one) factors stay cheap.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    let slot = &mut out[(i, j)];
                    *slot = &*slot + &t;
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, FieldError> {
        if v.len() != self.cols {
            return Err(FieldError::DimensionMismatch("matrix-vector".into()));
        }
        ensure_field(self.field, v)?;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Reflection across the anti-diagonal: `(S^ς)_{ij} = S_{d-j, d-i}`.
    pub fn zeta_reflect(&self) -> Matrix {
        let (r, c) = (self.rows, self.cols);
        Matrix::from_fn(self.field, c, r, |i, j| self[(r - 1 - j, c - 1 - i)].clone())
    }

    /// Clockwise quarter turn: `X'_{ij} = X_{d-j, i}`.
    pub fn rotate_clockwise(&self) -> Matrix {
        let r = self.rows;
        Matrix::from_fn(self.field, self.cols, r, |i, j| self[(r - 1 - j, i)].clone())
    }

    pub fn trace(&self) -> Result<Scalar, FieldError> {
        if !self.is_square() {
            return Err(FieldError::DimensionMismatch("trace of non-square".into()));
        }
        Ok((0..self.rows).fold(self.field.zero(), |acc, i| &acc + &self[(i, i)]))
    }

    /// trace(self · other) without forming the product.
    pub fn trace_of_product(&self, other: &Matrix) -> Result<Scalar, FieldError> {
        self.check_same(other)?;
        if self.cols != other.rows || self.rows != other.cols {
            return Err(FieldError::DimensionMismatch("trace of product".into()));
        }
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &other[(k, i)];
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
        }
        Ok(acc)
    }

    /// self − cI
    pub fn shifted(&self, c: &Scalar) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = &m[(i, i)] - c;
        }
        m
    }

    /// [I, (M − r₀I), (M − r₀I)(M − r₁I), …] for the given roots.
    pub fn cumulative_products<'a>(&self, roots: impl IntoIterator<Item = &'a Scalar>) -> Vec<Matrix> {
        let mut out = vec![Matrix::identity(self.field, self.rows)];
        for r in roots {
            let next = out.last().expect("nonempty").mul(&self.shifted(r)).expect("square");
            out.push(next);
        }
        out
    }

    /// Exact Gauss-Jordan inverse; the pivot is the first nonzero entry of
    /// the current column at or below the diagonal.
    pub fn inverse(&self) -> Result<Matrix, FieldError> {
        if !self.is_square() {
            return Err(FieldError::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(FieldError::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p_inv = a[(col, col)].inv().expect("nonzero pivot");
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                a.axpy_row(r, col, &factor);
                inv.axpy_row(r, col, &factor);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = &self[(r, j)] * c;
            self[(r, j)] = v;
        }
    }

    /// row[target] -= factor * row[source]
    fn axpy_row(&mut self, target: usize, source: usize, factor: &Scalar) {
        for j in 0..self.cols {
            let s = &self[(source, j)];
            if s.is_zero() {
                continue;
            }
            let v = &self[(target, j)] - &(factor * s);
            self[(target, j)] = v;
        }
    }

    /// `f(self)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Result<Matrix, FieldError> {
        if !self.is_square() {
            return Err(FieldError::DimensionMismatch("polynomial of non-square".into()));
        }
        if f.field() != self.field {
            return Err(FieldError::FieldMismatch(self.field, f.field()));
        }
        let n = self.rows;
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                acc[(i, i)] = &acc[(i, i)] + c;
            }
        }
        Ok(acc)
    }

    /// Lower Hessenberg test in the sense used throughout: zero strictly
    /// below the subdiagonal and nonzero on it. Returns the first offending
    /// position.
    pub fn hessenberg_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i > j + 1 && !self[(i, j)].is_zero() {
                    return Some((i, j));
                }
                if i == j + 1 && self[(i, j)].is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn zeta_reflect_worked_example() {
        let s = Matrix::from_i64(q(), &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).unwrap();
        let expected = Matrix::from_i64(q(), &[&[9, 6, 3], &[8, 5, 2], &[7, 4, 1]]).unwrap();
        assert_eq!(s.zeta_reflect(), expected);
        assert_eq!(s.zeta_reflect().zeta_reflect(), s);
    }

    #[test]
    fn inverse_of_small_involution() {
        let m = Matrix::from_i64(q(), &[&[1, 0], &[1, -1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv, m);
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(q(), 2));
    }

    #[test]
    fn singular_and_mismatch_errors() {
        let m = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(m.inverse(), Err(FieldError::Singular));
        let a = Matrix::identity(q(), 2);
        let b = Matrix::identity(q(), 3);
        assert!(matches!(a.mul(&b), Err(FieldError::DimensionMismatch(_))));
        let c = Matrix::identity(Field::Prime(7), 2);
        assert!(matches!(a.add(&c), Err(FieldError::FieldMismatch(..))));
    }

    #[test]
    fn rotation_and_trace() {
        let m = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]).unwrap();
        // bottom row becomes the first column, read top to bottom
        assert_eq!(m.rotate_clockwise(), Matrix::from_i64(q(), &[&[3, 1], &[4, 2]]).unwrap());
        assert_eq!(m.trace().unwrap(), q().from_i64(5));
    }

    #[test]
    fn poly_of_matrix() {
        // H = [[0,0],[1,1]] is annihilated by λ² − λ
        let h = Matrix::from_i64(q(), &[&[0, 0], &[1, 1]]).unwrap();
        let f = Poly::from_i64(q(), &[0, -1, 1]);
        assert!(h.eval_poly(&f).unwrap().is_zero());
        assert_eq!(h.hessenberg_violation(), None);
        assert_eq!(Matrix::identity(q(), 2).hessenberg_violation(), Some((1, 0)));
    }
}
