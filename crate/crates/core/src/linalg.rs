//! Dense exact linear algebra over a [`Field`].
//!
//! Everything is Gaussian elimination with first-nonzero pivoting. Vectors
//! are plain `Vec<Scalar>`; a basis is returned as a list of such vectors.

use std::fmt;

use crate::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.field.format(self.get(r, c)))
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
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
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data has the wrong length");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged integer matrix");
                row.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Matrix::from_rows(field, r, c, data)
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> Vector {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
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
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(self.get(i, k), &v[k])))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        Matrix::from_rows(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|a| f.mul(a, s)).collect();
        Matrix::from_rows(f, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    pub fn block_diagonal(field: Field, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(e.reduced.block(0, n, n, n))
    }

    /// Basis of `{v : M v = 0}`; one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let f = self.field;
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in e.pivots.iter().enumerate() {
                    v[pc] = f.neg(e.reduced.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Kernel basis packed as the columns of a matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.cols, &self.kernel_basis())
    }

    /// A surjection `P` from the codomain with `P * M = 0`; its row count is
    /// `rows - rank`.
    pub fn cokernel_basis(&self) -> (Matrix, usize) {
        let left = self.transpose().kernel_basis();
        let dim = left.len();
        let p = Matrix::from_columns(self.field, self.rows, &left).transpose();
        (p, dim)
    }

    /// Some `x` with `M x = b`, or `None` when `b` is not in the image.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        self.solve_matrix(&rhs).map(|x| x.column(0))
    }

    /// Some `X` with `M X = B`, or `None`.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let f = self.field;
        let aug = self.hstack(b);
        let e = aug.echelon();
        if e.pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (r, &pc) in e.pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(pc, c, e.reduced.get(r, self.cols + c).clone());
            }
        }
        Some(x)
    }

    /// Some `S` with `M S = I`; exists iff `M` has full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        self.solve_matrix(&Matrix::identity(self.field, self.rows))
    }

    /// Standard basis vectors `e_i` that extend the column space to the full
    /// space, in increasing index order.
    pub fn complement_indices(&self) -> Vec<usize> {
        let aug = self.hstack(&Matrix::identity(self.field, self.rows));
        aug.echelon()
            .pivots
            .into_iter()
            .filter(|&p| p >= self.cols)
            .map(|p| p - self.cols)
            .collect()
    }
}

/// Incrementally maintained span of vectors, used for greedy basis selection.
#[derive(Clone, Debug)]
pub struct Span {
    field: Field,
    dim: usize,
    /// Echelon rows: (pivot position, normalized row).
    rows: Vec<(usize, Vector)>,
}

impl Span {
    pub fn new(field: Field, dim: usize) -> Self {
        Span {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vector {
        let f = self.field;
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let c = w[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (i, r) in row.iter().enumerate() {
                w[i] = f.sub(&w[i], &f.mul(&c, r));
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero");
        let w: Vector = w.iter().map(|x| f.mul(x, &inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            let c = row[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (i, r) in w.iter().enumerate() {
                row[i] = f.sub(&row[i], &f.mul(&c, r));
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn integer_determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "determinant needs a square matrix");
            row.iter().map(|&v| v as i128).collect()
        })
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> Field {
        Field::default()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(Matrix::identity(f101(), 2).kernel_basis().is_empty());
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        assert_eq!(Matrix::zeros(f101(), 2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn all_ones_kernel_is_antidiagonal() {
        let f = f101();
        let m = Matrix::from_i64(f, &[vec![1, 1], vec![1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (1, -1)
        assert!(f.is_zero(&f.add(&k[0][0], &k[0][1])));
        assert!(!f.is_zero(&k[0][0]));
    }

    #[test]
    fn cokernel_dimensions() {
        let f = f101();
        assert_eq!(Matrix::identity(f, 3).cokernel_basis().1, 0);
        assert_eq!(Matrix::zeros(f, 3, 2).cokernel_basis().1, 3);
        let m = Matrix::from_i64(f, &[vec![1, 2], vec![2, 4]]);
        let (p, d) = m.cokernel_basis();
        assert_eq!(d, 1);
        assert!(p.mul(&m).is_zero());
    }

    #[test]
    fn solve_cases() {
        let f = f101();
        let b = vec![f.from_i64(3), f.from_i64(-4)];
        assert_eq!(Matrix::identity(f, 2).solve(&b), Some(b.clone()));
        assert_eq!(Matrix::zeros(f, 2, 2).solve(&b), None);
        let two = Matrix::from_i64(f, &[vec![2]]);
        assert_eq!(two.solve(&[f.one()]), Some(vec![Scalar::Fp(51)]));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::Rational;
        let m = Matrix::from_i64(f, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        assert!(Matrix::from_i64(f, &[vec![1, 1], vec![1, 1]]).inverse().is_none());
    }

    #[test]
    fn zero_dimensional_matrices() {
        let f = f101();
        let m = Matrix::zeros(f, 0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 3);
        assert_eq!(m.cokernel_basis().1, 0);
        let e = Matrix::zeros(f, 2, 0);
        assert_eq!(e.cokernel_basis().1, 2);
        assert!(e.solve(&[f.zero(), f.zero()]).is_some());
    }

    #[test]
    fn span_tracks_rank() {
        let f = f101();
        let mut s = Span::new(f, 2);
        assert!(s.insert(&[f.one(), f.one()]));
        assert!(!s.insert(&[f.from_i64(2), f.from_i64(2)]));
        assert!(s.contains(&[f.from_i64(5), f.from_i64(5)]));
        assert!(!s.contains(&[f.one(), f.zero()]));
        assert!(s.insert(&[f.one(), f.zero()]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn determinants() {
        assert_eq!(integer_determinant(&[vec![1, 0], vec![1, 1]]), 1);
        assert_eq!(integer_determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(integer_determinant(&[vec![1, 1], vec![1, 1]]), 0);
        assert_eq!(
            integer_determinant(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]),
            0
        );
        assert_eq!(
            integer_determinant(&[vec![0, 2, 1], vec![1, 0, 3], vec![1, 1, 1]]),
            5
        );
    }

    #[test]
    fn complement_extends_image() {
        let f = f101();
        let m = Matrix::from_i64(f, &[vec![1], vec![1], vec![0]]);
        let c = m.complement_indices();
        assert_eq!(c, vec![0, 2]);
    }
}
