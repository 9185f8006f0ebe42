use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Num;

use crate::rational::{format_rational, Rational};

use super::LinalgError;

/// Scalar field shared by the exact and floating-point backings.
pub trait Scalar: Num + Clone + PartialEq + fmt::Debug + Neg<Output = Self> + Send + Sync {}

impl<T> Scalar for T where T: Num + Clone + PartialEq + fmt::Debug + Neg<Output = T> + Send + Sync {}

fn tri(i: usize, j: usize) -> usize {
    let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
    hi * (hi + 1) / 2 + lo
}

/// Symmetric matrix holding only its lower triangle.
#[derive(Clone, PartialEq, Eq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![T::zero(); n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(vec![T::one(); n])
    }

    /// All-ones matrix.
    pub fn ones(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![T::one(); n * (n + 1) / 2],
        }
    }

    /// Builds from `f(i, j)`, evaluated for `j <= i` only.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in 0..=i {
                data.push(f(i, j));
            }
        }
        SymMatrix { n, data }
    }

    pub fn from_diagonal(d: Vec<T>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, v) in d.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// `x xᵀ`.
    pub fn outer(x: &[T]) -> Self {
        Self::from_fn(x.len(), |i, j| x[i].clone() * x[j].clone())
    }

    /// Reads the lower triangle of a square matrix after checking symmetry.
    pub fn from_dense(m: &Matrix<T>) -> Result<Self, LinalgError> {
        if m.rows() != m.cols() {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} is not square",
                m.rows(),
                m.cols()
            )));
        }
        for i in 0..m.rows() {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(LinalgError::NotSymmetric);
                }
            }
        }
        Ok(Self::from_fn(m.rows(), |i, j| m.get(i, j).clone()))
    }

    /// Lower triangle given row by row: row `i` has `i + 1` entries.
    pub fn from_lower_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != i + 1 {
                return Err(LinalgError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {}",
                    r.len(),
                    i + 1
                )));
            }
            data.extend(r);
        }
        Ok(SymMatrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[tri(i, j)]
    }

    /// Writes both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let k = tri(i, j);
        self.data[k] = v;
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|v| v.clone() * k.clone())
    }

    /// Frobenius inner product `⟨A, B⟩ = Σ_ij A_ij B_ij`.
    pub fn inner(&self, other: &Self) -> T {
        assert_eq!(self.n, other.n, "inner product of mismatched dimensions");
        let mut acc = T::zero();
        for i in 0..self.n {
            for j in 0..=i {
                let p = self.get(i, j).clone() * other.get(i, j).clone();
                acc = if i == j { acc + p } else { acc + p.clone() + p };
            }
        }
        acc
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.n, x.len(), "matrix-vector dimension mismatch");
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(T::zero(), |acc, j| acc + self.get(i, j).clone() * x[j].clone())
            })
            .collect()
    }

    /// `xᵀ M x`.
    pub fn quad_form(&self, x: &[T]) -> T {
        self.mul_vec(x)
            .into_iter()
            .zip(x)
            .fold(T::zero(), |acc, (a, b)| acc + a * b.clone())
    }

    pub fn to_dense(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// Ordinary product; generally not symmetric.
    pub fn mat_mul(&self, other: &Self) -> Matrix<T> {
        self.to_dense().mul(&other.to_dense())
    }

    /// `(A ⊗ B)[(i·n_B + k), (j·n_B + l)] = A_ij · B_kl`.
    pub fn kron(&self, other: &Self) -> Self {
        let nb = other.n;
        Self::from_fn(self.n * nb, |r, c| {
            let (i, k) = (r / nb, r % nb);
            let (j, l) = (c / nb, c % nb);
            self.get(i, j).clone() * other.get(k, l).clone()
        })
    }

    /// Principal submatrix on `idx`, in the given order.
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    /// Rectangular block with the given row and column indices.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n + other.n, |i, j| {
            if i < n && j < n {
                self.get(i, j).clone()
            } else if i >= n && j >= n {
                other.get(i - n, j - n).clone()
            } else {
                T::zero()
            }
        })
    }

    /// Lower-triangle entries row by row.
    pub fn lower_rows(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| (0..=i).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }
}

impl SymMatrix<Rational> {
    /// Row-major lower triangle, one row per line, rationals as `p/q`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for row in self.lower_rows() {
            let line: Vec<String> = row.iter().map(format_rational).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn lower_rows_text(&self) -> Vec<Vec<String>> {
        self.lower_rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect()
    }

    pub fn to_f64(&self) -> SymMatrix<f64> {
        self.map(crate::rational::to_f64)
    }
}

impl SymMatrix<f64> {
    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl<T: Scalar> Add for &SymMatrix<T> {
    type Output = SymMatrix<T>;

    fn add(self, rhs: &SymMatrix<T>) -> SymMatrix<T> {
        assert_eq!(self.n, rhs.n, "sum of mismatched dimensions");
        SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &SymMatrix<T> {
    type Output = SymMatrix<T>;

    fn sub(self, rhs: &SymMatrix<T>) -> SymMatrix<T> {
        assert_eq!(self.n, rhs.n, "difference of mismatched dimensions");
        SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for &SymMatrix<T> {
    type Output = SymMatrix<T>;

    fn neg(self) -> SymMatrix<T> {
        self.map(|v| -v.clone())
    }
}

impl<T: Scalar + fmt::Display> fmt::Debug for SymMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense row-major rectangular matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::DimensionMismatch("ragged rows".into()));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a.clone() * other.get(k, j).clone());
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.cols, x.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (b, &j) in cols.iter().enumerate() {
                m.set(i, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (a, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m.set(a, j, self.get(i, j).clone());
            }
        }
        m
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        Matrix::mul(self, rhs)
    }
}
