//! Cyclic Jacobi eigensolver for dense symmetric `f64` matrices.

use super::{LinalgError, Matrix, SymMatrix};

/// Largest dimension accepted by [`eigen_sym`].
pub const EIGEN_DIM_CAP: usize = 4096;
pub const DEFAULT_EIGEN_TOL: f64 = 1e-9;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order; column `k` of `vectors` pairs with `values[k]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Matrix<f64>,
    pub sweeps: usize,
}

impl Eigen {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }
}

/// Diagonalizes `m` by cyclic Jacobi rotations.
///
/// Every returned pair satisfies `‖Mv - λv‖∞ ≤ tol·‖M‖∞`.
pub fn eigen_sym(m: &SymMatrix<f64>, tol: f64) -> Result<Eigen, LinalgError> {
    let n = m.n();
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(LinalgError::InvalidTolerance(tol));
    }
    if n > EIGEN_DIM_CAP {
        return Err(LinalgError::TooLarge { n, cap: EIGEN_DIM_CAP });
    }
    let mut a = m.to_dense();
    let mut v = Matrix::<f64>::identity(n);
    let norm = m.norm_inf();
    let fro: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).powi(2))
        .sum::<f64>()
        .sqrt();
    let target = f64::EPSILON * fro;

    let mut sweeps = 0;
    loop {
        let off: f64 = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).powi(2))
            .sum::<f64>()
            .sqrt();
        if off <= target || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = *a.get(p, q);
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = *a.get(p, p);
                let aqq = *a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(a.get(j, j)));
    let values: Vec<f64> = order.iter().map(|&i| *a.get(i, i)).collect();
    let vectors = v.select_columns(&order);

    let bound = tol * norm.max(f64::MIN_POSITIVE);
    for (k, &lambda) in values.iter().enumerate() {
        let x = vectors.column(k);
        let mx = m.mul_vec(&x);
        let res = mx
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - lambda * b).abs())
            .fold(0.0, f64::max);
        if res > bound && norm > 0.0 {
            return Err(LinalgError::NoConvergence { sweeps });
        }
    }
    Ok(Eigen { values, vectors, sweeps })
}

fn rotate(a: &mut Matrix<f64>, v: &mut Matrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = *a.get(k, p);
        let akq = *a.get(k, q);
        a.set(k, p, c * akp - s * akq);
        a.set(k, q, s * akp + c * akq);
    }
    for k in 0..n {
        let apk = *a.get(p, k);
        let aqk = *a.get(q, k);
        a.set(p, k, c * apk - s * aqk);
        a.set(q, k, s * apk + c * aqk);
    }
    for k in 0..n {
        let vkp = *v.get(k, p);
        let vkq = *v.get(k, q);
        v.set(k, p, c * vkp - s * vkq);
        v.set(k, q, s * vkp + c * vkq);
    }
}

pub fn lambda_min(m: &SymMatrix<f64>) -> Result<f64, LinalgError> {
    Ok(eigen_sym(m, DEFAULT_EIGEN_TOL)?.min())
}

pub fn lambda_max(m: &SymMatrix<f64>) -> Result<f64, LinalgError> {
    Ok(eigen_sym(m, DEFAULT_EIGEN_TOL)?.max())
}
