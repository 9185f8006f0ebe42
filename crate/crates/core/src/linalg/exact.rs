//! Exact rational routines: elimination, rank, nullspaces, pseudo-inverses
//! and PSD certificates.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{LinalgError, Matrix, SymMatrix};
use crate::rational::Rational;

/// Record of a diagonally pivoted factorization `PᵀMP = L D Lᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LdlFactor {
    /// `(PᵀMP)_ij = M[perm[i], perm[j]]`.
    pub perm: Vec<usize>,
    /// Unit lower-triangular factor.
    pub l: Matrix<Rational>,
    /// Nonnegative pivots.
    pub d: Vec<Rational>,
}

impl LdlFactor {
    /// Recomputes `L D Lᵀ` and compares it with the permuted input.
    pub fn reproduces(&self, m: &SymMatrix<Rational>) -> bool {
        let n = m.n();
        if self.perm.len() != n || self.d.len() != n {
            return false;
        }
        if self.d.iter().any(|x| x.is_negative()) {
            return false;
        }
        for i in 0..n {
            if !self.l.get(i, i).is_one() || (i + 1..n).any(|j| !self.l.get(i, j).is_zero()) {
                return false;
            }
        }
        for i in 0..n {
            for j in 0..=i {
                let mut acc = Rational::zero();
                for k in 0..=j {
                    if !self.d[k].is_zero() {
                        acc += self.l.get(i, k) * &self.d[k] * self.l.get(j, k);
                    }
                }
                if &acc != m.get(self.perm[i], self.perm[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Outcome of an exact PSD test.
#[derive(Debug, Clone, PartialEq)]
pub enum PsdWitness {
    Psd(LdlFactor),
    /// `vᵀ M v = value < 0`.
    NotPsd {
        vector: Vec<Rational>,
        value: Rational,
    },
}

impl PsdWitness {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdWitness::Psd(_))
    }

    pub fn negative_direction(&self) -> Option<&[Rational]> {
        match self {
            PsdWitness::Psd(_) => None,
            PsdWitness::NotPsd { vector, .. } => Some(vector),
        }
    }

    /// Re-checks the witness against `m` from scratch.
    pub fn confirms(&self, m: &SymMatrix<Rational>) -> bool {
        match self {
            PsdWitness::Psd(f) => f.reproduces(m),
            PsdWitness::NotPsd { vector, value } => {
                vector.len() == m.n() && value.is_negative() && &m.quad_form(vector) == value
            }
        }
    }

    pub fn summary(&self) -> WitnessSummary {
        match self {
            PsdWitness::Psd(f) => WitnessSummary {
                psd: true,
                rank: Some(f.rank()),
                vector: None,
                value: None,
            },
            PsdWitness::NotPsd { vector, value } => WitnessSummary {
                psd: false,
                rank: None,
                vector: Some(vector.iter().map(ToString::to_string).collect()),
                value: Some(value.to_string()),
            },
        }
    }
}

/// Serializable digest of a [`PsdWitness`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessSummary {
    pub psd: bool,
    pub rank: Option<usize>,
    pub vector: Option<Vec<String>>,
    pub value: Option<String>,
}

/// Exact PSD test by symmetric elimination with diagonal pivoting.
///
/// A negative pivot, or an all-zero remaining diagonal with a nonzero
/// off-diagonal entry, yields an explicit direction of negative curvature.
#[allow(clippy::needless_range_loop)]
pub fn psd_check_exact(m: &SymMatrix<Rational>) -> PsdWitness {
    let n = m.n();
    let mut a = m.to_dense();
    let mut l = Matrix::<Rational>::identity(n);
    let mut d = vec![Rational::zero(); n];
    let mut perm: Vec<usize> = (0..n).collect();

    for k in 0..n {
        if let Some(j) = (k..n).find(|&j| a.get(j, j).is_negative()) {
            let mut z = vec![Rational::zero(); n];
            z[j] = Rational::one();
            return not_psd(m, &l, &perm, k, z);
        }
        let pivot = (k..n)
            .filter(|&j| a.get(j, j).is_positive())
            .max_by(|&x, &y| a.get(x, x).cmp(a.get(y, y)).then(y.cmp(&x)));
        let Some(p) = pivot else {
            for i in k..n {
                for j in k..i {
                    let s = a.get(i, j);
                    if !s.is_zero() {
                        // Zero diagonal: e_i - sign(s) e_j gives -2|s|.
                        let mut z = vec![Rational::zero(); n];
                        z[i] = Rational::one();
                        z[j] = if s.is_positive() {
                            -Rational::one()
                        } else {
                            Rational::one()
                        };
                        return not_psd(m, &l, &perm, k, z);
                    }
                }
            }
            break;
        };
        if p != k {
            swap_sym(&mut a, k, p);
            perm.swap(k, p);
            for c in 0..k {
                let t = l.get(k, c).clone();
                l.set(k, c, l.get(p, c).clone());
                l.set(p, c, t);
            }
        }
        let dk = a.get(k, k).clone();
        for i in k + 1..n {
            let lik = a.get(i, k) / &dk;
            if lik.is_zero() {
                continue;
            }
            for j in k + 1..=i {
                let v = a.get(i, j) - &lik * a.get(k, j);
                a.set(i, j, v.clone());
                a.set(j, i, v);
            }
            l.set(i, k, lik);
        }
        for i in k + 1..n {
            a.set(i, k, Rational::zero());
            a.set(k, i, Rational::zero());
        }
        d[k] = dk;
    }
    PsdWitness::Psd(LdlFactor { perm, l, d })
}

fn swap_sym(a: &mut Matrix<Rational>, i: usize, j: usize) {
    let n = a.rows();
    for c in 0..n {
        let t = a.get(i, c).clone();
        a.set(i, c, a.get(j, c).clone());
        a.set(j, c, t);
    }
    for r in 0..n {
        let t = a.get(r, i).clone();
        a.set(r, i, a.get(r, j).clone());
        a.set(r, j, t);
    }
}

/// Lifts a reduced direction `z` (supported on positions `>= k`) back to
/// the original coordinates through the partial factor.
fn not_psd(
    m: &SymMatrix<Rational>,
    l: &Matrix<Rational>,
    perm: &[usize],
    k: usize,
    z: Vec<Rational>,
) -> PsdWitness {
    let n = m.n();
    let mut w = z;
    for i in (0..k).rev() {
        let s = w.iter().enumerate().skip(i + 1).fold(w[i].clone(), |s, (j, wj)| {
            let lji = l.get(j, i);
            if lji.is_zero() {
                s
            } else {
                s - lji * wj
            }
        });
        w[i] = s;
    }
    let mut v = vec![Rational::zero(); n];
    for (i, wi) in w.into_iter().enumerate() {
        v[perm[i]] = wi;
    }
    let value = m.quad_form(&v);
    debug_assert!(value.is_negative());
    PsdWitness::NotPsd { vector: v, value }
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(m: &Matrix<Rational>) -> (Matrix<Rational>, Vec<usize>) {
    let mut r = m.clone();
    let (rows, cols) = (r.rows(), r.cols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..cols {
                let t = r.get(row, c).clone();
                r.set(row, c, r.get(p, c).clone());
                r.set(p, c, t);
            }
        }
        let inv = r.get(row, col).recip();
        for c in col..cols {
            let v = r.get(row, c) * &inv;
            r.set(row, c, v);
        }
        for i in 0..rows {
            if i == row {
                continue;
            }
            let f = r.get(i, col).clone();
            if f.is_zero() {
                continue;
            }
            for c in col..cols {
                let v = r.get(i, c) - &f * r.get(row, c);
                r.set(i, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (r, pivots)
}

pub fn rank(m: &Matrix<Rational>) -> usize {
    rref(m).1.len()
}

pub fn rank_exact(m: &SymMatrix<Rational>) -> usize {
    rank(&m.to_dense())
}

/// Basis of `{v : M v = 0}`, one vector per free column.
pub fn nullspace_basis(m: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            v
        })
        .collect()
}

pub fn nullspace_basis_sym(m: &SymMatrix<Rational>) -> Vec<Vec<Rational>> {
    nullspace_basis(&m.to_dense())
}

/// Gauss-Jordan inverse; `None` when singular or not square.
pub fn inverse(m: &Matrix<Rational>) -> Option<Matrix<Rational>> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, Rational::one());
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.get(i, n + j).clone());
        }
    }
    Some(inv)
}

/// Moore-Penrose inverse through a full-rank factorization `M = F G`:
/// `M⁺ = Gᵀ (G Gᵀ)⁻¹ (Fᵀ F)⁻¹ Fᵀ`.
pub fn pseudo_inverse_general(m: &Matrix<Rational>) -> Matrix<Rational> {
    let (r, pivots) = rref(m);
    let k = pivots.len();
    if k == 0 {
        return Matrix::zeros(m.cols(), m.rows());
    }
    let f = m.select_columns(&pivots);
    let g = r.select_rows(&(0..k).collect::<Vec<_>>());
    let ft = f.transpose();
    let gt = g.transpose();
    let ggt_inv = inverse(&g.mul(&gt)).expect("G has full row rank");
    let ftf_inv = inverse(&ft.mul(&f)).expect("F has full column rank");
    gt.mul(&ggt_inv).mul(&ftf_inv).mul(&ft)
}

pub fn pseudo_inverse(m: &SymMatrix<Rational>) -> SymMatrix<Rational> {
    let p = pseudo_inverse_general(&m.to_dense());
    SymMatrix::from_dense(&p).expect("pseudo-inverse of a symmetric matrix is symmetric")
}

/// Which condition of the pseudo-Schur route failed first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SchurFailure {
    BlockBNotPsd,
    RangeViolation,
    ComplementNotPsd,
}

/// Result of [`schur_psd_check`] on `[[A, C], [Cᵀ, B]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurReport {
    /// Size of the leading block `A`.
    pub split: usize,
    pub b_witness: PsdWitness,
    /// `range(Cᵀ) ⊆ range(B)`.
    pub range_ok: bool,
    /// `A - C B⁺ Cᵀ`.
    pub complement: SymMatrix<Rational>,
    pub complement_witness: PsdWitness,
    pub rank_b: usize,
    pub rank_complement: usize,
    pub failure: Option<SchurFailure>,
    /// Full-length vector with negative quadratic form, for the first failure.
    pub violation: Option<(Vec<Rational>, Rational)>,
}

impl SchurReport {
    pub fn is_psd(&self) -> bool {
        self.failure.is_none()
    }

    /// `rank(B) + rank(A - C B⁺ Cᵀ)`, meaningful when the range condition holds.
    pub fn rank_lower_bound(&self) -> Option<usize> {
        self.range_ok.then_some(self.rank_b + self.rank_complement)
    }
}

/// PSD decision for `[[A, C], [Cᵀ, B]]` with `A` of size `split`, through
/// `B ⪰ 0`, `range(Cᵀ) ⊆ range(B)` and `A - C B⁺ Cᵀ ⪰ 0`.
pub fn schur_psd_check(m: &SymMatrix<Rational>, split: usize) -> Result<SchurReport, LinalgError> {
    let n = m.n();
    if split > n {
        return Err(LinalgError::BadBlockSizes { split, n });
    }
    let ia: Vec<usize> = (0..split).collect();
    let ib: Vec<usize> = (split..n).collect();
    let a = m.principal(&ia);
    let b = m.principal(&ib);
    let c = m.block(&ia, &ib);

    let b_witness = psd_check_exact(&b);
    let rank_b = rank_exact(&b);

    // range(Cᵀ) ⊆ range(B) iff C y = 0 for every y in N(B).
    let null_b = nullspace_basis_sym(&b);
    let range_break = null_b.iter().find_map(|y| {
        let cy = c.mul_vec(y);
        cy.iter().any(|v| !v.is_zero()).then(|| (y.clone(), cy))
    });
    let range_ok = range_break.is_none();

    let b_pinv = pseudo_inverse(&b);
    let ct = c.transpose();
    let cbc = c.mul(&b_pinv.to_dense()).mul(&ct);
    let complement = SymMatrix::from_fn(split, |i, j| a.get(i, j) - cbc.get(i, j));
    let complement_witness = psd_check_exact(&complement);
    let rank_complement = rank_exact(&complement);

    let (failure, violation) = if let PsdWitness::NotPsd { vector, .. } = &b_witness {
        let mut v = vec![Rational::zero(); split];
        v.extend(vector.iter().cloned());
        (Some(SchurFailure::BlockBNotPsd), Some(v))
    } else if let Some((y, cy)) = range_break {
        // x = -s·Cy with s chosen so that the form is negative.
        let q = a.quad_form(&cy);
        let norm2 = cy.iter().fold(Rational::zero(), |acc, v| acc + v * v);
        let s = if q.is_positive() { &norm2 / &q } else { Rational::one() };
        let mut v: Vec<Rational> = cy.iter().map(|x| -(&s * x)).collect();
        v.extend(y);
        (Some(SchurFailure::RangeViolation), Some(v))
    } else if let PsdWitness::NotPsd { vector, .. } = &complement_witness {
        let tail = b_pinv.to_dense().mul(&ct).mul_vec(vector);
        let mut v = vector.clone();
        v.extend(tail.into_iter().map(|x| -x));
        (Some(SchurFailure::ComplementNotPsd), Some(v))
    } else {
        (None, None)
    };
    let violation = violation.map(|v| {
        let value = m.quad_form(&v);
        debug_assert!(value.is_negative());
        (v, value)
    });

    Ok(SchurReport {
        split,
        b_witness,
        range_ok,
        complement,
        complement_witness,
        rank_b,
        rank_complement,
        failure,
        violation,
    })
}
