//! Numeric value of the relaxation with a dual bound.
//!
//! [`solve_phi`] runs a primal-dual interior-point method on
//! `max ⟨C, X⟩, diag X = 1, X ⪰ 0` with `C = L/4` and its dual
//! `min 1ᵀy, Diag(y) - C ⪰ 0`. The returned `phi` is the dual objective after
//! shifting `y` until the slack passes an independent Jacobi eigen check, so
//! it is an upper bound on the optimum up to floating-point rounding.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::linalg::{eigen_sym, LinalgError, SymMatrix};
use crate::ops::{split, with_added_weight, OpsError, SplitSpec};
use crate::oracle::{brute_force_maxcut, OracleError};
use crate::rational::{to_f64, Rational};

pub const DEFAULT_TOL: f64 = 1e-7;
/// Largest graph accepted by the numeric path.
pub const SDP_N_CAP: usize = 256;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SdpError {
    #[error("no convergence after {iterations} iterations (gap {gap:e})")]
    NoConvergence { iterations: usize, gap: f64 },
    #[error("graph has {n} vertices, above the numeric cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Ops(#[from] OpsError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverOptions {
    pub tol: f64,
    /// Defaults to `50·n²`.
    pub max_iterations: Option<usize>,
    /// Drives the random perturbations of [`phi_property_suite`].
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: DEFAULT_TOL,
            max_iterations: None,
            seed: DEFAULT_SEED,
        }
    }
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        SolverOptions {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiResult {
    /// Dual bound `Σ y_i`.
    pub phi: f64,
    pub dual_diag: Vec<f64>,
    /// `⟨C, X⟩` at the unit-diagonal primal iterate.
    pub primal_value: f64,
    pub gap: f64,
    pub iterations: usize,
    pub tol: f64,
    /// `λ_min(Diag(y) - L/4)` from the Jacobi check.
    pub dual_residual: f64,
}

pub fn solve_phi(g: &Graph, tol: f64) -> Result<PhiResult, SdpError> {
    solve_phi_with(g, &SolverOptions::with_tol(tol))
}

pub fn solve_phi_with(g: &Graph, opts: &SolverOptions) -> Result<PhiResult, SdpError> {
    let n = g.n();
    let tol = opts.tol;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SdpError::InvalidTolerance(tol));
    }
    if n == 0 {
        return Err(SdpError::Empty);
    }
    if n > SDP_N_CAP {
        return Err(SdpError::TooLarge { n, cap: SDP_N_CAP });
    }
    let budget = opts.max_iterations.unwrap_or(50 * n * n);
    let lq = g.laplacian().to_f64();
    let c = DMatrix::from_fn(n, n, |i, j| lq.get(i, j) / 4.0);

    let mut x = DMatrix::<f64>::identity(n, n);
    let mut y = DVector::from_fn(n, |i, _| c.row(i).iter().map(|v| v.abs()).sum::<f64>() + 1.0);
    let mut sigma = 0.5;
    let mut last_gap = f64::INFINITY;

    for iter in 1..=budget {
        let z = DMatrix::from_diagonal(&y) - &c;
        let xz = x.component_mul(&z).sum();
        let scale = y.sum().abs().max(1.0);
        if xz <= 0.25 * tol * scale || iter == budget {
            let r = finalize(&c, &x, &y, &lq, tol, iter)?;
            last_gap = r.gap;
            if r.gap <= tol * r.phi.abs().max(1.0) {
                return Ok(r);
            }
            if iter == budget {
                break;
            }
        }
        let Some(zc) = Cholesky::new(z.clone()) else {
            let r = finalize(&c, &x, &y, &lq, tol, iter)?;
            if r.gap <= tol * r.phi.abs().max(1.0) {
                return Ok(r);
            }
            return Err(SdpError::NoConvergence { iterations: iter, gap: r.gap });
        };
        let zi = zc.inverse();
        let mu = sigma * xz / n as f64;
        let m = zi.component_mul(&x);
        let rhs = DVector::from_fn(n, |i, _| mu * zi[(i, i)] - 1.0);
        let dy = match Cholesky::new(m.clone()) {
            Some(mc) => mc.solve(&rhs),
            None => match m.lu().solve(&rhs) {
                Some(v) => v,
                None => return Err(SdpError::NoConvergence { iterations: iter, gap: xz }),
            },
        };
        let mut dx = &zi * mu - &x - &zi * DMatrix::from_diagonal(&dy) * &x;
        dx = (&dx + dx.transpose()) * 0.5;
        let dz = DMatrix::from_diagonal(&dy);

        let ap = step_length(&x, &dx);
        let ad = step_length(&z, &dz);
        x += &dx * ap;
        y += &dy * ad;
        sigma = if ap.min(ad) > 0.9 {
            0.1
        } else if ap.min(ad) > 0.5 {
            0.3
        } else {
            0.5
        };
    }
    Err(SdpError::NoConvergence {
        iterations: budget,
        gap: last_gap,
    })
}

/// Largest step up to 1 keeping `a + α·da` positive definite, damped by 0.95.
fn step_length(a: &DMatrix<f64>, da: &DMatrix<f64>) -> f64 {
    let Some(ch) = Cholesky::new(a.clone()) else {
        return 0.0;
    };
    let l = ch.l();
    let Some(li) = l.clone().try_inverse() else {
        return 0.0;
    };
    let w = &li * da * li.transpose();
    let w = (&w + w.transpose()) * 0.5;
    let lmin = SymmetricEigen::new(w).eigenvalues.min();
    if lmin >= 0.0 {
        1.0
    } else {
        (0.95 * (-1.0 / lmin)).min(1.0)
    }
}

fn finalize(
    c: &DMatrix<f64>,
    x: &DMatrix<f64>,
    y: &DVector<f64>,
    lq: &SymMatrix<f64>,
    tol: f64,
    iterations: usize,
) -> Result<PhiResult, SdpError> {
    let n = c.nrows();
    let d: Vec<f64> = (0..n).map(|i| x[(i, i)].max(f64::MIN_POSITIVE).sqrt()).collect();
    let xn = DMatrix::from_fn(n, n, |i, j| x[(i, j)] / (d[i] * d[j]));
    let primal_value = xn.component_mul(c).sum();

    let mut dual: Vec<f64> = y.iter().copied().collect();
    let slack = |dual: &[f64]| SymMatrix::from_fn(n, |i, j| {
        let v = -lq.get(i, j) / 4.0;
        if i == j {
            v + dual[i]
        } else {
            v
        }
    });
    let lmin = eigen_sym(&slack(&dual), 1e-9)?.min();
    if lmin < 0.0 {
        for v in dual.iter_mut() {
            *v -= lmin;
        }
    }
    let dual_residual = eigen_sym(&slack(&dual), 1e-9)?.min();
    let phi: f64 = dual.iter().sum();
    Ok(PhiResult {
        phi,
        dual_diag: dual,
        primal_value,
        gap: phi - primal_value,
        iterations,
        tol,
        dual_residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ExactnessVerdict {
    ExactWithin { tol: f64 },
    GapAtLeast { delta: f64 },
    Undecided { delta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactnessReport {
    pub verdict: ExactnessVerdict,
    pub phi: f64,
    #[serde(with = "crate::rational::serde_str")]
    pub maxcut: Rational,
    pub delta: f64,
    /// Band half-width `3·tol·max(1, |maxcut|)`.
    pub band: f64,
}

/// Compares `φ` with the brute-force Max-Cut: exact when the difference is
/// within `3·tol` (relative to `max(1, |mc|)`), a gap when above it.
pub fn exactness_numeric(g: &Graph, tol: f64) -> Result<ExactnessReport, SdpError> {
    let mc = brute_force_maxcut(g)?.value;
    let phi = solve_phi(g, tol)?.phi;
    let mcf = to_f64(&mc);
    let delta = phi - mcf;
    let band = 3.0 * tol * mcf.abs().max(1.0);
    let verdict = if delta.abs() <= band {
        ExactnessVerdict::ExactWithin { tol: band }
    } else if delta > band {
        ExactnessVerdict::GapAtLeast { delta }
    } else {
        ExactnessVerdict::Undecided { delta }
    };
    Ok(ExactnessReport {
        verdict,
        phi,
        maxcut: mc,
        delta,
        band,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub allowed: f64,
    pub passed: bool,
}

impl PropertyCheck {
    fn eq(lhs: f64, rhs: f64, allowed: f64) -> Self {
        PropertyCheck {
            lhs,
            rhs,
            allowed,
            passed: (lhs - rhs).abs() <= allowed,
        }
    }

    fn le(lhs: f64, rhs: f64, allowed: f64) -> Self {
        PropertyCheck {
            lhs,
            rhs,
            allowed,
            passed: lhs <= rhs + allowed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiPropertyReport {
    pub phi: f64,
    /// `φ(kG)` against `k·φ(G)`.
    pub scaling: PropertyCheck,
    /// `φ(G)` against `φ(G')` for a random weight increase.
    pub monotonicity: PropertyCheck,
    /// `φ(split(G))` against `φ(G)`.
    pub split_invariance: PropertyCheck,
    /// Perturbed pair and added weight used for the monotonicity check.
    pub perturbation: (usize, usize, String),
}

impl PhiPropertyReport {
    pub fn passed(&self) -> bool {
        self.scaling.passed && self.monotonicity.passed && self.split_invariance.passed
    }
}

/// Numeric checks of scaling, monotonicity and split invariance.
pub fn phi_property_suite(
    g: &Graph,
    k: &Rational,
    spec: &SplitSpec,
    opts: &SolverOptions,
) -> Result<PhiPropertyReport, SdpError> {
    let tol = opts.tol;
    let base = solve_phi_with(g, opts)?.phi;
    let kf = to_f64(k);
    let scaled = solve_phi_with(&g.scaled(k), opts)?.phi;
    let scaling = PropertyCheck::eq(scaled, kf * base, 2.0 * tol * (kf * base).abs().max(1.0));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = g.n();
    let (u, v) = if n >= 2 {
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        (u, v)
    } else {
        (0, 0)
    };
    let delta = Rational::new(rng.random_range(1i64..=8).into(), 8.into());
    let bumped = if n >= 2 {
        with_added_weight(g, u, v, &delta)
    } else {
        g.clone()
    };
    let raised = solve_phi_with(&bumped, opts)?.phi;
    let monotonicity = PropertyCheck::le(base, raised, tol * raised.abs().max(1.0));

    let (gs, _) = split(g, spec)?;
    let split_phi = solve_phi_with(&gs, opts)?.phi;
    let split_invariance = PropertyCheck::eq(split_phi, base, 2.0 * tol * base.abs().max(1.0));

    Ok(PhiPropertyReport {
        phi: base,
        scaling,
        monotonicity,
        split_invariance,
        perturbation: (u.min(v), u.max(v), delta.to_string()),
    })
}
