use num_traits::{One, Signed, Zero};

use super::{CertError, Certificate, Provenance};
use crate::linalg::SymMatrix;
use crate::ops::complete_weighted;
use crate::rational::{int, Rational};

/// Intermediate quantities of the rank `n-1` construction.
#[derive(Debug, Clone, PartialEq)]
pub struct NondominatingParts {
    pub m: Vec<Rational>,
    pub total: Rational,
    /// `u[i][j] = 1` for `j != i`, `u[i][i] = -(M - m_i)/m_i`.
    pub u: Vec<Vec<Rational>>,
    /// `ε_i = ((M - m_i)/m_i)² - 1`.
    pub eps: Vec<Rational>,
    pub t: Rational,
    /// `d'_i = (1 - t)/ε_i`.
    pub d: Vec<Rational>,
    /// `Σ d'_i u_i u_iᵀ`.
    pub x: SymMatrix<Rational>,
}

/// Builds the vectors, weights and primal matrix for masses `m`.
pub fn nondominating_parts(m: &[Rational]) -> Result<NondominatingParts, CertError> {
    let n = m.len();
    if n < 3 {
        return Err(CertError::TooSmall { n, min: 3 });
    }
    if let Some(index) = m.iter().position(|x| !x.is_positive()) {
        return Err(CertError::NonpositiveMass { index });
    }
    let total = m.iter().fold(Rational::zero(), |acc, x| acc + x);
    if let Some(index) = m.iter().position(|x| x + x >= total) {
        return Err(CertError::Dominating { index });
    }
    let ratio: Vec<Rational> = m.iter().map(|mi| (&total - mi) / mi).collect();
    let u: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if j == i { -ratio[i].clone() } else { Rational::one() })
                .collect()
        })
        .collect();
    let eps: Vec<Rational> = ratio.iter().map(|r| r * r - Rational::one()).collect();
    let inv_sum = eps.iter().fold(Rational::zero(), |acc, e| acc + e.recip());
    let t = &inv_sum / (Rational::one() + &inv_sum);
    let d: Vec<Rational> = eps.iter().map(|e| (Rational::one() - &t) / e).collect();
    let mut x = SymMatrix::zeros(n);
    for (ui, di) in u.iter().zip(&d) {
        x = &x + &SymMatrix::outer(ui).scale(di);
    }
    Ok(NondominatingParts {
        m: m.to_vec(),
        total,
        u,
        eps,
        t,
        d,
        x,
    })
}

/// Rank `n-1` optimum for the complete graph weighted by a non-dominating
/// `m`, with `Y = (M/4) Diag(m)` and `S = m mᵀ / 4`.
pub fn cert_nondominating(m: &[Rational]) -> Result<Certificate, CertError> {
    let parts = nondominating_parts(m)?;
    let g = complete_weighted(m)?;
    let quarter = Rational::new(1.into(), 4.into());
    let y: Vec<Rational> = m.iter().map(|mi| &parts.total * mi * &quarter).collect();
    let cert = Certificate::new(&g, parts.x, y, Provenance::NonDominating)?;
    debug_assert_eq!(cert.s, SymMatrix::outer(m).scale(&quarter));
    debug_assert_eq!(cert.objective, &parts.total * &parts.total / int(4));
    Ok(cert)
}
