//! Fourier, circulant and quasi-circulant matrices.
//!
//! Circulants are parametrized by their eigenvalues, `C(b) = F* D(b) F`, and
//! are always assembled from the closed entry formula
//! `C(b)[j,k] = (1/n) Σ_y b_y ε(y(k-j)/n)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::phase::Phase;
use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// `F_n = (1/√n) [ε(jk/n)]`.
pub fn fourier_matrix(n: usize) -> CMatrix {
    assert!(n >= 1);
    let scale = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |j, k| Phase::new((j * k) as i64, n as u64).epsilon() * scale)
}

/// Diagonal matrix `D(a)`.
pub fn diagonal(entries: &[Complex64]) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries))
}

/// Circulant matrix with the given eigenvalues.
pub fn circulant(eigenvalues: &[Complex64]) -> Result<CMatrix> {
    let n = eigenvalues.len();
    if n == 0 {
        return Err(Error::EmptyInput("circulant eigenvalues"));
    }
    // first row determines everything: entry (j,k) depends on k-j mod n
    let row: Vec<Complex64> = (0..n)
        .map(|delta| {
            eigenvalues
                .iter()
                .enumerate()
                .map(|(y, b)| b * Phase::new((y * delta) as i64, n as u64).epsilon())
                .sum::<Complex64>()
                / n as f64
        })
        .collect();
    Ok(CMatrix::from_fn(n, n, |j, k| row[(k + n - j) % n]))
}

/// Circulant whose eigenvalues are `ε(phases[y])`; the phase sums are exact.
pub fn phase_circulant(phases: &[Phase]) -> Result<CMatrix> {
    let n = phases.len();
    if n == 0 {
        return Err(Error::EmptyInput("circulant eigenvalues"));
    }
    let row: Vec<Complex64> = (0..n)
        .map(|delta| {
            phases
                .iter()
                .enumerate()
                .map(|(y, p)| (*p + Phase::new((y * delta) as i64, n as u64)).epsilon())
                .sum::<Complex64>()
                / n as f64
        })
        .collect();
    Ok(CMatrix::from_fn(n, n, |j, k| row[(k + n - j) % n]))
}

/// Quasi-circulant `D(d1) C(eigenvalues) D(d2)`, built entrywise.
pub fn quasi_circulant(d1: &[Complex64], eigenvalues: &[Complex64], d2: &[Complex64]) -> Result<CMatrix> {
    let n = eigenvalues.len();
    if d1.len() != n {
        return Err(Error::LengthMismatch {
            what: "left diagonal",
            expected: n,
            actual: d1.len(),
        });
    }
    if d2.len() != n {
        return Err(Error::LengthMismatch {
            what: "right diagonal",
            expected: n,
            actual: d2.len(),
        });
    }
    let c = circulant(eigenvalues)?;
    Ok(CMatrix::from_fn(n, n, |j, k| d1[j] * c[(j, k)] * d2[k]))
}

/// Cyclic shift `e_j ↦ e_{j+1 mod n}`.
pub fn cyclic_shift(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |j, k| {
        if j == (k + 1) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}
