//! The spectral condition `Aᵗñ = d m̃`, Markov traces and `‖A‖²`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::{TraceVector, TracialState};
use crate::error::{Error, Result};

use super::spec::InclusionSpec;

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    /// Whether `Aᵗñ` is an integer multiple of `m̃`.
    pub holds: bool,
    pub d: Option<u64>,
    /// `Aᵗñ`, kept for diagnostics.
    pub at_n: Vec<u64>,
    /// `‖A‖²`, computed numerically.
    pub norm_squared: f64,
    pub connected: bool,
    /// Trace vector of the Markov trace; absent when the diagram is
    /// disconnected and the spectral condition fails.
    pub markov_trace: Option<TraceVector>,
    /// `Σ n_i² = d Σ m_j²`.
    pub quadratic_holds: bool,
    /// `ln d`, the relative entropy `H(A₁|A)` under the U-property.
    pub entropy_value: Option<f64>,
}

/// `‖A‖²`, the largest eigenvalue of `AᵗA`.
pub fn norm_squared(spec: &InclusionSpec) -> f64 {
    let a = integer_matrix(spec);
    let ata = a.transpose() * &a;
    ata.symmetric_eigenvalues().iter().copied().fold(0.0, f64::max)
}

fn integer_matrix(spec: &InclusionSpec) -> DMatrix<f64> {
    DMatrix::from_fn(spec.rows(), spec.cols(), |i, j| spec.entry(i, j) as f64)
}

/// The integer `d` with `Aᵗñ = d m̃`, if there is one. Pure integer
/// arithmetic; the inclusion must already be validated.
pub fn spectral_multiplier(spec: &InclusionSpec) -> Option<u64> {
    let v = spec.at_times_n();
    let m = spec.sub_dims();
    if !v[0].is_multiple_of(m[0]) {
        return None;
    }
    let d = v[0] / m[0];
    v.iter().zip(m).all(|(x, y)| *x == d * y).then_some(d)
}

pub fn check_spectral_condition(spec: &InclusionSpec) -> Result<SpectralReport> {
    spec.validate()?;
    let at_n = spec.at_times_n();
    let d = spectral_multiplier(spec);
    let norm_sq = norm_squared(spec);
    let connected = spec.is_connected();

    if let Some(d) = d {
        // consequences of Aᵗñ = dm̃, all exact
        let ata_m: Vec<u64> = {
            let am = spec.a_times_m();
            (0..spec.cols())
                .map(|j| (0..spec.rows()).map(|i| spec.entry(i, j) * am[i]).sum())
                .collect()
        };
        let aat_n: Vec<u64> = (0..spec.rows())
            .map(|i| (0..spec.cols()).map(|j| spec.entry(i, j) * at_n[j]).sum())
            .collect();
        debug_assert!(ata_m.iter().zip(spec.sub_dims()).all(|(x, m)| *x == d * m));
        debug_assert!(aat_n.iter().zip(spec.super_dims()).all(|(x, n)| *x == d * n));
        debug_assert!((norm_sq - d as f64).abs() <= 1e-9 * (d as f64).max(1.0));
    }

    let markov = match markov_trace(spec) {
        Ok(phi) => Some(phi.weights().clone()),
        Err(_) if d.is_some() => Some(TraceVector::Integer(spec.super_dims().to_vec())),
        Err(_) => None,
    };
    let quadratic_holds = d.is_some_and(|d| {
        let sn: u64 = spec.super_dims().iter().map(|n| n * n).sum();
        let sm: u64 = spec.sub_dims().iter().map(|m| m * m).sum();
        sn == d * sm
    });
    Ok(SpectralReport {
        holds: d.is_some(),
        d,
        at_n,
        norm_squared: norm_sq,
        connected,
        markov_trace: markov,
        quadratic_holds,
        entropy_value: d.map(|d| (d as f64).ln()),
    })
}

/// Markov trace: `AAᵗ p̃ = ‖A‖² p̃` with `p̃ > 0`. Returned exactly as `ñ`
/// when the spectral condition holds.
pub fn markov_trace(spec: &InclusionSpec) -> Result<TracialState> {
    spec.validate()?;
    if !spec.is_connected() {
        return Err(Error::DisconnectedDiagram);
    }
    let alg = spec.super_algebra();
    if spectral_multiplier(spec).is_some() {
        return TracialState::integer(alg, spec.super_dims().to_vec());
    }
    let a = integer_matrix(spec);
    let aat = &a * a.transpose();
    let eig = aat.symmetric_eigen();
    let top = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .map(|(k, _)| k)
        .expect("non-empty");
    let mut v: Vec<f64> = eig.eigenvectors.column(top).iter().copied().collect();
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    if v.iter().any(|&x| x <= 1e-12) {
        return Err(Error::DisconnectedDiagram);
    }
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
    TracialState::new(alg, TraceVector::Real(v))
}

/// The state used for "the" conditional expectation of a spec: trace vector
/// `ñ` when the spectral condition holds (connected or not), the Markov trace
/// otherwise.
pub fn default_state(spec: &InclusionSpec) -> Result<TracialState> {
    spec.validate()?;
    if spectral_multiplier(spec).is_some() {
        TracialState::integer(spec.super_algebra(), spec.super_dims().to_vec())
    } else {
        markov_trace(spec)
    }
}

/// `ln ‖A‖²` for specs satisfying the spectral condition.
pub fn entropy_value(spec: &InclusionSpec) -> Result<f64> {
    spec.validate()?;
    spectral_multiplier(spec)
        .map(|d| (d as f64).ln())
        .ok_or(Error::SpectralConditionFailed)
}
