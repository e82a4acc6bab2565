//! Bases `{V^t U^t : 0 ≤ t < d}` for abelian `B = ℂ^r`.
//!
//! `V = ⊕_i C(ε(y/d))_{y<n_i}` and `U` is diagonal with entry
//! `ε((Σ_{x<i} n_x a_{xj} + k n_i)/d)` on `u_{ijk}`. Powers are formed on
//! phases, so `V^t U^t` has no accumulated rounding from repeated products.

use rayon::prelude::*;

use crate::algebra::{phase_circulant, BlockOperator, CMatrix, Phase};
use crate::error::{Error, Result};
use crate::inclusion::{check_spectral_condition, InclusionSpec, Label};

use super::{Provenance, UnitaryBasis};

/// The pair `(V, U)`, requiring an abelian sub-algebra and the spectral
/// condition.
pub fn abelian_generators(spec: &InclusionSpec) -> Result<(BlockOperator, BlockOperator)> {
    let d = abelian_d(spec)?;
    Ok((power(spec, d, 1, Part::V), power(spec, d, 1, Part::U)))
}

pub fn abelian_basis(spec: &InclusionSpec) -> Result<UnitaryBasis> {
    let d = abelian_d(spec)?;
    let elements: Vec<BlockOperator> = (0..d)
        .into_par_iter()
        .map(|t| {
            let v = power(spec, d, t, Part::V);
            let u = power(spec, d, t, Part::U);
            &v * &u
        })
        .collect();
    let provenance = if spec.cols() == 1 {
        Provenance::Ckp
    } else {
        Provenance::Abelian
    };
    UnitaryBasis::new(spec.clone(), elements, provenance)
}

fn abelian_d(spec: &InclusionSpec) -> Result<u64> {
    let emb = spec.validate()?;
    if !emb.sub_algebra().is_abelian() {
        return Err(Error::NotAbelian(spec.sub_dims().to_vec()));
    }
    check_spectral_condition(spec)?.d.ok_or(Error::SpectralConditionFailed)
}

#[derive(Clone, Copy)]
enum Part {
    V,
    U,
}

/// `V^t` or `U^t`.
fn power(spec: &InclusionSpec, d: u64, t: u64, part: Part) -> BlockOperator {
    let emb = spec.validate().expect("validated");
    let n = spec.super_dims();
    let blocks: Vec<CMatrix> = (0..spec.rows())
        .map(|i| match part {
            Part::V => {
                let phases: Vec<Phase> = (0..n[i]).map(|y| Phase::new((y * t) as i64, d)).collect();
                phase_circulant(&phases).expect("n_i ≥ 1")
            }
            Part::U => {
                let mut diag = vec![num_complex::Complex64::new(0.0, 0.0); n[i] as usize];
                for j in 0..spec.cols() {
                    let offset: u64 = (0..i).map(|x| n[x] * spec.entry(x, j)).sum();
                    for k in 0..spec.entry(i, j) {
                        let p = emb.position(Label {
                            i,
                            j,
                            k: k as usize,
                            l: 0,
                        });
                        diag[p] = Phase::new(((offset + k * n[i]) * t) as i64, d).epsilon();
                    }
                }
                crate::algebra::matrix::diagonal(&diag)
            }
        })
        .collect();
    BlockOperator::from_blocks(blocks).expect("block shapes")
}
