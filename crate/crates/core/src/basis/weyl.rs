//! Generalized Weyl bases `{V^v U^t}` for `ℂ^r ⊆ M_n^{⊕s}`.
//!
//! `V` is the cyclic shift in every block. `U` multiplies `u_{ijk}` by
//! `ε((Σ_{x<i} a_{xj} + k)/q)`, where `q` is the common column sum; for
//! each `j` the exponents enumerate `0..q`.

use num_complex::Complex64;

use crate::algebra::{BlockOperator, CMatrix, Phase};
use crate::error::{Error, Result};
use crate::inclusion::{InclusionSpec, Label};

use super::{Provenance, UnitaryBasis};

struct Shape {
    n: usize,
    q: u64,
}

fn shape(spec: &InclusionSpec) -> Result<Shape> {
    spec.validate()?;
    if spec.sub_dims().iter().any(|&m| m != 1) {
        return Err(Error::ShapeMismatch(format!(
            "sub-algebra must be abelian, got dimensions {:?}",
            spec.sub_dims()
        )));
    }
    let n = spec.super_dims()[0];
    if spec.super_dims().iter().any(|&x| x != n) {
        return Err(Error::ShapeMismatch(format!(
            "blocks must have equal size, got {:?}",
            spec.super_dims()
        )));
    }
    let sums: Vec<u64> = (0..spec.cols())
        .map(|j| (0..spec.rows()).map(|i| spec.entry(i, j)).sum())
        .collect();
    if sums.iter().any(|&x| x != sums[0]) {
        return Err(Error::ShapeMismatch(format!("column sums differ: {sums:?}")));
    }
    Ok(Shape {
        n: n as usize,
        q: sums[0],
    })
}

/// `V^v`: `e_p ↦ e_{p+v}` in every block.
fn shift_power(spec: &InclusionSpec, n: usize, v: usize) -> BlockOperator {
    let block = CMatrix::from_fn(n, n, |r, c| {
        if r == (c + v) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    BlockOperator::from_blocks(vec![block; spec.rows()]).expect("equal blocks")
}

fn clock_power(spec: &InclusionSpec, n: usize, q: u64, t: u64) -> BlockOperator {
    let emb = spec.validate().expect("validated");
    let blocks = (0..spec.rows())
        .map(|i| {
            let mut diag = vec![Complex64::new(0.0, 0.0); n];
            for j in 0..spec.cols() {
                let before: u64 = (0..i).map(|x| spec.entry(x, j)).sum();
                for k in 0..spec.entry(i, j) {
                    let p = emb.position(Label {
                        i,
                        j,
                        k: k as usize,
                        l: 0,
                    });
                    diag[p] = Phase::new(((before + k) * t) as i64, q).epsilon();
                }
            }
            crate::algebra::matrix::diagonal(&diag)
        })
        .collect();
    BlockOperator::from_blocks(blocks).expect("equal blocks")
}

/// `(V, U)`.
pub fn weyl_generators(spec: &InclusionSpec) -> Result<(BlockOperator, BlockOperator)> {
    let Shape { n, q } = shape(spec)?;
    Ok((shift_power(spec, n, 1), clock_power(spec, n, q, 1)))
}

/// The `nq` elements `V^v U^t`, ordered by `v * q + t`.
pub fn weyl_basis(spec: &InclusionSpec) -> Result<UnitaryBasis> {
    let Shape { n, q } = shape(spec)?;
    let clocks: Vec<BlockOperator> = (0..q).map(|t| clock_power(spec, n, q, t)).collect();
    let mut elements = Vec::with_capacity(n * q as usize);
    for v in 0..n {
        let shift = shift_power(spec, n, v);
        for u in &clocks {
            elements.push(&shift * u);
        }
    }
    UnitaryBasis::new(spec.clone(), elements, Provenance::Weyl)
}
