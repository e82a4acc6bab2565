//! The coordinate basis `u_{ijkl}` realizing `B ⊆ A`.
//!
//! Inside block `i` of `A` the labels `(j, k, l)` are ordered
//! lexicographically: `u_{ijkl}` sits at `Σ_{v<j} a_{iv} m_v + k·m_j + l`.
//! The `k`-th copy of `M_{m_j}` in block `i` occupies the `m_j` consecutive
//! positions starting at `Σ_{v<j} a_{iv} m_v + k·m_j`.

use crate::algebra::{BlockOperator, CMatrix, MultiMatrixAlgebra};
use crate::error::{Error, Result};

use super::spec::InclusionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
}

/// One copy of `M_{m_j}` inside block `i` (a diagonal block of the
/// intermediate algebra `C`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CopyBlock {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub offset: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    spec: InclusionSpec,
    /// `column_offsets[i][j] = Σ_{v<j} a_{iv} m_v`
    column_offsets: Vec<Vec<usize>>,
    super_alg: MultiMatrixAlgebra,
    sub_alg: MultiMatrixAlgebra,
}

impl Embedding {
    pub(crate) fn new_unchecked(spec: InclusionSpec) -> Self {
        let column_offsets = spec
            .matrix()
            .iter()
            .map(|row| {
                let mut acc = 0usize;
                row.iter()
                    .zip(spec.sub_dims())
                    .map(|(a, m)| {
                        let here = acc;
                        acc += (a * m) as usize;
                        here
                    })
                    .collect()
            })
            .collect();
        let super_alg = spec.super_algebra();
        let sub_alg = spec.sub_algebra();
        Self {
            spec,
            column_offsets,
            super_alg,
            sub_alg,
        }
    }

    pub fn spec(&self) -> &InclusionSpec {
        &self.spec
    }

    pub fn super_algebra(&self) -> &MultiMatrixAlgebra {
        &self.super_alg
    }

    pub fn sub_algebra(&self) -> &MultiMatrixAlgebra {
        &self.sub_alg
    }

    pub fn position(&self, label: Label) -> usize {
        let m = self.spec.sub_dims()[label.j] as usize;
        self.column_offsets[label.i][label.j] + label.k * m + label.l
    }

    /// Labels of block `i` in position order.
    pub fn labels(&self, i: usize) -> Vec<Label> {
        let mut out = Vec::new();
        for j in 0..self.spec.cols() {
            for k in 0..self.spec.entry(i, j) as usize {
                for l in 0..self.spec.sub_dims()[j] as usize {
                    out.push(Label { i, j, k, l });
                }
            }
        }
        out
    }

    /// All `(i, j, k)` copies, ordered by `i` then position.
    pub fn copies(&self) -> Vec<CopyBlock> {
        let mut out = Vec::new();
        for i in 0..self.spec.rows() {
            for j in 0..self.spec.cols() {
                let len = self.spec.sub_dims()[j] as usize;
                for k in 0..self.spec.entry(i, j) as usize {
                    out.push(CopyBlock {
                        i,
                        j,
                        k,
                        offset: self.column_offsets[i][j] + k * len,
                        len,
                    });
                }
            }
        }
        out
    }

    /// Image of `Y ∈ B` in `A`.
    pub fn embed(&self, y: &BlockOperator) -> Result<BlockOperator> {
        y.check_algebra(&self.sub_alg)?;
        Ok(self.embed_blocks(y.blocks()))
    }

    pub(crate) fn embed_blocks(&self, ys: &[CMatrix]) -> BlockOperator {
        let mut out = BlockOperator::zero(&self.super_alg);
        for c in self.copies() {
            out.block_mut(c.i)
                .view_mut((c.offset, c.offset), (c.len, c.len))
                .copy_from(&ys[c.j]);
        }
        out
    }

    /// Reads back the `B`-component of an element of `embed(B)` from the
    /// first copy of each `M_{m_j}`.
    pub fn compress(&self, x: &BlockOperator) -> Result<BlockOperator> {
        x.check_algebra(&self.super_alg)?;
        let mut blocks: Vec<Option<CMatrix>> = vec![None; self.spec.cols()];
        for c in self.copies() {
            if blocks[c.j].is_none() {
                blocks[c.j] = Some(x.block(c.i).view((c.offset, c.offset), (c.len, c.len)).into_owned());
            }
        }
        BlockOperator::from_blocks(
            blocks
                .into_iter()
                .map(|b| b.ok_or(Error::EmptyColumn(0)))
                .collect::<Result<_>>()?,
        )
    }

    /// Minimal central projections `P_i` of `A` and `Q_j` of `B` (embedded).
    pub fn minimal_central_projections(&self) -> (Vec<BlockOperator>, Vec<BlockOperator>) {
        let p = (0..self.spec.rows())
            .map(|i| {
                let mut op = BlockOperator::zero(&self.super_alg);
                let n = self.super_alg.blocks()[i];
                *op.block_mut(i) = CMatrix::identity(n, n);
                op
            })
            .collect();
        let q = (0..self.spec.cols())
            .map(|j| {
                let mut op = BlockOperator::zero(&self.sub_alg);
                let m = self.sub_alg.blocks()[j];
                *op.block_mut(j) = CMatrix::identity(m, m);
                self.embed_blocks(op.blocks())
            })
            .collect();
        (p, q)
    }

    /// Embedded matrix units of `B`.
    pub fn sub_units(&self) -> Vec<BlockOperator> {
        BlockOperator::matrix_units(&self.sub_alg)
            .iter()
            .map(|u| self.embed_blocks(u.blocks()))
            .collect()
    }
}

/// `embed` as a free function over a spec.
pub fn embed(spec: &InclusionSpec, y: &BlockOperator) -> Result<BlockOperator> {
    spec.validate()?.embed(y)
}

pub fn minimal_central_projections(spec: &InclusionSpec) -> Result<(Vec<BlockOperator>, Vec<BlockOperator>)> {
    Ok(spec.validate()?.minimal_central_projections())
}
