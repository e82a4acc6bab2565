//! Multi-matrix algebras `M_{n_0} ⊕ … ⊕ M_{n_{s-1}}` and their elements.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::matrix::{max_abs, CMatrix};
use crate::error::{Error, Result};

/// Block dimensions of a multi-matrix algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiMatrixAlgebra {
    blocks: Vec<usize>,
}

impl MultiMatrixAlgebra {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidAlgebra("no blocks".into()));
        }
        if let Some(i) = blocks.iter().position(|&n| n == 0) {
            return Err(Error::InvalidAlgebra(format!("block {i} has dimension 0")));
        }
        Ok(Self { blocks })
    }

    pub fn full(n: usize) -> Self {
        Self::new(vec![n]).expect("n >= 1")
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// `Σ n_i`, the dimension of the space the algebra acts on.
    pub fn ambient_dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// `Σ n_i²`, the vector-space dimension.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|n| n * n).sum()
    }

    /// Offset of block `i` on the ambient space.
    pub fn block_offset(&self, i: usize) -> usize {
        self.blocks[..i].iter().sum()
    }

    pub fn is_abelian(&self) -> bool {
        self.blocks.iter().all(|&n| n == 1)
    }
}

/// An element `⊕_i X_i` of a multi-matrix algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    blocks: Vec<CMatrix>,
}

impl BlockOperator {
    pub fn from_blocks(blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidAlgebra("no blocks".into()));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.nrows() != b.ncols() || b.nrows() == 0 {
                return Err(Error::InvalidAlgebra(format!(
                    "block {i} has shape {}x{}",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        Ok(Self { blocks })
    }

    /// Checks the shapes against `alg` as well.
    pub fn in_algebra(alg: &MultiMatrixAlgebra, blocks: Vec<CMatrix>) -> Result<Self> {
        let op = Self::from_blocks(blocks)?;
        op.check_algebra(alg)?;
        Ok(op)
    }

    pub fn identity(alg: &MultiMatrixAlgebra) -> Self {
        Self {
            blocks: alg.blocks.iter().map(|&n| CMatrix::identity(n, n)).collect(),
        }
    }

    pub fn zero(alg: &MultiMatrixAlgebra) -> Self {
        Self {
            blocks: alg.blocks.iter().map(|&n| CMatrix::zeros(n, n)).collect(),
        }
    }

    pub fn scalar(alg: &MultiMatrixAlgebra, z: Complex64) -> Self {
        Self::identity(alg).scale(z)
    }

    /// Matrix unit `e_{ab}` in block `i`.
    pub fn matrix_unit(alg: &MultiMatrixAlgebra, i: usize, a: usize, b: usize) -> Self {
        let mut op = Self::zero(alg);
        op.blocks[i][(a, b)] = Complex64::new(1.0, 0.0);
        op
    }

    /// All matrix units, block by block, row-major inside a block.
    pub fn matrix_units(alg: &MultiMatrixAlgebra) -> Vec<Self> {
        let mut out = Vec::with_capacity(alg.dimension());
        for (i, &n) in alg.blocks.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    out.push(Self::matrix_unit(alg, i, a, b));
                }
            }
        }
        out
    }

    /// Entries drawn uniformly from the unit square in each of re/im.
    pub fn random<R: Rng + ?Sized>(alg: &MultiMatrixAlgebra, rng: &mut R) -> Self {
        Self {
            blocks: alg
                .blocks
                .iter()
                .map(|&n| {
                    CMatrix::from_fn(n, n, |_, _| {
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                    })
                })
                .collect(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }

    pub fn algebra(&self) -> MultiMatrixAlgebra {
        MultiMatrixAlgebra { blocks: self.dims() }
    }

    pub fn check_algebra(&self, alg: &MultiMatrixAlgebra) -> Result<()> {
        let dims = self.dims();
        if dims != alg.blocks {
            return Err(Error::AlgebraMismatch {
                left: dims,
                right: alg.blocks.clone(),
            });
        }
        Ok(())
    }

    pub fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.blocks.len() != other.blocks.len()
            || self
                .blocks
                .iter()
                .zip(&other.blocks)
                .any(|(a, b)| a.nrows() != b.nrows())
        {
            return Err(Error::AlgebraMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    pub fn block_mut(&mut self, i: usize) -> &mut CMatrix {
        &mut self.blocks[i]
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<CMatrix> {
        self.blocks
    }

    pub fn adjoint(&self) -> Self {
        Self {
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self {
            blocks: self.blocks.iter().map(|b| b * z).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_algebra(rhs)?;
        Ok(self * rhs)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_algebra(rhs)?;
        Ok(self + rhs)
    }

    /// `Σ_i trace(X_i)` per block.
    pub fn block_traces(&self) -> Vec<Complex64> {
        self.blocks.iter().map(|b| b.trace()).collect()
    }

    /// Largest entry modulus over all blocks.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(max_abs).fold(0.0, f64::max)
    }

    /// Block-diagonal matrix on the ambient space.
    pub fn to_dense(&self) -> CMatrix {
        let n: usize = self.blocks.iter().map(|b| b.nrows()).sum();
        let mut out = CMatrix::zeros(n, n);
        let mut off = 0;
        for b in &self.blocks {
            let k = b.nrows();
            out.view_mut((off, off), (k, k)).copy_from(b);
            off += k;
        }
        out
    }

    /// Extracts the diagonal blocks of an ambient matrix and reports the
    /// largest discarded off-block entry.
    pub fn from_dense(alg: &MultiMatrixAlgebra, m: &CMatrix) -> Result<(Self, f64)> {
        let n = alg.ambient_dim();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::LengthMismatch {
                what: "ambient matrix",
                expected: n,
                actual: m.nrows(),
            });
        }
        let mut blocks = Vec::with_capacity(alg.blocks.len());
        let mut owner = Vec::with_capacity(n);
        for (i, &k) in alg.blocks.iter().enumerate() {
            let off = alg.block_offset(i);
            blocks.push(m.view((off, off), (k, k)).into_owned());
            owner.extend(std::iter::repeat_n(i, k));
        }
        let mut off_block: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                if owner[r] != owner[c] {
                    off_block = off_block.max(m[(r, c)].norm());
                }
            }
        }
        Ok((Self { blocks }, off_block))
    }

    /// Tensor product; block `(i1, i2)` sits at index `i1 * s2 + i2`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut blocks = Vec::with_capacity(self.blocks.len() * other.blocks.len());
        for a in &self.blocks {
            for b in &other.blocks {
                blocks.push(a.kronecker(b));
            }
        }
        Self { blocks }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Self { blocks }
    }

    /// `‖X X* − I‖∞`.
    pub fn unitarity_defect(&self) -> f64 {
        self.blocks
            .iter()
            .map(|b| max_abs(&(b * b.adjoint() - DMatrix::identity(b.nrows(), b.nrows()))))
            .fold(0.0, f64::max)
    }
}

impl<'a> Mul<&'a BlockOperator> for &'a BlockOperator {
    type Output = BlockOperator;
    fn mul(self, rhs: &BlockOperator) -> BlockOperator {
        assert_eq!(self.blocks.len(), rhs.blocks.len(), "block count mismatch");
        BlockOperator {
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a * b).collect(),
        }
    }
}

impl<'a> Add<&'a BlockOperator> for &'a BlockOperator {
    type Output = BlockOperator;
    fn add(self, rhs: &BlockOperator) -> BlockOperator {
        assert_eq!(self.blocks.len(), rhs.blocks.len(), "block count mismatch");
        BlockOperator {
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a BlockOperator> for &'a BlockOperator {
    type Output = BlockOperator;
    fn sub(self, rhs: &BlockOperator) -> BlockOperator {
        assert_eq!(self.blocks.len(), rhs.blocks.len(), "block count mismatch");
        BlockOperator {
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a - b).collect(),
        }
    }
}
