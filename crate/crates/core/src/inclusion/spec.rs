use serde::{Deserialize, Serialize};

use crate::algebra::MultiMatrixAlgebra;
use crate::error::{Error, Result};

use super::embedding::Embedding;

/// An inclusion `B = ⊕_j M_{m_j} ⊆ A = ⊕_i M_{n_i}` described by its
/// `s × r` inclusion matrix and both dimension vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InclusionSpec {
    matrix: Vec<Vec<u64>>,
    sub_dims: Vec<u64>,
    super_dims: Vec<u64>,
}

impl InclusionSpec {
    /// Shape checks only; see [`InclusionSpec::validate`] for the rest.
    pub fn new(matrix: Vec<Vec<u64>>, sub_dims: Vec<u64>, super_dims: Vec<u64>) -> Result<Self> {
        if matrix.is_empty() || sub_dims.is_empty() {
            return Err(Error::Malformed("empty inclusion matrix".into()));
        }
        let r = sub_dims.len();
        if let Some(i) = matrix.iter().position(|row| row.len() != r) {
            return Err(Error::Malformed(format!(
                "row {i} has {} entries, expected {r}",
                matrix[i].len()
            )));
        }
        if super_dims.len() != matrix.len() {
            return Err(Error::Malformed(format!(
                "{} super dimensions for {} rows",
                super_dims.len(),
                matrix.len()
            )));
        }
        if sub_dims.iter().chain(&super_dims).any(|&x| x == 0) {
            return Err(Error::Malformed("block dimensions must be positive".into()));
        }
        Ok(Self {
            matrix,
            sub_dims,
            super_dims,
        })
    }

    /// Builds the inclusion with `ñ = A m̃`.
    pub fn from_matrix(matrix: Vec<Vec<u64>>, sub_dims: Vec<u64>) -> Result<Self> {
        let super_dims = matrix
            .iter()
            .map(|row| row.iter().zip(&sub_dims).map(|(a, m)| a * m).sum())
            .collect();
        Self::new(matrix, sub_dims, super_dims)
    }

    /// `(M_n ⊆ M_n, id)` style identity inclusion `A ⊆ A`.
    pub fn identity(dims: Vec<u64>) -> Result<Self> {
        let s = dims.len();
        let matrix = (0..s).map(|i| (0..s).map(|j| u64::from(i == j)).collect()).collect();
        Self::new(matrix, dims.clone(), dims)
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.matrix[i][j]
    }

    pub fn sub_dims(&self) -> &[u64] {
        &self.sub_dims
    }

    pub fn super_dims(&self) -> &[u64] {
        &self.super_dims
    }

    /// `s`, number of blocks of the larger algebra.
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    /// `r`, number of blocks of the sub-algebra.
    pub fn cols(&self) -> usize {
        self.sub_dims.len()
    }

    pub fn super_algebra(&self) -> MultiMatrixAlgebra {
        MultiMatrixAlgebra::new(self.super_dims.iter().map(|&n| n as usize).collect())
            .expect("dimensions validated positive")
    }

    pub fn sub_algebra(&self) -> MultiMatrixAlgebra {
        MultiMatrixAlgebra::new(self.sub_dims.iter().map(|&n| n as usize).collect())
            .expect("dimensions validated positive")
    }

    /// `A m̃`.
    pub fn a_times_m(&self) -> Vec<u64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(&self.sub_dims).map(|(a, m)| a * m).sum())
            .collect()
    }

    /// `Aᵗ ñ`.
    pub fn at_times_n(&self) -> Vec<u64> {
        (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.matrix[i][j] * self.super_dims[i]).sum())
            .collect()
    }

    /// Checks `A m̃ = ñ` and that no column vanishes, returning the canonical
    /// embedding.
    pub fn validate(&self) -> Result<Embedding> {
        let computed = self.a_times_m();
        if computed != self.super_dims {
            return Err(Error::DimensionMismatch {
                computed,
                declared: self.super_dims.clone(),
            });
        }
        if let Some(j) = (0..self.cols()).find(|&j| self.matrix.iter().all(|row| row[j] == 0)) {
            return Err(Error::EmptyColumn(j));
        }
        Ok(Embedding::new_unchecked(self.clone()))
    }

    /// Connectivity of the Bratteli diagram, i.e. of the bipartite graph
    /// with adjacency matrix `A`.
    pub fn is_connected(&self) -> bool {
        let (s, r) = (self.rows(), self.cols());
        // vertices 0..s are super blocks, s..s+r sub blocks
        let mut seen = vec![false; s + r];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            let nbrs: Vec<usize> = if v < s {
                (0..r).filter(|&j| self.matrix[v][j] > 0).map(|j| s + j).collect()
            } else {
                (0..s).filter(|&i| self.matrix[i][v - s] > 0).collect()
            };
            for w in nbrs {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Inclusion `A ⊆ A₁` of the basic construction: matrix `Aᵗ`, sub
    /// dimensions `ñ`, super dimensions `Aᵗ ñ`.
    pub fn transposed(&self) -> Self {
        let matrix: Vec<Vec<u64>> = (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.matrix[i][j]).collect())
            .collect();
        let super_dims = self.at_times_n();
        Self {
            matrix,
            sub_dims: self.super_dims.clone(),
            super_dims,
        }
    }

    /// Tensor product; blocks indexed `i1 * s2 + i2`, `j1 * r2 + j2`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut matrix = Vec::with_capacity(self.rows() * other.rows());
        for r1 in &self.matrix {
            for r2 in &other.matrix {
                let mut row = Vec::with_capacity(r1.len() * r2.len());
                for a in r1 {
                    for b in r2 {
                        row.push(a * b);
                    }
                }
                matrix.push(row);
            }
        }
        let prod = |x: &[u64], y: &[u64]| -> Vec<u64> { x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect() };
        Self {
            matrix,
            sub_dims: prod(&self.sub_dims, &other.sub_dims),
            super_dims: prod(&self.super_dims, &other.super_dims),
        }
    }

    /// Direct sum `B₁ ⊕ B₂ ⊆ A₁ ⊕ A₂` (block-diagonal inclusion matrix).
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r1, r2) = (self.cols(), other.cols());
        let mut matrix = Vec::with_capacity(self.rows() + other.rows());
        for row in &self.matrix {
            let mut v = row.clone();
            v.extend(std::iter::repeat_n(0, r2));
            matrix.push(v);
        }
        for row in &other.matrix {
            let mut v = vec![0; r1];
            v.extend(row.iter().copied());
            matrix.push(v);
        }
        Self {
            matrix,
            sub_dims: [self.sub_dims.clone(), other.sub_dims.clone()].concat(),
            super_dims: [self.super_dims.clone(), other.super_dims.clone()].concat(),
        }
    }

    /// Composite of `self` (middle ⊆ top) with `lower` (bottom ⊆ middle).
    pub fn compose(&self, lower: &Self) -> Result<Self> {
        if self.sub_dims != lower.super_dims {
            return Err(Error::MiddleAlgebraMismatch {
                inner: self.sub_dims.clone(),
                outer: lower.super_dims.clone(),
            });
        }
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..lower.cols())
                    .map(|j| row.iter().enumerate().map(|(v, a)| a * lower.matrix[v][j]).sum())
                    .collect()
            })
            .collect();
        Ok(Self {
            matrix,
            sub_dims: lower.sub_dims.clone(),
            super_dims: self.super_dims.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        let s = InclusionSpec::new(vec![vec![1, 1]], vec![1, 1], vec![2]).unwrap();
        assert!(s.validate().is_ok());
        let s = InclusionSpec::new(vec![vec![1], vec![2]], vec![2], vec![2, 4]).unwrap();
        assert!(s.validate().is_ok());
        let s = InclusionSpec::new(vec![vec![1, 0]], vec![1, 1], vec![1]).unwrap();
        assert_eq!(s.validate().unwrap_err(), Error::EmptyColumn(1));
        let s = InclusionSpec::new(vec![vec![1, 1]], vec![1, 1], vec![3]).unwrap();
        assert!(matches!(s.validate(), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn shape_errors() {
        assert!(InclusionSpec::new(vec![], vec![1], vec![]).is_err());
        assert!(InclusionSpec::new(vec![vec![1, 1]], vec![1], vec![2]).is_err());
        assert!(InclusionSpec::new(vec![vec![1]], vec![1], vec![1, 1]).is_err());
        assert!(InclusionSpec::new(vec![vec![1]], vec![0], vec![0]).is_err());
    }

    #[test]
    fn derived_specs() {
        let s = InclusionSpec::from_matrix(vec![vec![1], vec![2]], vec![1]).unwrap();
        assert_eq!(s.super_dims(), &[1, 2]);
        let t = s.transposed();
        assert_eq!(t.matrix(), &[vec![1, 2]]);
        assert_eq!(t.super_dims(), &[5]);
        assert!(t.validate().is_ok());

        let id = InclusionSpec::identity(vec![2]).unwrap();
        let k = id.kron(&s);
        assert_eq!(k.matrix(), &[vec![1], vec![2]]);
        assert_eq!(k.sub_dims(), &[2]);
        assert_eq!(k.super_dims(), &[2, 4]);

        let ds = s.direct_sum(&s);
        assert_eq!(ds.matrix(), &[vec![1, 0], vec![2, 0], vec![0, 1], vec![0, 2]]);
        assert!(!ds.is_connected());
        assert!(ds.validate().is_ok());

        let upper = InclusionSpec::from_matrix(vec![vec![1, 1]], vec![1, 1]).unwrap();
        let lower = InclusionSpec::from_matrix(vec![vec![1], vec![1]], vec![1]).unwrap();
        let c = upper.compose(&lower).unwrap();
        assert_eq!(c.matrix(), &[vec![2]]);
        assert!(lower.compose(&upper).is_err());
    }
}
