//! Trace-preserving expectation onto a `*`-subalgebra given by a spanning
//! family, computed as the orthogonal projection for `⟨X, Y⟩ = φ(X*Y)`.

use nalgebra::{Cholesky, DVector};
use num_complex::Complex64;

use crate::algebra::{BlockOperator, CMatrix, MultiMatrixAlgebra, TracialState};
use crate::error::{Error, Result};

use super::conditional::Expectation;

/// Gram condition number above which a family is treated as degenerate.
pub const GRAM_CONDITION_LIMIT: f64 = 1e12;

#[derive(Debug, Clone)]
pub struct ProjectionExpectation {
    phi: TracialState,
    basis: Vec<BlockOperator>,
    gram: Cholesky<Complex64, nalgebra::Dyn>,
}

impl ProjectionExpectation {
    pub fn new(phi: TracialState, basis: Vec<BlockOperator>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::EmptyInput("subalgebra basis"));
        }
        for b in &basis {
            b.check_algebra(phi.algebra())?;
        }
        let n = basis.len();
        let mut g = CMatrix::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                let v = phi.inner(&basis[a], &basis[b])?;
                g[(a, b)] = v;
                g[(b, a)] = v.conj();
            }
        }
        let eig = nalgebra::SymmetricEigen::new(g.clone()).eigenvalues;
        let max = eig.iter().cloned().fold(f64::MIN, f64::max);
        let min = eig.iter().cloned().fold(f64::MAX, f64::min);
        let cond = if min > 0.0 { max / min } else { f64::INFINITY };
        if cond > GRAM_CONDITION_LIMIT {
            return Err(Error::SingularGram(cond));
        }
        let gram = Cholesky::new(g).ok_or(Error::SingularGram(cond))?;
        Ok(Self { phi, basis, gram })
    }

    pub fn state(&self) -> &TracialState {
        &self.phi
    }

    pub fn project(&self, x: &BlockOperator) -> Result<BlockOperator> {
        x.check_algebra(self.phi.algebra())?;
        Ok(self.project_unchecked(x))
    }

    fn project_unchecked(&self, x: &BlockOperator) -> BlockOperator {
        let rhs = DVector::from_iterator(
            self.basis.len(),
            self.basis.iter().map(|b| self.phi.inner(b, x).expect("same algebra")),
        );
        let c = self.gram.solve(&rhs);
        let mut out = BlockOperator::zero(self.phi.algebra());
        for (b, z) in self.basis.iter().zip(c.iter()) {
            out = &out + &b.scale(*z);
        }
        out
    }
}

impl Expectation for ProjectionExpectation {
    fn algebra(&self) -> &MultiMatrixAlgebra {
        self.phi.algebra()
    }

    fn apply(&self, x: &BlockOperator) -> BlockOperator {
        self.project_unchecked(x)
    }

    fn range_units(&self) -> Vec<BlockOperator> {
        self.basis.clone()
    }
}

/// The `φ`-orthogonal projection of `x` onto the span of `basis`.
pub fn projection_expectation(phi: &TracialState, basis: &[BlockOperator], x: &BlockOperator) -> Result<BlockOperator> {
    ProjectionExpectation::new(phi.clone(), basis.to_vec())?.project(x)
}
