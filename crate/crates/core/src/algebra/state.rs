use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::block::{BlockOperator, MultiMatrixAlgebra};
use crate::error::{Error, Result};

/// Trace vector `p̃`, defined up to a positive scalar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TraceVector {
    /// Exact integer weights (the usual case: dimension vectors).
    Integer(Vec<u64>),
    /// Floating weights, e.g. an irrational Perron vector.
    Real(Vec<f64>),
}

impl TraceVector {
    pub fn len(&self) -> usize {
        match self {
            TraceVector::Integer(v) => v.len(),
            TraceVector::Real(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            TraceVector::Integer(v) => v.iter().map(|&x| x as f64).collect(),
            TraceVector::Real(v) => v.clone(),
        }
    }

    pub fn as_integer(&self) -> Option<&[u64]> {
        match self {
            TraceVector::Integer(v) => Some(v),
            TraceVector::Real(_) => None,
        }
    }
}

/// Faithful tracial state `φ(⊕X_i) = Σ p_i tr X_i / Σ p_i n_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct TracialState {
    algebra: MultiMatrixAlgebra,
    weights: TraceVector,
}

impl TracialState {
    pub fn new(algebra: MultiMatrixAlgebra, weights: TraceVector) -> Result<Self> {
        if weights.len() != algebra.block_count() {
            return Err(Error::LengthMismatch {
                what: "trace vector",
                expected: algebra.block_count(),
                actual: weights.len(),
            });
        }
        let positive = match &weights {
            TraceVector::Integer(v) => v.iter().all(|&x| x > 0),
            TraceVector::Real(v) => v.iter().all(|&x| x > 0.0 && x.is_finite()),
        };
        if !positive {
            return Err(Error::InvalidTrace(format!(
                "entries must be strictly positive: {weights:?}"
            )));
        }
        Ok(Self { algebra, weights })
    }

    pub fn integer(algebra: MultiMatrixAlgebra, weights: Vec<u64>) -> Result<Self> {
        Self::new(algebra, TraceVector::Integer(weights))
    }

    /// The normalized standard trace (all weights equal).
    pub fn standard(algebra: MultiMatrixAlgebra) -> Self {
        let w = vec![1; algebra.block_count()];
        Self {
            algebra,
            weights: TraceVector::Integer(w),
        }
    }

    /// The state whose trace vector is the dimension vector `ñ`.
    pub fn dimension_weighted(algebra: MultiMatrixAlgebra) -> Self {
        let w = algebra.blocks().iter().map(|&n| n as u64).collect();
        Self {
            algebra,
            weights: TraceVector::Integer(w),
        }
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        &self.algebra
    }

    pub fn weights(&self) -> &TraceVector {
        &self.weights
    }

    /// Whether all `p_i` coincide.
    pub fn is_standard(&self) -> bool {
        let w = self.weights.to_f64();
        w.iter().all(|&x| (x - w[0]).abs() <= 1e-12 * w[0].abs().max(1.0))
    }

    /// Normalization `Σ p_i n_i`.
    pub fn normalizer(&self) -> f64 {
        self.weights
            .to_f64()
            .iter()
            .zip(self.algebra.blocks())
            .map(|(p, &n)| p * n as f64)
            .sum()
    }

    pub fn eval(&self, x: &BlockOperator) -> Result<Complex64> {
        x.check_algebra(&self.algebra)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &BlockOperator) -> Complex64 {
        let w = self.weights.to_f64();
        let num: Complex64 = x.block_traces().iter().zip(&w).map(|(t, p)| t * *p).sum();
        num / self.normalizer()
    }

    /// GNS inner product `⟨X, Y⟩ = φ(X* Y)`.
    pub fn inner(&self, x: &BlockOperator, y: &BlockOperator) -> Result<Complex64> {
        x.check_algebra(&self.algebra)?;
        y.check_algebra(&self.algebra)?;
        let w = self.weights.to_f64();
        // tr(X_i* Y_i) = Σ conj(x) y, no product needed
        let num: Complex64 = x
            .blocks()
            .iter()
            .zip(y.blocks())
            .zip(&w)
            .map(|((a, b), p)| a.iter().zip(b.iter()).map(|(u, v)| u.conj() * v).sum::<Complex64>() * *p)
            .sum();
        Ok(num / self.normalizer())
    }
}

/// `φ(X)`.
pub fn trace_eval(phi: &TracialState, x: &BlockOperator) -> Result<Complex64> {
    phi.eval(x)
}

/// `φ(X* Y)`.
pub fn hs_inner(phi: &TracialState, x: &BlockOperator, y: &BlockOperator) -> Result<Complex64> {
    phi.inner(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::CMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alg(v: &[usize]) -> MultiMatrixAlgebra {
        MultiMatrixAlgebra::new(v.to_vec()).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let a = alg(&[1, 2]);
        let phi = TracialState::integer(a.clone(), vec![1, 2]).unwrap();
        assert!((phi.eval(&BlockOperator::identity(&a)).unwrap() - 1.0).norm() < 1e-15);
        let x = BlockOperator::from_blocks(vec![
            CMatrix::from_element(1, 1, Complex64::new(5.0, 0.0)),
            CMatrix::zeros(2, 2),
        ])
        .unwrap();
        assert!((phi.eval(&x).unwrap() - 1.0).norm() < 1e-15);

        // Markov state on M_1 ⊕ M_2: (x + 2 tr X) / 5
        let m = TracialState::dimension_weighted(a.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let y = BlockOperator::random(&a, &mut rng);
        let expect = (y.block(0).trace() + y.block(1).trace() * 2.0) / 5.0;
        assert!((m.eval(&y).unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(TracialState::integer(alg(&[1, 2]), vec![1]).is_err());
        assert!(TracialState::integer(alg(&[1, 2]), vec![1, 0]).is_err());
        assert!(TracialState::new(alg(&[1]), TraceVector::Real(vec![f64::NAN])).is_err());
        let phi = TracialState::standard(alg(&[2]));
        assert!(phi.eval(&BlockOperator::identity(&alg(&[3]))).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let a = alg(&[2]);
        let phi = TracialState::standard(a.clone());
        let id = BlockOperator::identity(&a);
        assert!((phi.inner(&id, &id).unwrap() - 1.0).norm() < 1e-15);
        let traceless = BlockOperator::from_blocks(vec![CMatrix::from_row_slice(
            2,
            2,
            &[1.0, 3.0, -2.0, -1.0].map(|x| Complex64::new(x, 0.0)),
        )])
        .unwrap();
        assert!(phi.inner(&id, &traceless).unwrap().norm() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = BlockOperator::random(&a, &mut rng);
        let oracle: f64 = x.block(0).iter().map(|z| z.norm_sqr()).sum::<f64>() / 2.0;
        assert!((phi.inner(&x, &x).unwrap() - oracle).norm() < 1e-12);
    }

    #[test]
    fn traciality() {
        let a = alg(&[1, 3, 2]);
        let phi = TracialState::integer(a.clone(), vec![4, 1, 7]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let x = BlockOperator::random(&a, &mut rng);
            let y = BlockOperator::random(&a, &mut rng);
            let d = phi.eval(&(&x * &y)).unwrap() - phi.eval(&(&y * &x)).unwrap();
            assert!(d.norm() < 1e-12);
            let via_product = phi.eval(&(&x.adjoint() * &y)).unwrap();
            assert!((phi.inner(&x, &y).unwrap() - via_product).norm() < 1e-12);
            assert!(phi.inner(&x, &x).unwrap().re > 0.0);
        }
    }
}
