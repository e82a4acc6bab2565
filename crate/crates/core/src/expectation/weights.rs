use num_rational::Ratio;

use crate::algebra::{TraceVector, TracialState};
use crate::error::Result;
use crate::inclusion::InclusionSpec;

/// Averaging weights `q_{ij} = p_i / Σ_x p_x a_{xj}` of the block-averaging
/// step, together with the block counts `T_j = Σ_i a_{ij}` and `T = Σ T_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationWeights {
    /// `q[i][j]`
    q: Vec<Vec<f64>>,
    exact: Option<Vec<Vec<Ratio<u64>>>>,
    column_counts: Vec<u64>,
    total: u64,
}

impl ExpectationWeights {
    pub fn new(spec: &InclusionSpec, phi: &TracialState) -> Result<Self> {
        spec.validate()?;
        let (s, r) = (spec.rows(), spec.cols());
        let column_counts: Vec<u64> = (0..r).map(|j| (0..s).map(|i| spec.entry(i, j)).sum()).collect();
        let total = column_counts.iter().sum();
        let (q, exact) = match phi.weights() {
            TraceVector::Integer(p) => {
                let exact: Vec<Vec<Ratio<u64>>> = (0..s)
                    .map(|i| {
                        (0..r)
                            .map(|j| {
                                let denom: u64 = (0..s).map(|x| p[x] * spec.entry(x, j)).sum();
                                Ratio::new(p[i], denom)
                            })
                            .collect()
                    })
                    .collect();
                let q = exact
                    .iter()
                    .map(|row| row.iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect())
                    .collect();
                (q, Some(exact))
            }
            TraceVector::Real(p) => {
                let q = (0..s)
                    .map(|i| {
                        (0..r)
                            .map(|j| {
                                let denom: f64 = (0..s).map(|x| p[x] * spec.entry(x, j) as f64).sum();
                                p[i] / denom
                            })
                            .collect()
                    })
                    .collect();
                (q, None)
            }
        };
        Ok(Self {
            q,
            exact,
            column_counts,
            total,
        })
    }

    pub fn q(&self, i: usize, j: usize) -> f64 {
        self.q[i][j]
    }

    /// Exact `q_{ij}` when the trace vector is integral.
    pub fn q_exact(&self, i: usize, j: usize) -> Option<Ratio<u64>> {
        self.exact.as_ref().map(|e| e[i][j])
    }

    /// `T_j`.
    pub fn column_counts(&self) -> &[u64] {
        &self.column_counts
    }

    /// `T`.
    pub fn total_blocks(&self) -> u64 {
        self.total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_are_normalized_exactly() {
        let spec = InclusionSpec::from_matrix(vec![vec![2, 1], vec![0, 3], vec![1, 1]], vec![2, 1]).unwrap();
        let phi = TracialState::integer(spec.super_algebra(), vec![3, 5, 7]).unwrap();
        let w = ExpectationWeights::new(&spec, &phi).unwrap();
        for j in 0..2 {
            let sum: Ratio<u64> = (0..3)
                .map(|i| w.q_exact(i, j).unwrap() * spec.entry(i, j))
                .fold(Ratio::from_integer(0), |a, b| a + b);
            assert_eq!(sum, Ratio::from_integer(1));
        }
        assert_eq!(w.column_counts(), &[3, 5]);
        assert_eq!(w.total_blocks(), 8);
    }

    #[test]
    fn weight_table_examples() {
        let spec = InclusionSpec::from_matrix(vec![vec![1, 1]], vec![1, 1]).unwrap();
        let phi = TracialState::integer(spec.super_algebra(), vec![1]).unwrap();
        let w = ExpectationWeights::new(&spec, &phi).unwrap();
        assert_eq!(w.q_exact(0, 0), Some(Ratio::from_integer(1)));
        assert_eq!(w.q_exact(0, 1), Some(Ratio::from_integer(1)));

        let spec = InclusionSpec::from_matrix(vec![vec![1], vec![2]], vec![2]).unwrap();
        let phi = TracialState::integer(spec.super_algebra(), vec![2, 4]).unwrap();
        let w = ExpectationWeights::new(&spec, &phi).unwrap();
        assert_eq!(w.q_exact(0, 0), Some(Ratio::new(2, 10)));
        assert_eq!(w.q_exact(1, 0), Some(Ratio::new(4, 10)));
    }
}
