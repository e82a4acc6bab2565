//! `E = E₂ ∘ E₁`: pinching onto the intermediate algebra `C` followed by
//! the `φ`-weighted average of the copies of each `M_{m_j}`.

use num_complex::Complex64;
use rand::RngCore;

use crate::algebra::{BlockOperator, CMatrix, MultiMatrixAlgebra, TracialState};
use crate::error::{Error, Result};
use crate::inclusion::{Embedding, InclusionSpec};

use super::weights::ExpectationWeights;

/// Off-block tolerance accepted by [`average_e2`].
pub const PINCH_TOLERANCE: f64 = 1e-9;

/// A conditional expectation `E: A → B` together with what the checkers need
/// to probe it.
pub trait Expectation: Sync {
    /// The larger algebra `A`; inputs and outputs live here.
    fn algebra(&self) -> &MultiMatrixAlgebra;

    /// `E(x)`, returned as an element of `A` lying in the image of `B`.
    fn apply(&self, x: &BlockOperator) -> BlockOperator;

    /// A linear basis of the range of `E`.
    fn range_units(&self) -> Vec<BlockOperator>;

    /// A spanning set of the domain.
    fn domain_units(&self) -> Vec<BlockOperator> {
        BlockOperator::matrix_units(self.algebra())
    }

    fn random_element(&self, rng: &mut dyn RngCore) -> BlockOperator {
        BlockOperator::random(self.algebra(), rng)
    }

    /// Random element of the range, as a random combination of range units.
    fn random_range_element(&self, rng: &mut dyn RngCore) -> BlockOperator {
        use rand::Rng;
        let mut acc = BlockOperator::zero(self.algebra());
        for u in self.range_units() {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            acc = &acc + &u.scale(z);
        }
        acc
    }
}

/// The `φ`-preserving conditional expectation onto the canonically
/// embedded sub-algebra.
#[derive(Debug, Clone)]
pub struct ConditionalExpectation {
    embedding: Embedding,
    state: TracialState,
    weights: ExpectationWeights,
}

impl ConditionalExpectation {
    pub fn new(spec: &InclusionSpec, state: TracialState) -> Result<Self> {
        let embedding = spec.validate()?;
        if state.algebra() != embedding.super_algebra() {
            return Err(Error::AlgebraMismatch {
                left: state.algebra().blocks().to_vec(),
                right: embedding.super_algebra().blocks().to_vec(),
            });
        }
        let weights = ExpectationWeights::new(spec, &state)?;
        Ok(Self {
            embedding,
            state,
            weights,
        })
    }

    /// The expectation for the default state of the inclusion (trace vector `ñ`
    /// under the spectral condition, Markov otherwise).
    pub fn markov(spec: &InclusionSpec) -> Result<Self> {
        Self::new(spec, crate::inclusion::default_state(spec)?)
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn spec(&self) -> &InclusionSpec {
        self.embedding.spec()
    }

    pub fn state(&self) -> &TracialState {
        &self.state
    }

    pub fn weights(&self) -> &ExpectationWeights {
        &self.weights
    }

    pub fn pinch(&self, x: &BlockOperator) -> BlockOperator {
        pinch_blocks(&self.embedding, x)
    }

    pub fn average(&self, y: &BlockOperator) -> Result<BlockOperator> {
        Ok(self.embedding.embed_blocks(&self.average_compressed(y)?))
    }

    fn average_compressed(&self, y: &BlockOperator) -> Result<Vec<CMatrix>> {
        y.check_algebra(self.embedding.super_algebra())?;
        let off = off_block_mass(&self.embedding, y);
        if off > PINCH_TOLERANCE {
            return Err(Error::NotPinched(off));
        }
        Ok(self.block_average(y))
    }

    fn block_average(&self, y: &BlockOperator) -> Vec<CMatrix> {
        weighted_average(&self.embedding, &self.weights, y)
    }

    /// `E(x)` as an element of `B` (not embedded).
    pub fn apply_compressed(&self, x: &BlockOperator) -> Result<BlockOperator> {
        x.check_algebra(self.embedding.super_algebra())?;
        BlockOperator::from_blocks(self.block_average(&self.pinch(x)))
    }

    pub fn try_apply(&self, x: &BlockOperator) -> Result<BlockOperator> {
        x.check_algebra(self.embedding.super_algebra())?;
        Ok(self.apply(x))
    }
}

impl Expectation for ConditionalExpectation {
    fn algebra(&self) -> &MultiMatrixAlgebra {
        self.embedding.super_algebra()
    }

    fn apply(&self, x: &BlockOperator) -> BlockOperator {
        let pinched = self.pinch(x);
        self.embedding.embed_blocks(&self.block_average(&pinched))
    }

    fn range_units(&self) -> Vec<BlockOperator> {
        self.embedding.sub_units()
    }
}

fn pinch_blocks(emb: &Embedding, x: &BlockOperator) -> BlockOperator {
    let mut out = BlockOperator::zero(emb.super_algebra());
    for c in emb.copies() {
        out.block_mut(c.i)
            .view_mut((c.offset, c.offset), (c.len, c.len))
            .copy_from(&x.block(c.i).view((c.offset, c.offset), (c.len, c.len)));
    }
    out
}

/// `Z_j = Σ_{i,k} q_{ij} Y_{ijk}`, read off the copy blocks of `y`.
fn weighted_average(emb: &Embedding, weights: &ExpectationWeights, y: &BlockOperator) -> Vec<CMatrix> {
    let mut z: Vec<CMatrix> = emb
        .sub_algebra()
        .blocks()
        .iter()
        .map(|&m| CMatrix::zeros(m, m))
        .collect();
    for c in emb.copies() {
        let q = Complex64::new(weights.q(c.i, c.j), 0.0);
        z[c.j] += y.block(c.i).view((c.offset, c.offset), (c.len, c.len)) * q;
    }
    z
}

fn off_block_mass(emb: &Embedding, y: &BlockOperator) -> f64 {
    let pinched = pinch_blocks(emb, y);
    (y - &pinched).max_abs()
}

/// `E₁(X) = Σ_{ijk} P_{ijk} X P_{ijk}`.
pub fn pinch_e1(emb: &Embedding, x: &BlockOperator) -> Result<BlockOperator> {
    x.check_algebra(emb.super_algebra())?;
    Ok(pinch_blocks(emb, x))
}

/// `E₂` on an already pinched operator; refuses inputs with off-block mass.
pub fn average_e2(emb: &Embedding, weights: &ExpectationWeights, y: &BlockOperator) -> Result<BlockOperator> {
    y.check_algebra(emb.super_algebra())?;
    let off = off_block_mass(emb, y);
    if off > PINCH_TOLERANCE {
        return Err(Error::NotPinched(off));
    }
    Ok(emb.embed_blocks(&weighted_average(emb, weights, y)))
}

/// The `φ`-preserving conditional expectation applied to `x`.
pub fn conditional_expectation(spec: &InclusionSpec, phi: &TracialState, x: &BlockOperator) -> Result<BlockOperator> {
    ConditionalExpectation::new(spec, phi.clone())?.try_apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn spec(m: Vec<Vec<u64>>, sub: Vec<u64>) -> InclusionSpec {
        InclusionSpec::from_matrix(m, sub).unwrap()
    }

    #[test]
    fn pinch_examples() {
        let s = spec(vec![vec![1, 1]], vec![1, 1]);
        let emb = s.validate().unwrap();
        let x = BlockOperator::from_blocks(vec![CMatrix::from_row_slice(2, 2, &[c(1.), c(2.), c(3.), c(4.)])]).unwrap();
        let p = pinch_e1(&emb, &x).unwrap();
        assert_eq!(
            p.block(0),
            &CMatrix::from_row_slice(2, 2, &[c(1.), c(0.), c(0.), c(4.)])
        );
        assert_eq!(pinch_e1(&emb, &p).unwrap(), p);

        let s = spec(vec![vec![2, 1], vec![1, 1]], vec![2, 1]);
        let emb = s.validate().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = BlockOperator::random(emb.super_algebra(), &mut rng);
        let phi = TracialState::integer(s.super_algebra(), vec![2, 9]).unwrap();
        let px = pinch_e1(&emb, &x).unwrap();
        assert!((phi.eval(&px).unwrap() - phi.eval(&x).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn average_examples() {
        let s = spec(vec![vec![1], vec![2]], vec![2]);
        let emb = s.validate().unwrap();
        let phi = TracialState::integer(s.super_algebra(), vec![2, 4]).unwrap();
        let w = ExpectationWeights::new(&s, &phi).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let y0 = BlockOperator::random(&MultiMatrixAlgebra::full(2), &mut rng);
        let y1 = BlockOperator::random(&MultiMatrixAlgebra::full(2), &mut rng);
        let y2 = BlockOperator::random(&MultiMatrixAlgebra::full(2), &mut rng);
        let mut big = CMatrix::zeros(4, 4);
        big.view_mut((0, 0), (2, 2)).copy_from(y1.block(0));
        big.view_mut((2, 2), (2, 2)).copy_from(y2.block(0));
        let y = BlockOperator::from_blocks(vec![y0.block(0).clone(), big]).unwrap();
        let out = average_e2(&emb, &w, &y).unwrap();
        let common = (y0.block(0) * c(2.) + y1.block(0) * c(4.) + y2.block(0) * c(4.)) / c(10.);
        let expect = emb.embed(&BlockOperator::from_blocks(vec![common]).unwrap()).unwrap();
        assert!((&out - &expect).max_abs() < 1e-14);

        // fixed points
        let z = emb.embed(&y0).unwrap();
        assert!((&average_e2(&emb, &w, &z).unwrap() - &z).max_abs() < 1e-14);

        // unpinched input
        let x = BlockOperator::random(emb.super_algebra(), &mut rng);
        assert!(matches!(average_e2(&emb, &w, &x), Err(Error::NotPinched(_))));
    }

    #[test]
    fn average_on_c2_in_m2_is_identity_on_diagonals() {
        let s = spec(vec![vec![1, 1]], vec![1, 1]);
        let emb = s.validate().unwrap();
        let w = ExpectationWeights::new(&s, &TracialState::integer(s.super_algebra(), vec![1]).unwrap()).unwrap();
        let y =
            BlockOperator::from_blocks(vec![CMatrix::from_row_slice(2, 2, &[c(5.), c(0.), c(0.), c(-1.)])]).unwrap();
        assert_eq!(average_e2(&emb, &w, &y).unwrap(), y);
    }

    #[test]
    fn expectation_examples() {
        let s = spec(vec![vec![2]], vec![1]);
        let phi = TracialState::standard(s.super_algebra());
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let x = BlockOperator::random(&s.super_algebra(), &mut rng);
        let e = conditional_expectation(&s, &phi, &x).unwrap();
        let expect = BlockOperator::scalar(&s.super_algebra(), x.block(0).trace() / 2.0);
        assert!((&e - &expect).max_abs() < 1e-14);
        let id = BlockOperator::identity(&s.super_algebra());
        assert!((&conditional_expectation(&s, &phi, &id).unwrap() - &id).max_abs() < 1e-15);

        // abelian B under the Markov state: (1/d) Σ_j (Σ_{i,k} n_i x_{ijk}) Q_j
        let s = spec(vec![vec![1, 1], vec![2, 2]], vec![1, 1]);
        let ce = ConditionalExpectation::markov(&s).unwrap();
        let d = 10.0;
        let x = BlockOperator::random(&s.super_algebra(), &mut rng);
        let emb = ce.embedding();
        let (_, q) = emb.minimal_central_projections();
        let mut expect = BlockOperator::zero(&s.super_algebra());
        for j in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..2 {
                for k in 0..s.entry(i, j) as usize {
                    let p = emb.position(crate::inclusion::Label { i, j, k, l: 0 });
                    acc += x.block(i)[(p, p)] * s.super_dims()[i] as f64;
                }
            }
            expect = &expect + &q[j].scale(acc / d);
        }
        assert!((&ce.apply(&x) - &expect).max_abs() < 1e-13);
    }

    #[test]
    fn expectation_axioms_on_random_specs() {
        let specs = [
            spec(vec![vec![2, 1], vec![0, 3], vec![1, 1]], vec![2, 1]),
            spec(vec![vec![1], vec![2]], vec![2]),
            spec(vec![vec![1, 2]], vec![1, 1]),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for s in &specs {
            let ce = ConditionalExpectation::markov(s).unwrap();
            let emb = ce.embedding().clone();
            for _ in 0..5 {
                let x = BlockOperator::random(&s.super_algebra(), &mut rng);
                let ex = ce.apply(&x);
                assert!((&ce.apply(&ex) - &ex).max_abs() < 1e-12);
                let d = ce.state().eval(&ex).unwrap() - ce.state().eval(&x).unwrap();
                assert!(d.norm() < 1e-12);
                let y = emb.embed(&BlockOperator::random(emb.sub_algebra(), &mut rng)).unwrap();
                let z = emb.embed(&BlockOperator::random(emb.sub_algebra(), &mut rng)).unwrap();
                let lhs = ce.apply(&(&(&y * &x) * &z));
                let rhs = &(&y * &ex) * &z;
                assert!((&lhs - &rhs).max_abs() < 1e-12);
            }
        }
    }
}
