//! Mixed-unitary form of the conditional expectation for the standard trace.
//!
//! Copies `(i, j, k)` are numbered `0..T` in the order of
//! [`Embedding::copies`]. `K` multiplies copy `c` by `ε(c/T)`; `L_j` moves
//! copy `(i, k)` of `𝒢_j` onto the next one in that order, cyclically.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ConditionalExpectation, Expectation};
use crate::algebra::{BlockOperator, CMatrix, Phase, TracialState};
use crate::error::{Error, Result};
use crate::inclusion::{Embedding, InclusionSpec};

#[derive(Debug, Clone)]
pub struct MixedUnitaryDecomposition {
    embedding: Embedding,
    /// Copy index `c` of each ambient position; `K` has phase `c/T` there.
    copy_index: Vec<usize>,
    total: usize,
    /// `𝒢_j` as `(i, k)` pairs in cycle order.
    cycles: Vec<Vec<(usize, usize)>>,
    /// `L_j` as a permutation of ambient positions: `e_p ↦ e_{perm[p]}`.
    perms: Vec<Vec<usize>>,
}

/// Rejects non-standard `φ`; the mixed-unitary form is only valid for the
/// normalized standard trace.
pub fn mixed_unitary_channel(spec: &InclusionSpec, phi: &TracialState) -> Result<MixedUnitaryDecomposition> {
    if !phi.is_standard() {
        return Err(Error::NonStandardTrace(phi.weights().to_f64()));
    }
    MixedUnitaryDecomposition::new(spec)
}

impl MixedUnitaryDecomposition {
    fn new(spec: &InclusionSpec) -> Result<Self> {
        let embedding = spec.validate()?;
        let alg = embedding.super_algebra().clone();
        let copies = embedding.copies();
        let total = copies.len();
        let mut copy_index = vec![0usize; alg.ambient_dim()];
        for (c, cp) in copies.iter().enumerate() {
            let base = alg.block_offset(cp.i) + cp.offset;
            copy_index[base..base + cp.len].fill(c);
        }
        let mut cycles = vec![Vec::new(); spec.cols()];
        for cp in &copies {
            cycles[cp.j].push((cp.i, cp.k));
        }
        let perms = (0..spec.cols())
            .map(|j| {
                let members: Vec<_> = copies.iter().filter(|c| c.j == j).collect();
                let mut perm: Vec<usize> = (0..alg.ambient_dim()).collect();
                for (x, src) in members.iter().enumerate() {
                    let dst = members[(x + 1) % members.len()];
                    let s0 = alg.block_offset(src.i) + src.offset;
                    let d0 = alg.block_offset(dst.i) + dst.offset;
                    for l in 0..src.len {
                        perm[s0 + l] = d0 + l;
                    }
                }
                perm
            })
            .collect();
        Ok(Self {
            embedding,
            copy_index,
            total,
            cycles,
            perms,
        })
    }

    pub fn spec(&self) -> &InclusionSpec {
        self.embedding.spec()
    }

    /// `T`.
    pub fn total_blocks(&self) -> usize {
        self.total
    }

    /// `T_j`.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn cycles(&self) -> &[Vec<(usize, usize)>] {
        &self.cycles
    }

    /// Phase of `K` on each copy, as numerators over `T`.
    pub fn copy_phases(&self) -> Vec<usize> {
        (0..self.total).collect()
    }

    /// Phase of `K` at each ambient position.
    pub fn k_phases(&self) -> Vec<Phase> {
        self.copy_index
            .iter()
            .map(|&c| Phase::new(c as i64, self.total as u64))
            .collect()
    }

    pub fn k_matrix(&self) -> CMatrix {
        let diag: Vec<Complex64> = self.k_phases().iter().map(Phase::epsilon).collect();
        crate::algebra::matrix::diagonal(&diag)
    }

    pub fn l_permutation(&self, j: usize) -> &[usize] {
        &self.perms[j]
    }

    pub fn l_matrix(&self, j: usize) -> CMatrix {
        let n = self.copy_index.len();
        let mut m = CMatrix::zeros(n, n);
        for (p, &q) in self.perms[j].iter().enumerate() {
            m[(q, p)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Uniform weight `1 / (T_0 ⋯ T_{r-1} · T)` of each Kraus term.
    pub fn weight(&self) -> f64 {
        let prod: f64 = self.cycle_lengths().iter().map(|&t| t as f64).product();
        1.0 / (prod * self.total as f64)
    }

    /// The channel on a dense ambient operator, as the commuting averages
    /// over `⟨K⟩` followed by each `⟨L_j⟩`.
    pub fn apply_dense(&self, x: &CMatrix) -> CMatrix {
        let t = self.total;
        let mut y = x.clone();
        // Averaging over ⟨K⟩ keeps entry (p, q) iff the copies agree.
        for p in 0..y.nrows() {
            for q in 0..y.ncols() {
                if self.copy_index[p] != self.copy_index[q] {
                    y[(p, q)] = Complex64::new(0.0, 0.0);
                }
            }
        }
        debug_assert!(t > 0);
        for (j, perm) in self.perms.iter().enumerate() {
            let len = self.cycles[j].len();
            let mut acc = y.clone();
            let mut cur = y.clone();
            for _ in 1..len {
                cur = permute(&cur, perm);
                acc += &cur;
            }
            y = acc / Complex64::new(len as f64, 0.0);
        }
        y
    }

    /// Largest entry of `Φ(X) − E(X)` over `samples` seeded random `X`.
    pub fn residual_against(&self, e: &ConditionalExpectation, seed: u64, samples: usize) -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let x = e.random_element(&mut rng);
            let diff = &self.apply(&x)? - &e.apply(&x);
            worst = worst.max(diff.max_abs());
        }
        Ok(worst)
    }

    /// The channel on an element of `A`; the result lies in `embed(B)`.
    pub fn apply(&self, x: &BlockOperator) -> Result<BlockOperator> {
        x.check_algebra(self.embedding.super_algebra())?;
        let (out, _) = BlockOperator::from_dense(self.embedding.super_algebra(), &self.apply_dense(&x.to_dense()))?;
        Ok(out)
    }
}

/// `P X P*` for the permutation unitary `P e_p = e_{perm[p]}`.
fn permute(x: &CMatrix, perm: &[usize]) -> CMatrix {
    let mut out = CMatrix::zeros(x.nrows(), x.ncols());
    for p in 0..x.nrows() {
        for q in 0..x.ncols() {
            out[(perm[p], perm[q])] = x[(p, q)];
        }
    }
    out
}
