//! Seeded generators of inclusion specs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::inclusion::{check_spectral_condition, InclusionSpec};

/// A connected abelian spec (`m̃ = 1`) satisfying the spectral condition
/// with `2 ≤ d ≤ max_d`, found by rejection over `s, r ≤ 3` and entries in
/// `0..=3`. Deterministic for a given generator state.
pub fn random_abelian_spec<R: Rng + ?Sized>(rng: &mut R, max_d: u64) -> InclusionSpec {
    loop {
        let s = rng.random_range(1..=3usize);
        let r = rng.random_range(1..=3usize);
        let matrix: Vec<Vec<u64>> = (0..s)
            .map(|_| (0..r).map(|_| rng.random_range(0..=3u64)).collect())
            .collect();
        let Ok(spec) = InclusionSpec::from_matrix(matrix, vec![1; r]) else {
            continue;
        };
        if spec.validate().is_err() || !spec.is_connected() {
            continue;
        }
        if let Ok(rep) = check_spectral_condition(&spec) {
            if matches!(rep.d, Some(d) if (2..=max_d).contains(&d)) {
                return spec;
            }
        }
    }
}

/// `count` specs from [`random_abelian_spec`] driven by ChaCha8 at `seed`.
pub fn random_abelian_specs(seed: u64, count: usize, max_d: u64) -> Vec<InclusionSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_abelian_spec(&mut rng, max_d)).collect()
}
