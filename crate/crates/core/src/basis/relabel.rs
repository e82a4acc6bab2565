//! Change of coordinates inside each block by a permutation.

use crate::algebra::{BlockOperator, CMatrix};
use crate::error::{Error, Result};

/// Per-block permutations; `perms[i][p]` is the new position of basis vector
/// `p` of block `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPermutation {
    perms: Vec<Vec<usize>>,
}

impl BlockPermutation {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self> {
        for p in &perms {
            let mut seen = vec![false; p.len()];
            for &x in p {
                if x >= p.len() || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Malformed(format!("not a permutation: {p:?}")));
                }
            }
        }
        Ok(Self { perms })
    }

    pub fn is_identity(&self) -> bool {
        self.perms.iter().all(|p| p.iter().enumerate().all(|(a, &b)| a == b))
    }

    /// `P X P*`.
    pub fn apply(&self, x: &BlockOperator) -> BlockOperator {
        let blocks = x
            .blocks()
            .iter()
            .zip(&self.perms)
            .map(|(b, p)| {
                let mut out = CMatrix::zeros(b.nrows(), b.ncols());
                for r in 0..b.nrows() {
                    for c in 0..b.ncols() {
                        out[(p[r], p[c])] = b[(r, c)];
                    }
                }
                out
            })
            .collect();
        BlockOperator::from_blocks(blocks).expect("shape preserved")
    }

    pub fn inverse(&self) -> Self {
        let perms = self
            .perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                for (a, &b) in p.iter().enumerate() {
                    inv[b] = a;
                }
                inv
            })
            .collect();
        Self { perms }
    }
}
