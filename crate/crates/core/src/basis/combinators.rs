//! New bases from old ones: concatenation, tensor products, direct sums,
//! adjoints and the trivial basis `{I}`.

use num_integer::Integer;

use crate::algebra::BlockOperator;
use crate::error::{Error, Result};
use crate::inclusion::{InclusionSpec, Label};

use super::relabel::BlockPermutation;
use super::{abelian_basis, weyl_basis, Provenance, Side, UnitaryBasis};

/// `{I}` for `A ⊆ A`.
pub fn identity_basis(dims: Vec<u64>) -> Result<UnitaryBasis> {
    let spec = InclusionSpec::identity(dims)?;
    let id = BlockOperator::identity(&spec.super_algebra());
    UnitaryBasis::new(spec, vec![id], Provenance::Identity)
}

fn require_right(b: &UnitaryBasis) -> Result<()> {
    match b.side() {
        Side::Right => Ok(()),
        Side::Left => Err(Error::Malformed("expected a right basis".into())),
    }
}

/// `{V_j W_k}` for `A₂ ⊆ A₀`, where `inner` is a basis of `A₁ ⊆ A₀` and
/// `outer` one of `A₂ ⊆ A₁`. Ordered by `j * d₂ + k`.
pub fn concat_basis(inner: &UnitaryBasis, outer: &UnitaryBasis) -> Result<UnitaryBasis> {
    require_right(inner)?;
    require_right(outer)?;
    let (s0, s1) = (inner.spec(), outer.spec());
    let spec = s0.compose(s1)?;
    let emb0 = s0.validate()?;
    let emb1 = s1.validate()?;
    let emb = spec.validate()?;

    // Copy (j0, k0) of block i, sub-copy (j1, k1) of middle block j0 is
    // composite copy K = Σ_{v<j0} a⁰_{iv} a¹_{v j1} + k0 a¹_{j0 j1} + k1.
    let perms = (0..spec.rows())
        .map(|i| {
            let mut perm = vec![0; spec.super_dims()[i] as usize];
            for j0 in 0..s0.cols() {
                for k0 in 0..s0.entry(i, j0) as usize {
                    for j1 in 0..s1.cols() {
                        let before: u64 = (0..j0).map(|v| s0.entry(i, v) * s1.entry(v, j1)).sum();
                        for k1 in 0..s1.entry(j0, j1) as usize {
                            let kk = before as usize + k0 * s1.entry(j0, j1) as usize + k1;
                            for l1 in 0..s1.sub_dims()[j1] as usize {
                                let p1 = emb1.position(Label {
                                    i: j0,
                                    j: j1,
                                    k: k1,
                                    l: l1,
                                });
                                let realized = emb0.position(Label { i, j: j0, k: k0, l: p1 });
                                perm[realized] = emb.position(Label { i, j: j1, k: kk, l: l1 });
                            }
                        }
                    }
                }
            }
            perm
        })
        .collect();
    let perm = BlockPermutation::new(perms)?;
    let mut elements = Vec::with_capacity(inner.d() * outer.d());
    for v in inner.elements() {
        for w in outer.elements() {
            elements.push(perm.apply(&(v * &emb0.embed(w)?)));
        }
    }
    UnitaryBasis::new(spec, elements, Provenance::Concat)
}

/// Permutation taking the Kronecker layout of `B₁ ⊗ B₂ ⊆ A₁ ⊗ A₂` to the
/// canonical layout of `s1.kron(s2)`.
fn kron_permutation(s1: &InclusionSpec, s2: &InclusionSpec) -> Result<BlockPermutation> {
    let e1 = s1.validate()?;
    let e2 = s2.validate()?;
    let spec = s1.kron(s2);
    let emb = spec.validate()?;
    let (s2_rows, r2) = (s2.rows(), s2.cols());
    let mut perms = Vec::with_capacity(spec.rows());
    for i1 in 0..s1.rows() {
        for i2 in 0..s2_rows {
            let n2 = s2.super_dims()[i2] as usize;
            let mut perm = vec![0; spec.super_dims()[i1 * s2_rows + i2] as usize];
            for a in e1.labels(i1) {
                for b in e2.labels(i2) {
                    let realized = e1.position(a) * n2 + e2.position(b);
                    let j = a.j * r2 + b.j;
                    let k = a.k * s2.entry(i2, b.j) as usize + b.k;
                    let l = a.l * s2.sub_dims()[b.j] as usize + b.l;
                    perm[realized] = emb.position(Label {
                        i: i1 * s2_rows + i2,
                        j,
                        k,
                        l,
                    });
                }
            }
            perms.push(perm);
        }
    }
    BlockPermutation::new(perms)
}

/// `{U_j(1) ⊗ U_k(2)}` ordered by `j * d₂ + k`.
pub fn tensor_basis(b1: &UnitaryBasis, b2: &UnitaryBasis) -> Result<UnitaryBasis> {
    if b1.side() != b2.side() {
        return Err(Error::Malformed("tensor factors must be bases on the same side".into()));
    }
    let spec = b1.spec().kron(b2.spec());
    let perm = &kron_permutation(b1.spec(), b2.spec())?;
    let elements = b1
        .elements()
        .iter()
        .flat_map(|u| b2.elements().iter().map(move |v| perm.apply(&u.kron(v))))
        .collect();
    UnitaryBasis::with_side(spec, elements, Provenance::Tensor, b1.side())
}

/// `{U_j(1) ⊕ U_j(2)}`; needs `d₁ = d₂`.
pub fn direct_sum_basis(b1: &UnitaryBasis, b2: &UnitaryBasis) -> Result<UnitaryBasis> {
    if b1.d() != b2.d() {
        return Err(Error::CardinalityMismatch(b1.d(), b2.d()));
    }
    if b1.side() != b2.side() {
        return Err(Error::Malformed("summands must be bases on the same side".into()));
    }
    let spec = b1.spec().direct_sum(b2.spec());
    let elements = b1
        .elements()
        .iter()
        .zip(b2.elements())
        .map(|(u, v)| u.direct_sum(v))
        .collect();
    UnitaryBasis::with_side(spec, elements, Provenance::DirectSum, b1.side())
}

/// Elementwise adjoint; a right basis becomes a left basis and vice versa.
pub fn adjoint_basis(b: &UnitaryBasis) -> UnitaryBasis {
    let side = match b.side() {
        Side::Right => Side::Left,
        Side::Left => Side::Right,
    };
    let elements = b.elements().iter().map(BlockOperator::adjoint).collect();
    UnitaryBasis::with_side(b.spec().clone(), elements, b.provenance(), side).expect("same shapes")
}

/// `(M_g ⊆ M_g) ⊗ quotient`, `g = gcd(m_j)`, with the quotient built by the
/// abelian or the Weyl construction.
pub(super) fn gcd_tensor_basis(spec: &InclusionSpec) -> Result<UnitaryBasis> {
    let g = spec.sub_dims().iter().fold(0u64, |acc, &m| acc.gcd(&m));
    let quotient = InclusionSpec::from_matrix(spec.matrix().to_vec(), spec.sub_dims().iter().map(|m| m / g).collect())?;
    if quotient.sub_dims().iter().any(|&m| m != 1) {
        return Err(Error::NoKnownConstruction);
    }
    let qb = abelian_basis(&quotient).or_else(|_| weyl_basis(&quotient))?;
    let out = tensor_basis(&identity_basis(vec![g])?, &qb)?;
    debug_assert_eq!(out.spec(), spec);
    Ok(out)
}
