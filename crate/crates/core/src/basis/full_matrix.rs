//! Bases when `B` or `A` is a full matrix algebra, assembled from tensor
//! factors.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::inclusion::{check_spectral_condition, InclusionSpec};
use crate::jones::{basic_construction_basis, BasicConstruction};

use super::{abelian_basis, identity_basis, tensor_basis, weyl_basis, Provenance, UnitaryBasis};

/// `M_m ⊆ ⊕ M_{m k_i}` as `(M_m ⊆ M_m) ⊗ (ℂ ⊆ ⊕ M_{k_i})`; `d = Σ k_i²`.
pub fn full_matrix_sub_basis(spec: &InclusionSpec) -> Result<UnitaryBasis> {
    if spec.cols() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "sub-algebra must be a single matrix block, got {:?}",
            spec.sub_dims()
        )));
    }
    let m = spec.sub_dims()[0];
    let mut ks = Vec::with_capacity(spec.rows());
    for &n in spec.super_dims() {
        if n % m != 0 {
            return Err(Error::NotMultiple { n, m });
        }
        ks.push(n / m);
    }
    spec.validate()?;
    let quotient = InclusionSpec::from_matrix(ks.iter().map(|&k| vec![k]).collect(), vec![1])?;
    let b = tensor_basis(&identity_basis(vec![m])?, &abelian_basis(&quotient)?)?;
    debug_assert_eq!(b.spec(), spec);
    relabel_provenance(b, Provenance::FullMatrixSub)
}

/// Parameters of the factorization of `⊕ M_{m_j} ⊆ M_n`:
/// `d/n = l/k` in lowest terms and `m̃_j = m_j / k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperFactors {
    pub d: u64,
    pub k: u64,
    pub l: u64,
    pub reduced: Vec<u64>,
}

impl SuperFactors {
    pub fn new(spec: &InclusionSpec) -> Result<Self> {
        spec.validate()?;
        if spec.rows() != 1 {
            return Err(Error::ShapeMismatch(format!(
                "super-algebra must be a single matrix block, got {:?}",
                spec.super_dims()
            )));
        }
        let d = check_spectral_condition(spec)?
            .d
            .ok_or(Error::SpectralConditionFailed)?;
        let n = spec.super_dims()[0];
        let g = d.gcd(&n);
        let (l, k) = (d / g, n / g);
        let mut reduced = Vec::with_capacity(spec.cols());
        for &m in spec.sub_dims() {
            if m % k != 0 {
                return Err(Error::DivisibilityError(format!("k = {k} does not divide m = {m}")));
            }
            reduced.push(m / k);
        }
        Ok(Self { d, k, l, reduced })
    }
}

/// `⊕ M_{m_j} ⊆ M_n` as `(M_k ⊆ M_k) ⊗ (ℂ ⊆ M_l) ⊗ (⊕ M_{m̃_j} ⊆ M_{Σ m̃_j²})`,
/// the last factor being the basic construction over `ℂ ⊆ ⊕ M_{m̃_j}`.
pub fn full_matrix_super_basis(spec: &InclusionSpec) -> Result<UnitaryBasis> {
    let f = SuperFactors::new(spec)?;
    let weyl = weyl_basis(&InclusionSpec::from_matrix(vec![vec![f.l]], vec![1])?)?;
    let base_spec = InclusionSpec::from_matrix(f.reduced.iter().map(|&m| vec![m]).collect(), vec![1])?;
    let bc = BasicConstruction::build(&base_spec)?;
    let tower = basic_construction_basis(&bc, &abelian_basis(&base_spec)?)?;
    let b = tensor_basis(&tensor_basis(&identity_basis(vec![f.k])?, &weyl)?, &tower)?;
    if b.spec() != spec {
        return Err(Error::DivisibilityError(format!(
            "factorization produced {:?} instead of {:?}",
            b.spec(),
            spec
        )));
    }
    debug_assert_eq!(b.d() as u64, f.d);
    relabel_provenance(b, Provenance::FullMatrixSuper)
}

fn relabel_provenance(b: UnitaryBasis, p: Provenance) -> Result<UnitaryBasis> {
    let spec = b.spec().clone();
    let side = b.side();
    UnitaryBasis::with_side(spec, b.into_elements(), p, side)
}
