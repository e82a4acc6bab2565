//! Unitary orthonormal bases and the constructions producing them.
//!
//! Every basis is expressed in the canonical coordinates of its spec: the
//! sub-algebra sits inside the super-algebra via [`crate::inclusion::Embedding`].
//! Constructions that naturally produce another layout are conjugated by a
//! block permutation first.

mod abelian;
mod combinators;
mod full_matrix;
mod relabel;
mod weyl;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::algebra::BlockOperator;
use crate::error::{Error, Result};
use crate::inclusion::InclusionSpec;

pub use abelian::{abelian_basis, abelian_generators};
pub use combinators::{adjoint_basis, concat_basis, direct_sum_basis, identity_basis, tensor_basis};
pub use full_matrix::{full_matrix_sub_basis, full_matrix_super_basis, SuperFactors};
pub use relabel::BlockPermutation;
pub use weyl::{weyl_basis, weyl_generators};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Abelian,
    Ckp,
    Weyl,
    Concat,
    Tensor,
    DirectSum,
    BasicConstruction,
    FullMatrixSub,
    FullMatrixSuper,
    Identity,
    Imported,
}

impl Provenance {
    pub const ALL: [Provenance; 11] = [
        Provenance::Abelian,
        Provenance::Ckp,
        Provenance::Weyl,
        Provenance::Concat,
        Provenance::Tensor,
        Provenance::DirectSum,
        Provenance::BasicConstruction,
        Provenance::FullMatrixSub,
        Provenance::FullMatrixSuper,
        Provenance::Identity,
        Provenance::Imported,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Abelian => "abelian",
            Provenance::Ckp => "ckp",
            Provenance::Weyl => "weyl",
            Provenance::Concat => "concat",
            Provenance::Tensor => "tensor",
            Provenance::DirectSum => "direct_sum",
            Provenance::BasicConstruction => "basic_construction",
            Provenance::FullMatrixSub => "full_matrix_sub",
            Provenance::FullMatrixSuper => "full_matrix_super",
            Provenance::Identity => "identity",
            Provenance::Imported => "imported",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Provenance::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Document(format!("unknown provenance tag `{s}`")))
    }
}

/// Which expansion the family satisfies.
///
/// `Right`: `X = Σ W_j E(W_j* X)` with `E(W_j* W_k) = δ_jk`.
/// `Left`: `X = Σ E(X W_j*) W_j` with `E(W_j W_k*) = δ_jk`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    #[default]
    Right,
    Left,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryBasis {
    spec: InclusionSpec,
    elements: Vec<BlockOperator>,
    provenance: Provenance,
    side: Side,
}

impl UnitaryBasis {
    /// Checks shapes only; unitarity and orthonormality are the verifier's job.
    pub fn new(spec: InclusionSpec, elements: Vec<BlockOperator>, provenance: Provenance) -> Result<Self> {
        Self::with_side(spec, elements, provenance, Side::Right)
    }

    pub fn with_side(
        spec: InclusionSpec,
        elements: Vec<BlockOperator>,
        provenance: Provenance,
        side: Side,
    ) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyInput("basis elements"));
        }
        let alg = spec.super_algebra();
        for w in &elements {
            w.check_algebra(&alg)?;
        }
        Ok(Self {
            spec,
            elements,
            provenance,
            side,
        })
    }

    pub fn spec(&self) -> &InclusionSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[BlockOperator] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<BlockOperator> {
        self.elements
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn d(&self) -> usize {
        self.elements.len()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Same elements with `W_0` multiplied out: `{W_0* W_j}`.
    ///
    /// Left multiplication by a unitary preserves orthonormality of a right
    /// basis, so the result is again a basis with first element `I`.
    pub fn normalized(&self) -> Self {
        let w0 = self.elements[0].adjoint();
        let elements = match self.side {
            Side::Right => self.elements.iter().map(|w| &w0 * w).collect(),
            Side::Left => self.elements.iter().map(|w| w * &w0).collect(),
        };
        Self {
            elements,
            ..self.clone()
        }
    }
}

/// Construction methods selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Auto,
    Abelian,
    Weyl,
    Tensor,
    FullMatrixSub,
    FullMatrixSuper,
    Basic,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Auto,
        Method::Abelian,
        Method::Weyl,
        Method::Tensor,
        Method::FullMatrixSub,
        Method::FullMatrixSuper,
        Method::Basic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Abelian => "abelian",
            Method::Weyl => "weyl",
            Method::Tensor => "tensor",
            Method::FullMatrixSub => "full-matrix-sub",
            Method::FullMatrixSuper => "full-matrix-super",
            Method::Basic => "basic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown method `{s}`")))
    }
}

/// Order tried by [`Method::Auto`].
pub const AUTO_ORDER: [Method; 4] = [
    Method::Abelian,
    Method::Weyl,
    Method::FullMatrixSub,
    Method::FullMatrixSuper,
];

/// Builds a basis for `spec` with the given method.
///
/// `Basic` builds a basis for `spec` with `Auto` and returns the induced
/// basis of the next tower step, whose spec is `spec.transposed()`.
/// `Tensor` factors `spec` as `(M_g ⊆ M_g) ⊗ quotient` with `g` the gcd of
/// all block sizes and builds the quotient with `Abelian` or `Weyl`.
pub fn construct(spec: &InclusionSpec, method: Method) -> Result<UnitaryBasis> {
    spec.validate()?;
    match method {
        Method::Abelian => abelian_basis(spec),
        Method::Weyl => weyl_basis(spec),
        Method::FullMatrixSub => full_matrix_sub_basis(spec),
        Method::FullMatrixSuper => full_matrix_super_basis(spec),
        Method::Tensor => combinators::gcd_tensor_basis(spec),
        Method::Basic => {
            let base = construct(spec, Method::Auto)?;
            let bc = crate::jones::BasicConstruction::build(spec)?;
            crate::jones::basic_construction_basis(&bc, &base)
        }
        Method::Auto => auto_basis(spec),
    }
}

fn auto_basis(spec: &InclusionSpec) -> Result<UnitaryBasis> {
    let report = crate::inclusion::check_spectral_condition(spec)?;
    if !report.holds {
        return Err(Error::SpectralConditionFailed);
    }
    for m in AUTO_ORDER {
        if let Ok(b) = construct(spec, m) {
            return Ok(b);
        }
    }
    Err(Error::NoKnownConstruction)
}
