//! JSON documents for inclusion specs and bases.
//!
//! A spec document:
//! ```json
//! { "name": "c_in_m1_m2", "inclusion_matrix": [[1], [2]], "sub_dims": [1],
//!   "super_dims": [1, 2], "trace_vector": [1, 2] }
//! ```
//! `super_dims` defaults to `A m̃` and `trace_vector` to the Markov trace.
//! A basis document embeds its spec and lists each element as a list of
//! blocks, each block row-major with entries `[re, im]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{BlockOperator, CMatrix, TracialState};
use crate::basis::{Provenance, Side, UnitaryBasis};
use crate::error::{Error, Result};
use crate::inclusion::{default_state, InclusionSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub name: String,
    pub inclusion_matrix: Vec<Vec<u64>>,
    pub sub_dims: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub super_dims: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_vector: Option<Vec<u64>>,
}

impl SpecDocument {
    pub fn from_spec(name: impl Into<String>, spec: &InclusionSpec) -> Self {
        Self {
            name: name.into(),
            inclusion_matrix: spec.matrix().to_vec(),
            sub_dims: spec.sub_dims().to_vec(),
            super_dims: Some(spec.super_dims().to_vec()),
            trace_vector: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// The spec, shape-checked but not validated.
    pub fn spec(&self) -> Result<InclusionSpec> {
        match &self.super_dims {
            Some(n) => InclusionSpec::new(self.inclusion_matrix.clone(), self.sub_dims.clone(), n.clone()),
            None => InclusionSpec::from_matrix(self.inclusion_matrix.clone(), self.sub_dims.clone()),
        }
    }

    /// The requested trace, or the default one of the inclusion.
    pub fn state(&self, spec: &InclusionSpec) -> Result<TracialState> {
        match &self.trace_vector {
            Some(p) => TracialState::integer(spec.super_algebra(), p.clone()),
            None => default_state(spec),
        }
    }
}

pub type EncodedBlock = Vec<[f64; 2]>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDocument {
    pub spec: SpecDocument,
    pub d: usize,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "is_right")]
    pub side: Side,
    pub elements: Vec<Vec<EncodedBlock>>,
}

fn is_right(s: &Side) -> bool {
    *s == Side::Right
}

impl BasisDocument {
    pub fn from_basis(name: impl Into<String>, b: &UnitaryBasis) -> Self {
        let elements = b
            .elements()
            .iter()
            .map(|w| {
                w.blocks()
                    .iter()
                    .map(|blk| {
                        let mut out = Vec::with_capacity(blk.len());
                        for r in 0..blk.nrows() {
                            for c in 0..blk.ncols() {
                                let z = blk[(r, c)];
                                out.push([z.re, z.im]);
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        Self {
            spec: SpecDocument::from_spec(name, b.spec()),
            d: b.d(),
            provenance: b.provenance().to_string(),
            side: b.side(),
            elements,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Decodes the elements; shapes must match the super-algebra and
    /// `d` must equal the element count.
    pub fn basis(&self) -> Result<UnitaryBasis> {
        let spec = self.spec.spec()?;
        if self.d != self.elements.len() {
            return Err(Error::Document(format!(
                "d = {} but {} elements are listed",
                self.d,
                self.elements.len()
            )));
        }
        let provenance: Provenance = self.provenance.parse()?;
        let dims = spec.super_dims();
        let elements = self
            .elements
            .iter()
            .enumerate()
            .map(|(t, blocks)| {
                if blocks.len() != dims.len() {
                    return Err(Error::Document(format!(
                        "element {t} has {} blocks, expected {}",
                        blocks.len(),
                        dims.len()
                    )));
                }
                let decoded = blocks
                    .iter()
                    .zip(dims)
                    .enumerate()
                    .map(|(i, (entries, &n))| {
                        let n = n as usize;
                        if entries.len() != n * n {
                            return Err(Error::Document(format!(
                                "element {t} block {i} has {} entries, expected {}",
                                entries.len(),
                                n * n
                            )));
                        }
                        Ok(CMatrix::from_row_iterator(
                            n,
                            n,
                            entries.iter().map(|[re, im]| Complex64::new(*re, *im)),
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                BlockOperator::from_blocks(decoded)
            })
            .collect::<Result<Vec<_>>>()?;
        UnitaryBasis::with_side(spec, elements, provenance, self.side)
    }
}
