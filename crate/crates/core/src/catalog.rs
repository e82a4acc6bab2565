//! The shipped catalog of inclusion specs (`catalog/*.json`).

use crate::error::Result;
use crate::inclusion::InclusionSpec;
use crate::io::SpecDocument;

const SOURCES: [(&str, &str); 12] = [
    ("c2_in_m2", include_str!("../../../catalog/c2_in_m2.json")),
    ("c2_in_m3", include_str!("../../../catalog/c2_in_m3.json")),
    ("c_in_m1_m2", include_str!("../../../catalog/c_in_m1_m2.json")),
    ("c_in_m2", include_str!("../../../catalog/c_in_m2.json")),
    ("c_in_m3", include_str!("../../../catalog/c_in_m3.json")),
    ("c_in_m5", include_str!("../../../catalog/c_in_m5.json")),
    ("c2_in_m2_m2", include_str!("../../../catalog/c2_in_m2_m2.json")),
    ("m2_in_m2_m4", include_str!("../../../catalog/m2_in_m2_m4.json")),
    ("m2_m2_in_m4", include_str!("../../../catalog/m2_m2_in_m4.json")),
    ("c_m2_in_m5", include_str!("../../../catalog/c_m2_in_m5.json")),
    ("c3_cyclic", include_str!("../../../catalog/c3_cyclic.json")),
    ("c2_in_m2_m4", include_str!("../../../catalog/c2_in_m2_m4.json")),
];

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub document: SpecDocument,
    pub spec: InclusionSpec,
}

/// All catalog entries, in a fixed order.
pub fn entries() -> Result<Vec<CatalogEntry>> {
    SOURCES
        .iter()
        .map(|(name, text)| {
            let document = SpecDocument::parse(text)?;
            let spec = document.spec()?;
            spec.validate()?;
            Ok(CatalogEntry { name, document, spec })
        })
        .collect()
}

pub fn get(name: &str) -> Option<CatalogEntry> {
    entries().ok()?.into_iter().find(|e| e.name == name)
}
