//! Fixtures shared by the criterion benches.

use uob_core::catalog;
use uob_core::InclusionSpec;

/// A catalog spec by name.
///
/// # Panics
/// If the name is not in the catalog.
pub fn spec(name: &str) -> InclusionSpec {
    catalog::get(name)
        .unwrap_or_else(|| panic!("no catalog entry `{name}`"))
        .spec
}

/// Catalog specs satisfying the spectral condition, with their names.
pub fn spectral_specs() -> Vec<(&'static str, InclusionSpec)> {
    catalog::entries()
        .expect("catalog parses")
        .into_iter()
        .filter(|e| uob_core::check_spectral_condition(&e.spec).is_ok_and(|r| r.holds))
        .map(|e| (e.name, e.spec))
        .collect()
}
