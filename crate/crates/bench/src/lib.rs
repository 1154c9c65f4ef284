//! Workloads shared by the benchmarks.

use reductor_core::{catalog, Fan};

/// Fans with a nontrivial group, smallest first.
pub fn workloads() -> Vec<(&'static str, Fan)> {
    let mut all: Vec<_> = catalog::all()
        .into_iter()
        .filter(|(_, f)| f.group().order() > 1)
        .collect();
    all.sort_by_key(|(_, f)| f.group().order());
    all
}
