use std::cmp::Ordering;

use crate::coxeter::{RootSet, RootSystem};
use crate::error::{Error, Result};

/// A flat of a reflection arrangement, stored as the saturated set of
/// positive roots whose hyperplanes contain it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Flat {
    roots: RootSet,
    dim: usize,
}

impl Flat {
    pub(crate) fn from_parts(roots: RootSet, dim: usize) -> Self {
        Self { roots, dim }
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Y` is contained in `self` iff its root set is a superset.
    pub fn contains(&self, other: &Flat) -> bool {
        self.roots.is_subset(&other.roots)
    }
}

impl PartialOrd for Flat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Larger flats first, then lexicographic on sorted root indices.
impl Ord for Flat {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dim
            .cmp(&self.dim)
            .then_with(|| self.roots.iter().cmp(other.roots.iter()))
    }
}

/// The intersection of the hyperplanes of `roots`, in canonical form.
pub fn flat_from_roots(system: &RootSystem, roots: &RootSet) -> Result<Flat> {
    if let Some(bad) = roots.iter().find(|&i| i >= system.num_roots()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: system.num_roots(),
        });
    }
    let saturated = system.saturate(roots);
    let dim = system.rank() - system.rank_of(&saturated);
    Ok(Flat::from_parts(saturated, dim))
}
