use std::collections::{HashMap, HashSet};
use std::ops::Range;
use std::sync::Arc;

use rayon::prelude::*;

use super::flat::Flat;
use crate::arith::matrix::dot;
use crate::arith::{AlgebraicNumber, FieldVector};
use crate::coxeter::{RootSet, RootSystem};
use crate::error::{Error, Result};

pub type FlatId = usize;

/// Flats of a reflection arrangement graded by codimension, up to a
/// maximal codimension. Flats are numbered level by level; inside a level
/// they are sorted by their root indices.
#[derive(Debug, Clone)]
pub struct IntersectionLattice {
    system: Arc<RootSystem>,
    max_codim: usize,
    flats: Vec<Flat>,
    level_start: Vec<usize>,
    index: HashMap<RootSet, FlatId>,
    bases: Vec<Vec<FieldVector>>,
}

/// The children of `X` obtained by cutting with every hyperplane not
/// containing it.
fn children(system: &RootSystem, roots: &RootSet, basis: &[FieldVector]) -> Vec<RootSet> {
    if basis.len() == 1 {
        return vec![RootSet::full(system.num_roots())];
    }
    let mut classes: HashMap<Vec<AlgebraicNumber>, RootSet> = HashMap::new();
    for g in 0..system.num_roots() {
        if roots.contains(g) {
            continue;
        }
        // the root's functional restricted to X, up to scale
        let mut f: Vec<AlgebraicNumber> =
            basis.iter().map(|x| dot(system.functional(g), x)).collect();
        let lead = f
            .iter()
            .find(|c| !c.is_zero())
            .expect("root outside the flat")
            .clone();
        if !lead.is_one() {
            let inv = lead.inverse().expect("nonzero");
            f.iter_mut().for_each(|c| *c = &*c * &inv);
        }
        classes.entry(f).or_insert(*roots).insert(g);
    }
    classes.into_values().collect()
}

fn sort_key(set: &RootSet) -> Vec<usize> {
    set.to_vec()
}

impl IntersectionLattice {
    /// Builds every flat of codimension at most `max_codim`. Refuses with
    /// [`Error::LimitExceeded`] when a level would hold more than `limit`
    /// flats.
    pub fn build(system: Arc<RootSystem>, max_codim: usize, limit: usize) -> Result<Self> {
        let n = system.rank();
        if max_codim > n {
            return Err(Error::InvalidArgument(format!(
                "max codimension {max_codim} exceeds the rank {n}"
            )));
        }
        let mut levels: Vec<Vec<RootSet>> = vec![vec![RootSet::empty()]];
        let mut bases: Vec<Vec<Vec<FieldVector>>> =
            vec![vec![system.flat_basis(&RootSet::empty())]];
        for k in 0..max_codim {
            let parents = &levels[k];
            let parent_bases = &bases[k];
            let found: Vec<Vec<RootSet>> = parents
                .par_iter()
                .zip(parent_bases.par_iter())
                .map(|(r, b)| children(&system, r, b))
                .collect();
            let mut seen = HashSet::new();
            let mut level: Vec<RootSet> = found
                .into_iter()
                .flatten()
                .filter(|s| seen.insert(*s))
                .collect();
            if level.len() > limit {
                return Err(Error::LimitExceeded {
                    what: format!(
                        "flats of codimension {} in {}",
                        k + 1,
                        system.coxeter_type()
                    ),
                    needed: level.len() as u128,
                    limit: limit as u128,
                });
            }
            level.sort_by_cached_key(sort_key);
            let level_bases: Vec<Vec<FieldVector>> =
                level.par_iter().map(|r| system.flat_basis(r)).collect();
            if let Some(bad) = level_bases.iter().position(|b| b.len() != n - k - 1) {
                return Err(Error::InvariantViolation(format!(
                    "flat {:?} at codimension {} has dimension {}",
                    level[bad],
                    k + 1,
                    level_bases[bad].len()
                )));
            }
            levels.push(level);
            bases.push(level_bases);
        }
        Ok(Self::assemble(system, max_codim, levels, bases))
    }

    /// Rebuilds a lattice from stored root sets (one list per codimension).
    pub fn from_levels(system: Arc<RootSystem>, levels: Vec<Vec<RootSet>>) -> Result<Self> {
        let n = system.rank();
        if levels.is_empty() || levels.len() > n + 1 || levels[0] != vec![RootSet::empty()] {
            return Err(Error::InvalidArgument("malformed lattice levels".into()));
        }
        let max_codim = levels.len() - 1;
        let mut bases = Vec::new();
        for (k, level) in levels.iter().enumerate() {
            let bs: Vec<Vec<FieldVector>> =
                level.par_iter().map(|r| system.flat_basis(r)).collect();
            for (r, b) in level.iter().zip(&bs) {
                if b.len() != n - k || system.roots_vanishing_on(b) != *r {
                    return Err(Error::InvalidArgument(format!(
                        "stored flat {r:?} is not a saturated flat of codimension {k}"
                    )));
                }
            }
            bases.push(bs);
        }
        Ok(Self::assemble(system, max_codim, levels, bases))
    }

    fn assemble(
        system: Arc<RootSystem>,
        max_codim: usize,
        levels: Vec<Vec<RootSet>>,
        bases: Vec<Vec<Vec<FieldVector>>>,
    ) -> Self {
        let n = system.rank();
        let mut flats = Vec::new();
        let mut level_start = Vec::new();
        for (k, level) in levels.into_iter().enumerate() {
            level_start.push(flats.len());
            flats.extend(level.into_iter().map(|r| Flat::from_parts(r, n - k)));
        }
        level_start.push(flats.len());
        let index = flats
            .iter()
            .enumerate()
            .map(|(i, f)| (*f.roots(), i))
            .collect();
        Self {
            system,
            max_codim,
            flats,
            level_start,
            index,
            bases: bases.into_iter().flatten().collect(),
        }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn max_codim(&self) -> usize {
        self.max_codim
    }

    pub fn is_complete(&self) -> bool {
        self.max_codim == self.rank()
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: FlatId) -> &Flat {
        &self.flats[id]
    }

    pub fn basis(&self, id: FlatId) -> &[FieldVector] {
        &self.bases[id]
    }

    pub fn codim(&self, id: FlatId) -> usize {
        self.rank() - self.flats[id].dim()
    }

    /// Ids of the flats of codimension `k`.
    pub fn level(&self, k: usize) -> Range<FlatId> {
        if k > self.max_codim {
            return 0..0;
        }
        self.level_start[k]..self.level_start[k + 1]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        (0..=self.max_codim).map(|k| self.level(k).len()).collect()
    }

    pub fn hyperplanes(&self) -> Range<FlatId> {
        self.level(1)
    }

    pub fn find(&self, roots: &RootSet) -> Option<FlatId> {
        self.index.get(roots).copied()
    }

    pub fn levels_as_root_sets(&self) -> Vec<Vec<RootSet>> {
        (0..=self.max_codim)
            .map(|k| self.level(k).map(|i| *self.flats[i].roots()).collect())
            .collect()
    }

    /// Flats `Z` with `Z` contained in `X` and `codim Z = codim X + rel`.
    pub fn contained_at(&self, x: FlatId, rel: usize) -> Vec<FlatId> {
        let rx = self.flats[x].roots();
        self.level(self.codim(x) + rel)
            .filter(|&z| rx.is_subset(self.flats[z].roots()))
            .collect()
    }

    /// The restricted arrangement on `X`, down to relative codimension
    /// `depth`.
    pub fn restriction(&self, x: FlatId, depth: usize) -> Result<Restriction> {
        let needed = self.codim(x) + depth;
        if needed > self.max_codim {
            return Err(Error::InsufficientDepth {
                needed,
                available: self.max_codim,
            });
        }
        Ok(Restriction {
            flat: x,
            levels: (0..=depth).map(|r| self.contained_at(x, r)).collect(),
        })
    }

    /// The restriction to `X` down to the origin.
    pub fn full_restriction(&self, x: FlatId) -> Result<Restriction> {
        self.restriction(x, self.flats[x].dim())
    }
}

/// The interval of flats below `X`, graded by relative codimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub flat: FlatId,
    pub levels: Vec<Vec<FlatId>>,
}

impl Restriction {
    /// Flats of relative codimension one.
    pub fn hyperplanes(&self) -> &[FlatId] {
        self.levels.get(1).map_or(&[], |l| l.as_slice())
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn flats(&self) -> impl Iterator<Item = (usize, FlatId)> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(r, l)| l.iter().map(move |&z| (r, z)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_type;

    fn lattice(t: &str, k: usize) -> IntersectionLattice {
        let sys = Arc::new(RootSystem::generate(&parse_type(t).unwrap()).unwrap());
        IntersectionLattice::build(sys, k, 1_000_000).unwrap()
    }

    #[test]
    fn small_lattices() {
        assert_eq!(lattice("A2", 2).level_sizes(), vec![1, 3, 1]);
        assert_eq!(lattice("B2", 2).level_sizes(), vec![1, 4, 1]);
        assert_eq!(lattice("A3", 3).level_sizes(), vec![1, 6, 7, 1]);
        assert_eq!(lattice("B3", 3).level_sizes(), vec![1, 9, 13, 1]);
        assert_eq!(lattice("H3", 3).level_sizes(), vec![1, 15, 31, 1]);
    }

    #[test]
    fn restriction_depth_is_checked() {
        let l = lattice("A3", 2);
        let h = l.hyperplanes().start;
        assert_eq!(l.restriction(h, 1).unwrap().hyperplanes().len(), 3);
        assert_eq!(
            l.full_restriction(h).unwrap_err(),
            Error::InsufficientDepth {
                needed: 3,
                available: 2
            }
        );
    }

    #[test]
    fn limit_guard_reports_counts() {
        let sys = Arc::new(RootSystem::generate(&parse_type("A3").unwrap()).unwrap());
        let err = IntersectionLattice::build(sys, 2, 5).unwrap_err();
        assert!(matches!(
            err,
            Error::LimitExceeded {
                needed: 6,
                limit: 5,
                ..
            }
        ));
    }

    #[test]
    fn levels_round_trip() {
        let l = lattice("B3", 3);
        let back =
            IntersectionLattice::from_levels(l.system().clone(), l.levels_as_root_sets()).unwrap();
        assert_eq!(back.flats(), l.flats());
    }
}
