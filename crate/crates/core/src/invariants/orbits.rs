use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arrangement::{FlatId, IntersectionLattice};
use crate::coxeter::{CoxeterMatrix, CoxeterType, DegreeTable, Irreducible, RootSet, RootSystem};
use crate::error::{Error, Result};

/// A `W`-orbit of flats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicType {
    pub id: usize,
    pub codim: usize,
    pub representative: FlatId,
    pub size: usize,
    /// Isomorphism type of the pointwise stabilizer, with `'` suffixes when
    /// several orbits share it.
    pub label: String,
    /// `|W_X|`.
    pub subgroup_order: u128,
}

/// Orbit decomposition of a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    pub types: Vec<ParabolicType>,
    /// Orbit id of every flat.
    pub of_flat: Vec<usize>,
}

impl OrbitData {
    pub fn type_of(&self, flat: FlatId) -> &ParabolicType {
        &self.types[self.of_flat[flat]]
    }

    /// Orbit ids of codimension `k`, in display order.
    pub fn at_codim(&self, k: usize) -> Vec<usize> {
        self.types
            .iter()
            .filter(|t| t.codim == k)
            .map(|t| t.id)
            .collect()
    }

    pub fn by_label(&self, label: &str) -> Option<&ParabolicType> {
        self.types.iter().find(|t| t.label == label)
    }

    /// Members of an orbit, in lattice order.
    pub fn members(&self, id: usize) -> Vec<FlatId> {
        (0..self.of_flat.len())
            .filter(|&f| self.of_flat[f] == id)
            .collect()
    }
}

/// Simple roots of the root subsystem `roots` (closed under its own
/// reflections): those whose reflection permutes the others.
pub fn subsystem_simple_roots(system: &RootSystem, roots: &RootSet) -> Vec<usize> {
    roots
        .iter()
        .filter(|&b| {
            let s = system.reflection(b);
            roots.iter().all(|g| g == b || !s.apply(g).1)
        })
        .collect()
}

/// Irreducible factors of the reflection subgroup generated by `roots`.
pub fn subsystem_type(system: &RootSystem, roots: &RootSet) -> Result<Vec<Irreducible>> {
    let simple = subsystem_simple_roots(system, roots);
    let k = simple.len();
    let mut entries = vec![vec![1u32; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let (a, b) = (system.reflection(simple[i]), system.reflection(simple[j]));
                entries[i][j] = a.compose(b).order() as u32;
            }
        }
    }
    let matrix = CoxeterMatrix::new(entries)?;
    Ok(CoxeterType::classify(&matrix)?.factors().to_vec())
}

/// Orbits of the flats under `W`, closed with the simple reflections.
/// Within a codimension, orbits are ordered by decreasing size and then by
/// representative.
pub fn orbits(lattice: &IntersectionLattice) -> Result<OrbitData> {
    let system = lattice.system();
    let gens = system.simple_reflections();
    let mut of_flat = vec![usize::MAX; lattice.len()];
    let mut raw: Vec<(usize, FlatId, usize)> = Vec::new();
    for start in 0..lattice.len() {
        if of_flat[start] != usize::MAX {
            continue;
        }
        let id = raw.len();
        of_flat[start] = id;
        let mut size = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for g in gens {
                let img = g.map_set(lattice.flat(f).roots());
                let z = lattice.find(&img).ok_or_else(|| {
                    Error::InvariantViolation(format!(
                        "image {img:?} of a flat is not in the lattice"
                    ))
                })?;
                if of_flat[z] == usize::MAX {
                    of_flat[z] = id;
                    size += 1;
                    queue.push_back(z);
                }
            }
        }
        raw.push((lattice.codim(start), start, size));
    }

    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&i| (raw[i].0, std::cmp::Reverse(raw[i].2), raw[i].1));
    let mut renumber = vec![0; raw.len()];
    let mut types = Vec::new();
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new;
        let (codim, rep, size) = raw[old];
        let roots = lattice.flat(rep).roots();
        let factors = subsystem_type(system, roots)?;
        if factors.iter().map(Irreducible::rank).sum::<usize>() != codim {
            return Err(Error::InvariantViolation(format!(
                "stabilizer of {roots:?} has rank other than {codim}"
            )));
        }
        let subgroup_order = factors.iter().map(|f| DegreeTable::of(f).order).product();
        types.push(ParabolicType {
            id: new,
            codim,
            representative: rep,
            size,
            label: CoxeterType::label_of(&factors),
            subgroup_order,
        });
    }
    for f in of_flat.iter_mut() {
        *f = renumber[*f];
    }

    // disambiguate repeated labels inside a codimension
    let mut groups: BTreeMap<(usize, String), Vec<usize>> = BTreeMap::new();
    for t in &types {
        groups
            .entry((t.codim, t.label.clone()))
            .or_default()
            .push(t.id);
    }
    for ids in groups.values().filter(|ids| ids.len() > 1) {
        for (k, &id) in ids.iter().enumerate() {
            types[id].label.push_str(&"'".repeat(k + 1));
        }
    }
    Ok(OrbitData { types, of_flat })
}
