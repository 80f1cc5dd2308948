use serde::{Deserialize, Serialize};

use super::mobius::mobius_below;
use super::orbits::OrbitData;
use super::poly::IntPolynomial;
use crate::arrangement::{FlatId, IntersectionLattice};
use crate::coxeter::{CoxeterType, Irreducible};
use crate::error::{Error, Result};

/// Where a list of exponents came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Factored from a characteristic polynomial computed here.
    Computed,
    /// Shipped as static data.
    Bundled,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Computed => "computed",
            Provenance::Bundled => "bundled",
        })
    }
}

/// Orlik-Solomon exponents of a restriction `A^X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OSData {
    pub exponents: Vec<u64>,
    pub provenance: Provenance,
}

impl OSData {
    /// `prod_{i >= 2} (b_i - 1)`.
    pub fn beta(&self) -> u128 {
        self.exponents
            .iter()
            .skip(1)
            .map(|&b| u128::from(b - 1))
            .product()
    }
}

/// `chi(A^X, t)`; needs the lattice down to the origin below `X`.
pub fn restriction_polynomial(lattice: &IntersectionLattice, x: FlatId) -> Result<IntPolynomial> {
    let restriction = lattice.full_restriction(x)?;
    let dim = lattice.flat(x).dim();
    let mut coeffs = vec![0i128; dim + 1];
    for (z, mu) in mobius_below(lattice, &restriction) {
        coeffs[lattice.flat(z).dim()] += i128::from(mu);
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Exponents of restrictions to hyperplanes of the exceptional types
/// whose full lattices are out of reach.
pub fn bundled_hyperplane_exponents(t: &Irreducible) -> Option<Vec<u64>> {
    match t {
        Irreducible::E(6) => Some(vec![1, 4, 5, 7, 8]),
        Irreducible::E(7) => Some(vec![1, 5, 7, 9, 11, 13]),
        Irreducible::E(8) => Some(vec![1, 7, 11, 13, 17, 19, 23]),
        _ => None,
    }
}

/// Orlik-Solomon exponents of `A^X`: factored from the restriction's
/// characteristic polynomial when the lattice reaches the origin, otherwise
/// taken from bundled data (the exponents of `W` for `X = V`, the table
/// above for hyperplanes of `E6`, `E7`, `E8`).
pub fn os_exponents(lattice: &IntersectionLattice, x: FlatId) -> Result<OSData> {
    if lattice.is_complete() {
        let chi = restriction_polynomial(lattice, x)?;
        let exponents = chi.positive_integer_roots()?;
        return Ok(OSData {
            exponents,
            provenance: Provenance::Computed,
        });
    }
    let ctype: &CoxeterType = lattice.system().coxeter_type();
    let bundled = match lattice.codim(x) {
        0 => Some(ctype.exponents()),
        1 if ctype.is_irreducible() => bundled_hyperplane_exponents(&ctype.factors()[0]),
        _ => None,
    };
    bundled
        .map(|exponents| OSData {
            exponents,
            provenance: Provenance::Bundled,
        })
        .ok_or(Error::InsufficientDepth {
            needed: lattice.rank(),
            available: lattice.max_codim(),
        })
}

/// `u[X][Y]`: flats of type `Y` inside the representative of type `X`.
/// Rows and columns follow the orbit order (non-increasing dimension).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OSMatrix {
    pub labels: Vec<String>,
    pub entries: Vec<Vec<u64>>,
}

impl OSMatrix {
    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.entries[x][y]
    }
}

pub fn os_matrix(lattice: &IntersectionLattice, orbits: &OrbitData) -> OSMatrix {
    let k = orbits.types.len();
    let mut entries = vec![vec![0u64; k]; k];
    for (x, row) in entries.iter_mut().enumerate() {
        let rep = orbits.types[x].representative;
        let rx = lattice.flat(rep).roots();
        for z in lattice.level(lattice.codim(rep)).start..lattice.len() {
            if rx.is_subset(lattice.flat(z).roots()) {
                row[orbits.of_flat[z]] += 1;
            }
        }
    }
    OSMatrix {
        labels: orbits.types.iter().map(|t| t.label.clone()).collect(),
        entries,
    }
}

/// `nu[X]`: number of subsets `J` of `S` whose standard parabolic fixed
/// flat lies in `[X]` (only subsets within the lattice depth are seen).
pub fn nu(lattice: &IntersectionLattice, orbits: &OrbitData) -> Vec<u64> {
    let system = lattice.system();
    let n = system.rank();
    let mut counts = vec![0u64; orbits.types.len()];
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize > lattice.max_codim() {
            continue;
        }
        if let Some(f) = lattice.find(&system.standard_parabolic(mask)) {
            counts[orbits.of_flat[f]] += 1;
        }
    }
    counts
}

/// Simple-root subsets `J` with `V^J` in the orbit `id`, as bitmasks.
pub fn standard_members(lattice: &IntersectionLattice, orbits: &OrbitData, id: usize) -> Vec<u64> {
    let system = lattice.system();
    let codim = orbits.types[id].codim;
    (0u64..(1 << system.rank()))
        .filter(|m| m.count_ones() as usize == codim)
        .filter(|&m| {
            lattice
                .find(&system.standard_parabolic(m))
                .is_some_and(|f| orbits.of_flat[f] == id)
        })
        .collect()
}
