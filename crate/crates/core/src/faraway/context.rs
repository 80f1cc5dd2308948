use std::sync::Arc;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::report::Exact;
use crate::arith::FieldVector;
use crate::arrangement::{fundamental_cone_point, FlatId, IntersectionLattice};
use crate::coxeter::{CoxeterType, RootSet, RootSystem};
use crate::error::{Error, Result};
use crate::invariants::{mobius, orbits, os_matrix, OSMatrix, OrbitData};

/// Core `I` and support `J` of the parabolic subgroup fixing a flat, as
/// bitmasks over the simple reflections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoreSupport {
    pub core: u64,
    pub support: u64,
    /// Whether the geometric method was also run on this flat.
    pub cross_checked: bool,
}

/// Core and support from root data: simple roots in the set, and the union
/// of coefficient supports.
pub fn core_support_by_roots(system: &RootSystem, roots: &RootSet) -> (u64, u64) {
    let n = system.rank();
    let core = (0..n)
        .filter(|&s| roots.contains(s))
        .fold(0u64, |m, s| m | 1 << s);
    let support = roots.iter().fold(0u64, |m, b| m | system.support(b));
    (core, support)
}

/// Core and support from the geometry of the flat: the walls containing it,
/// and the walls that the face `X ∩ C0` does not leave.
pub fn core_support_by_geometry(system: &RootSystem, basis: &[FieldVector]) -> (u64, u64) {
    let n = system.rank();
    let gram = system.gram();
    let mut core = 0u64;
    let mut support = 0u64;
    for s in 0..n {
        let row = gram.row(s);
        if basis
            .iter()
            .all(|x| crate::arith::matrix::dot(&row, x).is_zero())
        {
            core |= 1 << s;
        }
        if !fundamental_cone_point(system, basis, Some(s)) {
            support |= 1 << s;
        }
    }
    (core, support)
}

/// Deterministic subsample keyed by a digest of the root set: rate 1 keeps
/// everything, rate 16 about one flat in sixteen.
pub fn in_sample(roots: &RootSet, rate: u32) -> bool {
    if rate <= 1 {
        return true;
    }
    let mut h = Sha256::new();
    for w in roots.words() {
        h.update(w.to_le_bytes());
    }
    let d = h.finalize();
    u32::from_le_bytes([d[0], d[1], d[2], d[3]]) % rate == 0
}

/// Default cross-check rate: everything up to rank 3, one in sixteen above.
pub fn default_sample_rate(rank: usize) -> u32 {
    if rank <= 3 {
        1
    } else {
        16
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Maximal number of flats per codimension level.
    pub flat_limit: usize,
    /// Geometric cross-check rate for core and support (see [`in_sample`]).
    pub sample_rate: u32,
}

impl BuildOptions {
    pub fn for_rank(rank: usize) -> Self {
        Self {
            flat_limit: 1_000_000,
            sample_rate: default_sample_rate(rank),
        }
    }
}

/// A lattice together with everything derived from it: Möbius values,
/// orbits, the Orlik-Solomon matrix, and core and support of every flat.
#[derive(Debug, Clone)]
pub struct Context {
    lattice: IntersectionLattice,
    mobius: Vec<i64>,
    orbits: OrbitData,
    u: OSMatrix,
    cores: Vec<CoreSupport>,
}

impl Context {
    pub fn build(ctype: &CoxeterType, max_codim: usize, options: BuildOptions) -> Result<Self> {
        let system = Arc::new(RootSystem::generate(ctype)?);
        let lattice = IntersectionLattice::build(system, max_codim, options.flat_limit)?;
        Self::from_lattice(lattice, options.sample_rate)
    }

    /// Derives everything from a built lattice, running the geometric
    /// core/support method on the sampled flats. A disagreement between the
    /// two methods is an error.
    pub fn from_lattice(lattice: IntersectionLattice, sample_rate: u32) -> Result<Self> {
        let mobius = mobius(&lattice);
        let orbits = orbits(&lattice)?;
        let u = os_matrix(&lattice, &orbits);
        let system = lattice.system().clone();
        let cores = (0..lattice.len())
            .into_par_iter()
            .map(|f| {
                let roots = lattice.flat(f).roots();
                let (core, support) = core_support_by_roots(&system, roots);
                let check = in_sample(roots, sample_rate);
                if check {
                    let geo = core_support_by_geometry(&system, lattice.basis(f));
                    if geo != (core, support) {
                        return Err(Error::InvariantViolation(format!(
                            "core/support of {roots:?}: roots give {:?}, geometry gives {geo:?}",
                            (core, support)
                        )));
                    }
                }
                Ok(CoreSupport {
                    core,
                    support,
                    cross_checked: check,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            lattice,
            mobius,
            orbits,
            u,
            cores,
        })
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        self.lattice.system()
    }

    pub fn coxeter_type(&self) -> &CoxeterType {
        self.system().coxeter_type()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn full_mask(&self) -> u64 {
        self.system().full_mask()
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn mobius(&self) -> &[i64] {
        &self.mobius
    }

    pub fn orbits(&self) -> &OrbitData {
        &self.orbits
    }

    pub fn os_matrix(&self) -> &OSMatrix {
        &self.u
    }

    pub fn core_support(&self, f: FlatId) -> CoreSupport {
        self.cores[f]
    }

    pub fn cross_checked(&self) -> usize {
        self.cores.iter().filter(|c| c.cross_checked).count()
    }

    pub fn is_full_support(&self, f: FlatId) -> bool {
        self.cores[f].support == self.full_mask()
    }

    /// Orbit id of the standard flat `V^I`.
    pub fn type_of_mask(&self, mask: u64) -> Option<usize> {
        self.lattice
            .find(&self.system().standard_parabolic(mask))
            .map(|f| self.orbits.of_flat[f])
    }

    /// Orbit id by label.
    pub fn type_id(&self, label: &str) -> Result<usize> {
        self.orbits.by_label(label).map(|t| t.id).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "no parabolic type labelled {label} in {}",
                self.coxeter_type()
            ))
        })
    }

    /// `[N(X) : W_X] = |W| / (|orbit| |W_X|)`.
    pub fn normalizer_index(&self, type_id: usize) -> Result<u128> {
        let t = &self.orbits.types[type_id];
        let order = self.coxeter_type().order();
        let denom = t.size as u128 * t.subgroup_order;
        if !order.is_multiple_of(denom) {
            return Err(Error::InvariantViolation(format!(
                "orbit-stabilizer fails for {}: |W| = {order}, |orbit| |W_X| = {denom}",
                t.label
            )));
        }
        Ok(order / denom)
    }

    /// `|A^X|` for the representative of a type.
    pub fn restriction_size(&self, type_id: usize) -> Result<u64> {
        let rep = self.orbits.types[type_id].representative;
        Ok(self.lattice.restriction(rep, 1)?.hyperplanes().len() as u64)
    }

    pub fn u(&self, x: usize, y: usize) -> u64 {
        self.u.get(x, y)
    }

    pub fn group_order_exact(&self) -> Exact {
        Exact::from_integer(self.coxeter_type().order() as i128)
    }
}
