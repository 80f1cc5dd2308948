//! Möbius function, characteristic polynomials, beta invariants, orbits of
//! flats and Orlik-Solomon data.

pub mod mobius;
pub mod orbits;
pub mod os;
pub mod poly;

use rayon::prelude::*;

use crate::arrangement::{restricted_chambers, ConeTester, IntersectionLattice};
use crate::coxeter::{GroupElement, RootSet, RootSystem};
use crate::error::{Error, Result};

pub use mobius::{mobius, mobius_below};
pub use orbits::{orbits, subsystem_simple_roots, subsystem_type, OrbitData, ParabolicType};
pub use os::{
    bundled_hyperplane_exponents, nu, os_exponents, os_matrix, restriction_polynomial,
    standard_members, OSData, OSMatrix, Provenance,
};
pub use poly::{beta_from_polynomial, region_count, IntPolynomial};

/// `chi(A, t) = sum mu(V, X) t^dim X`; needs the complete lattice.
pub fn characteristic_polynomial(
    lattice: &IntersectionLattice,
    mobius: &[i64],
) -> Result<IntPolynomial> {
    if !lattice.is_complete() {
        return Err(Error::InsufficientDepth {
            needed: lattice.rank(),
            available: lattice.max_codim(),
        });
    }
    let mut coeffs = vec![0i128; lattice.rank() + 1];
    for (f, &mu) in lattice.flats().iter().zip(mobius) {
        coeffs[f.dim()] += i128::from(mu);
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Beta invariant of `A^X` (`X = V` for the empty root set) as half the
/// number of chambers of `A^X` meeting the hyperplane `K` of `A^X` only at
/// the origin.
pub fn beta_via_chambers(
    tester: &ConeTester<'_>,
    elements: &[GroupElement],
    x: &RootSet,
    k: &RootSet,
) -> Result<u128> {
    let system: &RootSystem = tester.system();
    if !x.is_subset(k) || system.rank_of(k) != system.rank_of(x) + 1 {
        return Err(Error::InvalidArgument(format!(
            "{k:?} is not a hyperplane of the restriction to {x:?}"
        )));
    }
    let chambers = restricted_chambers(system, x, elements);
    let count = chambers
        .par_iter()
        .filter(|f| tester.trivial(k, &f.chamber))
        .count();
    if count % 2 == 1 {
        return Err(Error::InvariantViolation(format!(
            "odd number {count} of chambers avoid the hyperplane {k:?}"
        )));
    }
    Ok(count as u128 / 2)
}
