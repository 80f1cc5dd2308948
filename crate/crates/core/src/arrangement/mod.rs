//! Flats, intersection lattices, chambers and faces of reflection
//! arrangements.

pub mod chamber;
pub mod flat;
pub mod lattice;

pub use chamber::{
    cone_trivial, cone_trivial_fundamental, fundamental_cone_point, restricted_chambers, Chamber,
    ConeTester, Face,
};
pub use flat::{flat_from_roots, Flat};
pub use lattice::{FlatId, IntersectionLattice, Restriction};
