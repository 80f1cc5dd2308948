//! Finite Coxeter groups: types, root systems and group elements.

pub mod group;
pub mod roots;
pub mod rootset;
pub mod types;

pub use group::{enumerate_group, reflection_subgroup, GroupElement, ReflectionSubgroup};
pub use roots::RootSystem;
pub use rootset::{RootSet, MAX_ROOTS};
pub use types::{field_label, parse_type, CoxeterMatrix, CoxeterType, DegreeTable, Irreducible};
