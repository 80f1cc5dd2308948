//! Exact arithmetic over `Q` and the real fields `Q(2cos(pi/m))`.

pub mod field;
pub mod fm;
pub mod matrix;

pub use field::{minimal_polynomial_2cos, AlgebraicNumber, NumberField, Rational};
pub use fm::{is_feasible, Constraint};
pub use matrix::{FieldMatrix, FieldVector};
