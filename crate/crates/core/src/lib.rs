//! Exact computations on reflection arrangements of finite Coxeter groups,
//! centred on flats that meet the fundamental chamber only at the origin.

pub mod arith;
pub mod arrangement;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod faraway;
pub mod invariants;

pub use error::{Error, Result};
