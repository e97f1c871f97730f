//! Exact rational arithmetic and sparse linear algebra over the rationals.

pub mod rat;
pub mod sparse;
pub mod vecops;

pub use rat::{rat, Rat};
pub use sparse::{kernel, solve, solve_many, EchelonSpace, Rref, SparseMat};
