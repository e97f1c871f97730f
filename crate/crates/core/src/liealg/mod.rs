//! Classical Lie algebras, sl2-triples and the grading data of a nilpotent.

pub mod algebra;
pub mod setup;
pub mod triple;

pub use algebra::{build_classical, LieAlgebraData, Matrix, TypeTag};
pub use setup::{build_setup, triple_centralizer, Frame, NilpotentSetup, SetupOptions, SliceVector};
pub use triple::{jacobson_morozov, matrix_coords, partition_triple, SL2Triple};
