//! Flat star products: the Moyal product of a constant bivector, its
//! axioms as checks, and quantum comoment maps of linear symplectic
//! actions.

mod checks;
mod comoment;
mod context;

pub use checks::{
    apply_exponential, check_axioms, check_equivalence, check_homogeneity, random_polynomial, transported_product,
    weyl_identify, WeylCheck,
};
pub use comoment::QuantumComoment;
pub use context::{StarContext, StarTerm};
