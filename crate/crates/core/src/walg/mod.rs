//! The finite W-algebra `U(g,e)` as the Whittaker vectors of
//! `Q = U(g)/U(g)m'`, computed degree by degree.

mod presentation;
mod quotient;
mod whittaker;

pub use presentation::{trace_casimir, CenterImage, GeneratorInfo, WAlgebra, WPresentation};
pub use quotient::{Quotient, QuotientElem};
pub use whittaker::{c_words, whittaker_basis, WhittakerSpace, WordIndex};
