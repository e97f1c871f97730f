//! The enveloping algebra in PBW normal form with its standard and Kazhdan
//! filtrations, and Rees-algebra checks.

pub mod env;
pub mod ncpoly;
pub mod rees;

pub use env::{distinct_permutations, UEnv};
pub use ncpoly::{format_word, is_normal, word_degree, Degree, NCPoly, Word};
pub use rees::{
    ad_closure, rees_roundtrip, rees_specializations, window_words, ReesDegreeRow, ReesElement,
    ReesRoundtrip, ReesWindow, SpecializationRow,
};
