//! One-dimensional modules, finite-dimensional module checks, truncated
//! Skryabin modules and formal `sl2` characters.

mod characters;
mod isotypic;
mod module;
mod oscillator;
mod skryabin;

pub use characters::{
    abelianize, find_characters, find_characters_with, rational_roots, solve_system, Character, CharacterFamily,
    CharacterReport, Eliminant, Solutions,
};
pub use isotypic::{check_isotypic, group_algebra_character, slice_character, GradedCharacter};
pub use module::{verify_module, FinModule};
pub use oscillator::comoment_kernel;
pub use skryabin::{gk_check, skryabin_truncated, truncation_dims, GkReport, SkryabinReport, SkryabinRow};
