//! Commutative Groebner bases over the rationals and the ideal theory built
//! on them: Hilbert data, associated varieties, slice restriction and
//! symbols of two-sided ideals of `U(g)`.

mod groebner;
mod hilbert;
mod ideal;
mod ops;
mod order;

pub use groebner::{buchberger, leading_monomial, reduce_modulo};
pub use hilbert::{dimension_and_degree, hilbert_function, hilbert_numerator, independent_set_dimension};
pub use ideal::{GradedIdeal, IdealSummary, MultiplicityKind, ReportStatus, VarietyReport};
pub use ops::{
    gr_of_nc_ideal, intersection, is_homogeneous, nilpotent_cone_generators, slice_names, slice_restrict,
    GrResult, SymbolRow,
};
pub use order::MonomialOrder;
