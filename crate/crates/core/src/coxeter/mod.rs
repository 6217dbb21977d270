//! Coxeter systems, their Tits representation, and the [`CoxeterGroup`]
//! abstraction shared by every group realization in the crate.

mod catalog;
mod finite;
mod group;
mod system;
mod tits;

pub use catalog::finite_matrix;
pub use finite::{ElemId, FiniteGroup, DEFAULT_TABLE_CAP};
pub use group::{
    bruhat_direction, conjugate_to_simple, conjugation_closure, elements_up_to_length, enumerate,
    inversion_set, inversion_set_of_word, product, reflection_length_search, BruhatDirection,
    ConjClassKey, CoxeterGroup, ParabolicClosure,
};
pub use system::{CoxeterMatrix, CoxeterSystem, Label};
pub use tits::{Root, TitsElement, TitsGroup};
