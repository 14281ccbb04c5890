//! Existential formulas over K: polynomial systems, the emitted anisotropy
//! sentences, their evaluation, and flattening to one equation.

mod emit;
mod flatten;
mod formula;
mod mpoly;
mod semantics;

pub use emit::{
    emit_anisotropy_formula, emit_dagger, emit_isotropy_system, emit_t_membership, DaggerSpec,
};
pub use flatten::flatten;
pub use formula::{eval_formula, Formula, Node, PredName, PredSemantics, Witness};
pub use mpoly::{MPoly, Monomial};
pub use semantics::{four_squares, Satisfaction, SemanticEvaluator};
