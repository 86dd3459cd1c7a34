//! Semantic ground truth: per-model property checks, bounded searches and
//! explicit counter-model constructions.

mod builders;
mod enumerate;
mod search;

pub use builders::{
    build_conj_chain_countermodel, build_figure3_model, build_glued_countermodel, build_klsimple_countermodel,
    conj_chain_formula, BuildError,
};
pub use enumerate::{bell, enumerate_models, restricted_growth_strings, rgs_blocks};
pub use search::{
    check_supermodel_preservation, find_selfref_counterexample, find_success_counterexample, is_self_refuting_on,
    is_successful_on, is_super_successful_on, selfref_failures, success_failures, Outcome, Property, SearchBounds,
    SearchError, SearchReport, Strategy, TooLarge, MAX_SUPER_SUCCESS_WORLDS,
};
