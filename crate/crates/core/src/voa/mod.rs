//! The Virasoro vertex operator algebra on the vacuum module, truncated at a
//! finite level, with its state-field map and axiom checks.

mod axioms;
mod module;

pub use axioms::{
    borcherds_check, borcherds_suite, invariant_form_check, locality_axiom_check, sl2_check,
    translation_axiom_check, vacuum_axiom_check, verify_all, AxiomReport,
};
pub use module::{build_voa, name_state, quotient_voa_dims, StateClass, VoaModule, VoaState};
