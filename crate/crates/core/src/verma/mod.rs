//! Verma modules over the Virasoro algebra with polynomial coefficients in
//! `Q[c, h]`, their Shapovalov form and everything derived from Gram ranks.

mod cocycle;
mod discrete;
mod kac;
mod module;
mod partition;
mod unitarity;

use std::sync::OnceLock;

pub use cocycle::{cocycle_check, first_failure, propagate, recurrence_residual};
pub use discrete::{
    discrete_central_charge, discrete_series, discrete_series_extended, discrete_weight,
    DiscretePoint, DiscreteSeries,
};
pub use kac::{
    kac_det_direct, kac_det_formula, phi_exponents, phi_pq, phi_product, KacFactorization,
    PhiExponent,
};
pub use module::{GramMatrix, VacuumKind, VermaModule, VermaVector};
pub use partition::{partition_count, partitions_of, partitions_with_min_part, Partition};
pub use unitarity::{quotient_graded_dims, singular_vectors, unitarity_classify, LevelVerdict};

use crate::exact::ScalarPoly;

/// Process-wide `M(c, h)` with symbolic `c` and `h`.
pub fn shared_symbolic() -> &'static VermaModule {
    static MODULE: OnceLock<VermaModule> = OnceLock::new();
    MODULE.get_or_init(VermaModule::symbolic)
}

/// `<v_lambda, v_mu>` on the symbolic module.
pub fn shapovalov(lambda: &Partition, mu: &Partition) -> ScalarPoly {
    shared_symbolic().shapovalov(lambda, mu)
}

/// `A^N` on the symbolic module.
pub fn gram(level: u32) -> GramMatrix {
    shared_symbolic().gram(level)
}
