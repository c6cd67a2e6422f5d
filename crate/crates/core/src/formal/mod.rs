//! Formal distributions: the delta function on a truncated window, and
//! fields on a truncated graded space with their n-th products.

mod field;
mod graded;
mod window;

pub use field::{
    coefficient_prefix, locality_order, normal_ordered, nth_product, ope_coeffs, FieldComparison,
    LocalityReport, ModeField,
};
pub use graded::GradedOperator;
pub use window::{
    delta_derivative, delta_derivative_by_differentiation, delta_identity_suite, delta_window,
    BiLaurentWindow, DeltaReport, IdentityCheck, Laurent, LaurentWindow, MAX_DELTA_ORDER,
};
