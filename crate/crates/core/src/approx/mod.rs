//! Closed-form approximants, digit scoring and Engel expansions.

pub mod approximants;
pub mod digits;
pub mod engel;
pub mod gamma;

pub use approximants::{
    all_approximants, approximant, approximant_value, Approximant, ApproximantName,
    ApproximantRecord,
};
pub use digits::correct_decimal_digits;
pub use engel::{
    engel_expansion, engel_expansion_exact, engel_expansion_with_error, engel_of_dottie,
    EngelExpansion, EngelRecord,
};
pub use gamma::{
    digamma, gamma, gamma_minimum_point, inverse_gamma, inverse_gamma_on, ln_gamma, trigamma,
    GammaBranch,
};
