//! Arbitrary-precision evaluation on top of MPFR.
//!
//! Precision is always passed explicitly through a [`PrecisionContext`];
//! there is no ambient global precision.

pub mod context;
pub mod oracle;
pub mod quadrature;
pub mod result;
pub mod roots;
pub mod series_eval;

pub use context::{BigReal, PrecisionContext, DEFAULT_GUARD_DIGITS};
pub use oracle::{dottie_cosine_iteration, dottie_newton};
pub use result::{MethodRecord, MethodResult};
pub use series_eval::{
    convergence_report, eval_kaplan_partial, kaplan_term_ratios, with_stability_check,
    ConvergenceMethod, ConvergenceRecord, ConvergenceRow,
};
