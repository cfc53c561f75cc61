//! Classical problems whose solution is the fixed point of the cosine.

pub mod bertrand;
pub mod bessel;
pub mod beta;
pub mod kepler;

pub use bertrand::{bertrand_angle, chord_area};
pub use bessel::{
    bessel_j, bessel_j_integral, dottie_bessel_partial, kapteyn_integral_partial,
    resolve_bessel_variant, BesselResolution, BesselSeriesVariant,
};
pub use beta::{
    beta_median_point, dottie_via_beta, inverse_reg_incomplete_beta, reg_incomplete_beta,
};
pub use kepler::{dottie_via_kepler, kepler_solve, KeplerState};
