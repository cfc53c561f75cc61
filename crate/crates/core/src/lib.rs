//! Routes to the Dottie number, the real fixed point of `cos`.

pub mod approx;
pub mod cli;
pub mod connections;
pub mod error;
pub mod exact;
pub mod mp;
pub mod pi_power;

pub use error::{Error, Result};
