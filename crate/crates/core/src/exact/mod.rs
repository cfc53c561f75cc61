//! Exact rational machinery: partitions, truncated series, and the two
//! coefficient routes. Nothing in here touches floating point.

pub mod kaplan;
pub mod partitions;
pub mod series;

pub use kaplan::{
    derivative_table_f, derivative_table_g, kaplan_coefficient_lagrange,
    kaplan_coefficients_lagrange, kaplan_coefficients_reversion, CoefficientEntry,
    CoefficientRecord, CoefficientTable, DerivativeValue, Route,
};
pub use partitions::{enumerate_partitions, PartitionMultiIndex};
pub use series::{series_reciprocal_fdb, series_reversion, sine_series, PowerSeries};
