use serde::{Deserialize, Serialize};

use super::context::{BigReal, PrecisionContext};
use crate::error::{Error, Result};

/// Outcome of one computation route.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodResult {
    pub method: String,
    pub value: BigReal,
    pub terms: u64,
    /// `|value - oracle|`, filled once the oracle has been consulted.
    pub abs_error: Option<BigReal>,
}

/// JSON shape of a [`MethodResult`]. Reals are decimal strings of exactly
/// `precision` significant digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodRecord {
    pub method: String,
    pub value: String,
    pub terms: u64,
    pub abs_error: Option<String>,
    pub precision: u32,
    pub guard_digits: u32,
}

impl MethodResult {
    pub fn new(method: impl Into<String>, value: BigReal, terms: u64) -> Self {
        MethodResult {
            method: method.into(),
            value,
            terms,
            abs_error: None,
        }
    }

    pub fn with_error_against(mut self, oracle: &BigReal) -> Self {
        self.abs_error = Some(self.value.abs_diff(oracle));
        self
    }

    pub fn record(&self) -> MethodRecord {
        let ctx = self.value.ctx();
        MethodRecord {
            method: self.method.clone(),
            value: self.value.to_decimal_string(),
            terms: self.terms,
            abs_error: self.abs_error.as_ref().map(BigReal::to_decimal_string),
            precision: ctx.decimal_digits(),
            guard_digits: ctx.guard_digits(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.record()).expect("record always serializes")
    }

    pub fn from_record(record: &MethodRecord) -> Result<Self> {
        let ctx = PrecisionContext::with_guard(record.precision, record.guard_digits)?;
        let value = BigReal::parse(&record.value, ctx)?;
        let abs_error = record
            .abs_error
            .as_deref()
            .map(|s| BigReal::parse(s, ctx))
            .transpose()?;
        if let Some(e) = &abs_error {
            if e.value().is_sign_negative() && !e.value().is_zero() {
                return Err(Error::Malformed("negative abs_error".into()));
            }
        }
        Ok(MethodResult {
            method: record.method.clone(),
            value,
            terms: record.terms,
            abs_error,
        })
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let record: MethodRecord =
            serde_json::from_str(json).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_record(&record)
    }
}
