use serde::Serialize;

use super::{BigReal, NumericsError};

/// Working precision and convergence budget for numeric paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrecisionContext {
    precision_bits: u32,
    tolerance_exp: i32,
    max_terms: usize,
    max_product_factors: usize,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { precision_bits: 256, tolerance_exp: -80, max_terms: 200, max_product_factors: 400 }
    }
}

impl PrecisionContext {
    /// Tolerance is `2^tolerance_exp`.
    pub fn new(
        precision_bits: u32,
        tolerance_exp: i32,
        max_terms: usize,
        max_product_factors: usize,
    ) -> Result<Self, NumericsError> {
        if precision_bits < 64 {
            return Err(NumericsError::InvalidContext("precision_bits must be at least 64".into()));
        }
        if tolerance_exp >= 0 {
            return Err(NumericsError::InvalidContext("tolerance must be below 1".into()));
        }
        if max_terms < 8 {
            return Err(NumericsError::InvalidContext("max_terms must be at least 8".into()));
        }
        if max_product_factors == 0 {
            return Err(NumericsError::InvalidContext("max_product_factors must be positive".into()));
        }
        Ok(PrecisionContext { precision_bits, tolerance_exp, max_terms, max_product_factors })
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn tolerance_exp(&self) -> i32 {
        self.tolerance_exp
    }

    pub fn tolerance(&self) -> BigReal {
        BigReal::pow2(self.tolerance_exp as i64, self.precision_bits)
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn max_product_factors(&self) -> usize {
        self.max_product_factors
    }

    pub fn with_max_terms(&self, max_terms: usize) -> Result<Self, NumericsError> {
        Self::new(self.precision_bits, self.tolerance_exp, max_terms, self.max_product_factors)
    }

    /// Same context with the tolerance tightened by `bits`, for quantities
    /// that get amplified before comparison. Never below the working precision.
    pub fn tightened(&self, bits: i32) -> Self {
        let floor = 8 - self.precision_bits as i32;
        PrecisionContext { tolerance_exp: (self.tolerance_exp - bits).max(floor), ..self.clone() }
    }

    pub fn zero(&self) -> BigReal {
        BigReal::zero(self.precision_bits)
    }

    pub fn one(&self) -> BigReal {
        BigReal::one(self.precision_bits)
    }

    /// Decimal or `p/q` literal at the working precision.
    pub fn real(&self, literal: &str) -> Result<BigReal, NumericsError> {
        let r = super::ExactRational::parse_literal(literal)?;
        Ok(BigReal::from_rational(&r, self.precision_bits))
    }
}
