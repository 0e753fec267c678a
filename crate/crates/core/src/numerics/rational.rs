use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::Integer;
use serde::{Serialize, Serializer};

use super::NumericsError;

/// Canonical rational number: positive denominator, reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, NumericsError> {
        let d = denom.into();
        if d.is_zero() {
            return Err(NumericsError::ZeroDenominator);
        }
        Ok(ExactRational(BigRational::new(numer.into(), d)))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactRational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        ExactRational(BigRational::from_integer(n))
    }

    pub fn from_big(value: BigRational) -> Self {
        ExactRational(value)
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, NumericsError> {
        if self.is_zero() {
            return Err(NumericsError::ZeroDenominator);
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, NumericsError> {
        if rhs.is_zero() {
            return Err(NumericsError::ZeroDenominator);
        }
        Ok(ExactRational(&self.0 / &rhs.0))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i32) -> Result<Self, NumericsError> {
        if e < 0 && self.is_zero() {
            return Err(NumericsError::ZeroDenominator);
        }
        Ok(ExactRational(num::traits::Pow::pow(&self.0, e)))
    }

    /// Integer value when the rational is integral and fits in i64.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.numer();
        let d = self.denom();
        let (nb, db) = (n.bits() as i64, d.bits() as i64);
        // keep both operands inside f64 range before dividing
        let shift_n = (nb - 60).max(0);
        let shift_d = (db - 60).max(0);
        let nf = (n >> shift_n as usize).to_f64().unwrap_or(0.0);
        let df = (d >> shift_d as usize).to_f64().unwrap_or(1.0);
        nf / df * 2f64.powi((shift_n - shift_d) as i32)
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Floor of log2 |r| for nonzero r (approximate to within one).
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.numer().bits() as i64 - self.denom().bits() as i64)
    }

    /// Decimal literal parser: `-3`, `22/7`, `0.125`, `-1.5e-3`.
    pub fn parse_literal(s: &str) -> Result<Self, NumericsError> {
        let t = s.trim();
        let bad = || NumericsError::Parse(format!("invalid rational literal `{s}`"));
        if t.is_empty() {
            return Err(bad());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            return ExactRational::new(n, d);
        }
        let (mantissa, exp10) = match t.find(['e', 'E']) {
            Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let (neg, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let all = format!("{int_part}{frac_part}");
        let mut n = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
        if neg {
            n = -n;
        }
        let scale = exp10 - frac_part.len() as i32;
        let ten = BigInt::from(10);
        let value = if scale >= 0 {
            BigRational::from_integer(n * num::pow(ten, scale as usize))
        } else {
            BigRational::new(n, num::pow(ten, (-scale) as usize))
        };
        Ok(ExactRational(value))
    }

    /// Exact floor division helper used by decimal rendering.
    pub(crate) fn floor_big(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Result<ExactRational, NumericsError> {
    ExactRational::new(n, d)
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        ExactRational::from_bigint(n)
    }
}

impl FromStr for ExactRational {
    type Err = NumericsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExactRational::parse_literal(s)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((self.0).$method(&rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'b ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(rat(6, 4).unwrap().to_string(), "3/2");
        let z = rat(0, 5).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (BigInt::from(0), BigInt::from(1)));
        assert_eq!(rat(-3, -6).unwrap().to_string(), "1/2");
        assert_eq!(rat(3, -6).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        let err = rat(1, 0).unwrap_err();
        assert_eq!(err.to_string(), "zero denominator");
    }

    #[test]
    fn literals() {
        assert_eq!(ExactRational::parse_literal("0.3").unwrap(), rat(3, 10).unwrap());
        assert_eq!(ExactRational::parse_literal("-0.4").unwrap(), rat(-2, 5).unwrap());
        assert_eq!(ExactRational::parse_literal("22/7").unwrap(), rat(22, 7).unwrap());
        assert_eq!(ExactRational::parse_literal("15e-1").unwrap(), rat(3, 2).unwrap());
        assert_eq!(ExactRational::parse_literal(".5").unwrap(), rat(1, 2).unwrap());
        assert!(ExactRational::parse_literal("1/0").is_err());
        assert!(ExactRational::parse_literal("abc").is_err());
        assert!(ExactRational::parse_literal("").is_err());
    }

    #[test]
    fn powers_and_floats() {
        let h = rat(1, 2).unwrap();
        assert_eq!(h.pow(-3).unwrap(), ExactRational::from(8));
        assert!(ExactRational::zero().pow(-1).is_err());
        assert!((rat(1, 3).unwrap().to_f64() - 1.0 / 3.0).abs() < 1e-15);
    }
}
