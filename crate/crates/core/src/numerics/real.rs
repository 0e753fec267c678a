use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::{BigInt, Sign};
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{ExactRational, NumericsError};

/// Binary floating point value `mantissa * 2^exponent` with at most
/// `precision` significant bits in the mantissa.
#[derive(Clone, PartialEq, Eq)]
pub struct BigReal {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

fn bits(m: &BigInt) -> u64 {
    m.bits()
}

/// Round `m` right by `shift` bits, half to even; `sticky` marks discarded
/// nonzero bits below `m`.
fn shift_round(m: &BigInt, shift: u64, sticky: bool) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let neg = m.sign() == Sign::Minus;
    let mag = m.abs();
    let kept = &mag >> shift as usize;
    let rem = &mag - (&kept << shift as usize);
    let half = BigInt::one() << (shift as usize - 1);
    let round_up = match rem.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => sticky || kept.bit(0),
    };
    let mut out = if round_up { kept + 1u8 } else { kept };
    if neg {
        out = -out;
    }
    out
}

impl BigReal {
    fn normalized(mantissa: BigInt, exponent: i64, precision: u32, sticky: bool) -> Self {
        if mantissa.is_zero() {
            return BigReal { mantissa, exponent: 0, precision };
        }
        let b = bits(&mantissa);
        let (mut m, mut e) = if b > precision as u64 {
            let shift = b - precision as u64;
            (shift_round(&mantissa, shift, sticky), exponent + shift as i64)
        } else {
            (mantissa, exponent)
        };
        if bits(&m) > precision as u64 {
            m >>= 1usize;
            e += 1;
        }
        // strip trailing zeros so equal values compare equal
        let tz = m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            m >>= tz as usize;
            e += tz as i64;
        }
        BigReal { mantissa: m, exponent: e, precision }
    }

    pub fn zero(precision: u32) -> Self {
        BigReal { mantissa: BigInt::zero(), exponent: 0, precision }
    }

    pub fn one(precision: u32) -> Self {
        BigReal { mantissa: BigInt::one(), exponent: 0, precision }
    }

    pub fn from_i64(n: i64, precision: u32) -> Self {
        Self::normalized(BigInt::from(n), 0, precision, false)
    }

    /// Power of two `2^e`.
    pub fn pow2(e: i64, precision: u32) -> Self {
        BigReal { mantissa: BigInt::one(), exponent: e, precision }
    }

    pub fn from_rational(r: &ExactRational, precision: u32) -> Self {
        if r.is_zero() {
            return Self::zero(precision);
        }
        let n = r.numer();
        let d = r.denom();
        // enough quotient bits for one correctly rounded result
        let shift = precision as i64 + 2 - (bits(n) as i64 - bits(d) as i64);
        let (num, den) = if shift >= 0 {
            (n << shift as usize, d.clone())
        } else {
            (n.clone(), d << (-shift) as usize)
        };
        let q = &num / &den;
        let sticky = !(&num - &q * &den).is_zero();
        Self::normalized(q, -shift, precision, sticky)
    }

    pub fn from_f64(x: f64, precision: u32) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero(precision);
        }
        let (m, e) = frexp_parts(x);
        Self::normalized(BigInt::from(m), e, precision, false)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self::normalized(self.mantissa.clone(), self.exponent, precision, false)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigReal { mantissa: self.mantissa.abs(), ..self.clone() }
    }

    /// Position of the highest set bit plus one (value magnitude ~ 2^top).
    fn top(&self) -> i64 {
        bits(&self.mantissa) as i64 + self.exponent
    }

    /// Approximate log2 |x|; `None` at zero.
    pub fn log2_abs(&self) -> Option<f64> {
        if self.is_zero() {
            return None;
        }
        let b = bits(&self.mantissa) as i64;
        let keep = b.min(60);
        let lead = (self.mantissa.abs() >> (b - keep) as usize).to_f64().unwrap_or(1.0);
        Some(lead.log2() + (self.exponent + b - keep) as f64)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = bits(&self.mantissa) as i64;
        let keep = b.min(60);
        let lead = (&self.mantissa >> (b - keep) as usize).to_f64().unwrap_or(0.0);
        let e = self.exponent + b - keep;
        if e > 2000 {
            return lead.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        lead * 2f64.powi(e as i32)
    }

    /// Exact dyadic rational value.
    pub fn to_exact(&self) -> ExactRational {
        if self.exponent >= 0 {
            ExactRational::from_bigint(&self.mantissa << self.exponent as usize)
        } else {
            ExactRational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as usize)
                .expect("power of two denominator")
        }
    }

    pub fn checked_div(&self, rhs: &BigReal) -> Option<BigReal> {
        if rhs.is_zero() {
            return None;
        }
        let precision = self.precision.max(rhs.precision);
        if self.is_zero() {
            return Some(Self::zero(precision));
        }
        let shift = precision as i64 + 2 + bits(&rhs.mantissa) as i64 - bits(&self.mantissa) as i64;
        let shift = shift.max(0);
        let num = &self.mantissa << shift as usize;
        let q = &num / &rhs.mantissa;
        let sticky = !(&num - &q * &rhs.mantissa).is_zero();
        Some(Self::normalized(q, self.exponent - rhs.exponent - shift, precision, sticky))
    }

    pub fn sqrt(&self) -> Result<BigReal, NumericsError> {
        if self.is_negative() {
            return Err(NumericsError::NegativeSqrt);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let target = 2 * self.precision as i64 + 4;
        let mut shift = (target - bits(&self.mantissa) as i64).max(0);
        if (self.exponent - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mantissa << shift as usize;
        let r = m.sqrt();
        let sticky = &r * &r != m;
        Ok(Self::normalized(r, (self.exponent - shift) / 2, self.precision, sticky))
    }

    /// pi by Machin's formula in fixed point with guard bits.
    pub fn pi(precision: u32) -> BigReal {
        let work = precision as usize + 32;
        let one = BigInt::one() << work;
        let atan_inv = |k: u32| -> BigInt {
            let k2 = BigInt::from(k * k);
            let mut power = &one / BigInt::from(k);
            let mut sum = power.clone();
            let mut n = 1u64;
            loop {
                power = &power / &k2;
                if power.is_zero() {
                    break;
                }
                let term = &power / BigInt::from(2 * n + 1);
                if n % 2 == 1 {
                    sum -= term;
                } else {
                    sum += term;
                }
                n += 1;
            }
            sum
        };
        let pi_fixed = atan_inv(5) * 16 - atan_inv(239) * 4;
        Self::normalized(pi_fixed, -(work as i64), precision, true)
    }

    pub fn powi(&self, e: u32) -> BigReal {
        let mut result = Self::one(self.precision);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                result = result * base.clone();
            }
            base = base.clone() * base;
            k >>= 1;
        }
        result
    }

    pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a BigReal>, precision: u32) -> BigReal {
        values
            .into_iter()
            .map(|v| v.abs())
            .fold(Self::zero(precision), |acc, v| if v > acc { v } else { acc })
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let exact = self.to_exact();
        let neg = exact.is_negative();
        let mag = exact.abs();
        let est = self.log2_abs().unwrap_or(0.0) * std::f64::consts::LOG10_2;
        let mut e10 = est.floor() as i64;
        let digits = digits.max(1);
        let ten = ExactRational::from(10);
        for _ in 0..3 {
            let scaled = &mag * &ten.pow((digits as i64 - 1 - e10) as i32).expect("nonzero base");
            let lead = scaled.floor_big();
            let lead_bits = lead.to_string().len();
            if lead_bits > digits {
                e10 += 1;
                continue;
            }
            if lead_bits < digits {
                e10 -= 1;
                continue;
            }
            // round half up on the next digit
            let frac = &scaled - &ExactRational::from_bigint(lead.clone());
            let mut lead = lead;
            if frac >= ExactRational::new(1, 2).expect("nonzero") {
                lead += 1u8;
            }
            let mut s = lead.to_string();
            if s.len() > digits {
                s.pop();
                e10 += 1;
            }
            let mantissa = if digits > 1 { format!("{}.{}", &s[..1], &s[1..]) } else { s.clone() };
            return format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, e10);
        }
        format!("{:e}", self.to_f64())
    }
}

fn frexp_parts(x: f64) -> (i64, i64) {
    let b = x.to_bits();
    let sign = if b >> 63 == 1 { -1 } else { 1 };
    let exp_bits = ((b >> 52) & 0x7ff) as i64;
    let frac = (b & ((1u64 << 52) - 1)) as i64;
    if exp_bits == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac | (1i64 << 52)), exp_bits - 1075)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.clone() - other.clone();
        match d.mantissa.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl Add for BigReal {
    type Output = BigReal;
    fn add(self, rhs: BigReal) -> BigReal {
        let precision = self.precision.max(rhs.precision);
        if self.is_zero() {
            return rhs.with_precision(precision);
        }
        if rhs.is_zero() {
            return self.with_precision(precision);
        }
        let gap = precision as i64 + 4;
        if self.top() > rhs.top() + gap {
            // pad to full width so the addend only acts as a sticky bit
            let pad = (precision as i64 + 2 - bits(&self.mantissa) as i64).max(2);
            let m = &self.mantissa << pad as usize;
            return BigReal::normalized(m + rhs.mantissa.signum(), self.exponent - pad, precision, true);
        }
        if rhs.top() > self.top() + gap {
            return rhs + self;
        }
        let e = self.exponent.min(rhs.exponent);
        let a = &self.mantissa << (self.exponent - e) as usize;
        let b = &rhs.mantissa << (rhs.exponent - e) as usize;
        BigReal::normalized(a + b, e, precision, false)
    }
}

impl Sub for BigReal {
    type Output = BigReal;
    fn sub(self, rhs: BigReal) -> BigReal {
        self + (-rhs)
    }
}

impl Mul for BigReal {
    type Output = BigReal;
    fn mul(self, rhs: BigReal) -> BigReal {
        let precision = self.precision.max(rhs.precision);
        BigReal::normalized(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent, precision, false)
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { mantissa: -self.mantissa, ..self }
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(f.precision().unwrap_or(30)))
    }
}

impl Serialize for BigReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_sci(20))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn dyadic_is_exact() {
        let half = BigReal::from_rational(&rat(1, 2).unwrap(), 256);
        assert_eq!(half.to_exact(), rat(1, 2).unwrap());
        assert!(BigReal::from_rational(&ExactRational::zero(), 64).is_zero());
    }

    #[test]
    fn third_within_ulp() {
        let third = rat(1, 3).unwrap();
        let r = BigReal::from_rational(&third, 64);
        let err = (r.to_exact() - third.clone()).abs();
        let bound = third * ExactRational::from(2).pow(1 - 64).unwrap();
        assert!(err <= bound);
    }

    #[test]
    fn arithmetic_and_pi() {
        let p = 128;
        let a = BigReal::from_i64(3, p);
        let b = BigReal::from_i64(7, p);
        let q = a.checked_div(&b).unwrap();
        assert!(((q * b) - a).abs().log2_abs().map_or(true, |l| l < -120.0));
        let pi = BigReal::pi(p);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let two = BigReal::from_i64(2, p);
        let s = two.sqrt().unwrap();
        assert!(((s.clone() * s) - BigReal::from_i64(2, p)).abs().log2_abs().map_or(true, |l| l < -125.0));
        assert!(BigReal::from_i64(-1, p).sqrt().is_err());
    }

    #[test]
    fn absorbing_small_addend() {
        let big = BigReal::from_i64(1, 64);
        let tiny = BigReal::pow2(-400, 64);
        assert_eq!(big.clone() + tiny.clone(), big);
        assert_eq!(big.clone() - tiny, big);
    }

    #[test]
    fn scientific_rendering() {
        let x = BigReal::from_rational(&rat(1, 8).unwrap(), 64);
        assert_eq!(x.to_sci(3), "1.25e-1");
        let y = BigReal::from_i64(-12345, 64);
        assert_eq!(y.to_sci(2), "-1.2e4");
    }
}
