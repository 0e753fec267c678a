use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use super::{BigReal, ExactRational};

/// Field-like scalar shared by exact, numeric and degree-tracking paths.
///
/// Generic code over this trait must not branch on values: the degree
/// tracker relies on every instantiation following the same operation
/// sequence.
pub trait Scalar:
    Clone + Debug + Send + Sync + 'static + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// Constant in the same family as `self` (same precision, same arity).
    fn lift(&self, value: &ExactRational) -> Self;

    /// Quotient, `None` when the divisor is an exact zero.
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    fn lift_int(&self, n: i64) -> Self {
        self.lift(&ExactRational::from(n))
    }

    fn zero_like(&self) -> Self {
        self.lift_int(0)
    }

    fn one_like(&self) -> Self {
        self.lift_int(1)
    }

    fn pow_u(&self, e: usize) -> Self {
        let mut out = self.one_like();
        for _ in 0..e {
            out = out * self.clone();
        }
        out
    }

    fn pow_i(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow_u(e as usize))
        } else {
            self.one_like().try_div(&self.pow_u((-e) as usize))
        }
    }

    fn scale(&self, r: &ExactRational) -> Self {
        self.clone() * self.lift(r)
    }
}

impl Scalar for ExactRational {
    fn lift(&self, value: &ExactRational) -> Self {
        value.clone()
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }

    fn pow_u(&self, e: usize) -> Self {
        self.pow(e as i32).expect("nonnegative exponent")
    }
}

impl Scalar for BigReal {
    fn lift(&self, value: &ExactRational) -> Self {
        BigReal::from_rational(value, self.precision())
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs)
    }

    fn pow_u(&self, e: usize) -> Self {
        self.powi(e as u32)
    }
}
