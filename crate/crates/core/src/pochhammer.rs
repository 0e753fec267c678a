//! Rising and falling factorials, binomials and Stirling numbers.

use num::bigint::{BigInt, BigUint};
use num::traits::{One, Zero};

use crate::numerics::{ExactRational, Scalar};

/// `x (x+1) ... (x+n-1)`.
pub fn rising<S: Scalar>(x: &S, n: usize) -> S {
    let mut out = x.one_like();
    for i in 0..n {
        out = out * (x.clone() + x.lift_int(i as i64));
    }
    out
}

/// `x (x-1) ... (x-n+1)`.
pub fn falling<S: Scalar>(x: &S, n: usize) -> S {
    let mut out = x.one_like();
    for i in 0..n {
        out = out * (x.clone() - x.lift_int(i as i64));
    }
    out
}

/// `Gamma(x+m)/Gamma(x)` for any integer shift, as a rising factorial or
/// its reciprocal. `None` at a pole.
pub fn gamma_shift<S: Scalar>(x: &S, m: i64) -> Option<S> {
    if m >= 0 {
        Some(rising(x, m as usize))
    } else {
        let base = x.clone() + x.lift_int(m);
        x.one_like().try_div(&rising(&base, (-m) as usize))
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut out = BigUint::one();
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

pub fn factorial_rat(n: usize) -> ExactRational {
    ExactRational::from_bigint(BigInt::from(factorial(n as u64)))
}

pub fn binomial_rat(n: usize, k: i64) -> ExactRational {
    ExactRational::from_bigint(BigInt::from(binomial(n as u64, k)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StirlingKind {
    FirstUnsigned,
    Second,
}

/// Triangle of Stirling numbers through row `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn max_row(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    pub fn get(&self, n: usize, j: usize) -> BigUint {
        self.rows.get(n).and_then(|r| r.get(j)).cloned().unwrap_or_default()
    }
}

pub fn stirling_table(kind: StirlingKind, n: usize) -> StirlingTable {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let at = |j: usize| prev.get(j).cloned().unwrap_or_default();
        let row = (0..=m)
            .map(|j| {
                let carry = if j == 0 { BigUint::zero() } else { at(j - 1) };
                let weight = match kind {
                    StirlingKind::FirstUnsigned => m - 1,
                    StirlingKind::Second => j,
                };
                carry + at(j) * weight
            })
            .collect();
        rows.push(row);
    }
    StirlingTable { kind, rows }
}
