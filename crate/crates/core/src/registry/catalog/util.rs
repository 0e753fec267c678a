use crate::error::{MathError, MathResult};
use crate::numerics::Scalar;
use crate::pochhammer::{binomial_rat, factorial_rat};

pub(crate) type Pairs<S> = MathResult<Vec<(S, S)>>;

pub(crate) fn dv<S: Scalar>(num: S, den: &S) -> MathResult<S> {
    num.try_div(den).ok_or(MathError::SingularSample)
}


pub(crate) fn binom<S: Scalar>(like: &S, n: usize, k: usize) -> S {
    like.lift(&binomial_rat(n, k as i64))
}

pub(crate) fn fact<S: Scalar>(like: &S, n: usize) -> S {
    like.lift(&factorial_rat(n))
}

pub(crate) fn signed<S: Scalar>(v: S, odd: bool) -> S {
    if odd {
        -v
    } else {
        v
    }
}

/// `C(k, 2)`.
pub(crate) fn c2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

pub(crate) fn sum<S: Scalar>(like: &S, terms: impl IntoIterator<Item = S>) -> S {
    terms.into_iter().fold(like.zero_like(), |acc, t| acc + t)
}

pub(crate) fn try_sum<S: Scalar>(like: &S, terms: impl IntoIterator<Item = MathResult<S>>) -> MathResult<S> {
    terms.into_iter().try_fold(like.zero_like(), |acc, t| Ok(acc + t?))
}

pub(crate) fn zero_sum<S: Scalar>(like: &S, total: S) -> Pairs<S> {
    Ok(vec![(total, like.zero_like())])
}

pub(crate) fn delta<S: Scalar>(like: &S, a: usize, b: usize) -> S {
    if a == b {
        like.one_like()
    } else {
        like.zero_like()
    }
}
