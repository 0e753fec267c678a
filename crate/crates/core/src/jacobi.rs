//! Jacobi polynomials on [-1, 1], their expansion triangles and connection
//! coefficients, beta moments and the classical specializations.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{MathError, MathResult};
use crate::numerics::{rat, BigReal, ExactRational, PrecisionContext, Scalar};
use crate::pochhammer::{binomial_rat, factorial_rat, gamma_shift, rising};

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiParams<S> {
    pub a: S,
    pub b: S,
}

impl<S: Scalar> JacobiParams<S> {
    pub fn new(a: S, b: S) -> Self {
        JacobiParams { a, b }
    }

    pub fn swapped(&self) -> Self {
        JacobiParams { a: self.b.clone(), b: self.a.clone() }
    }

    fn sum(&self) -> S {
        self.a.clone() + self.b.clone()
    }
}

fn half<S: Scalar>(like: &S) -> ExactRational {
    let _ = like;
    rat(1, 2).expect("nonzero")
}

fn sign<S: Scalar>(like: &S, e: usize) -> S {
    like.lift_int(if e % 2 == 0 { 1 } else { -1 })
}

fn div<S: Scalar>(num: S, den: &S) -> MathResult<S> {
    num.try_div(den).ok_or(MathError::Singular)
}

fn jacobi_sum<S: Scalar>(n: usize, t: &S, p: &JacobiParams<S>) -> S {
    let s = p.sum() + t.lift_int(n as i64 - 1);
    let mut out = t.zero_like();
    let mut tm = t.one_like();
    for m in 0..=n {
        let term = t.lift(&binomial_rat(n, m as i64))
            * rising(&s, m)
            * rising(&(p.b.clone() + t.lift_int(m as i64)), n - m)
            * tm.clone();
        out = out + term;
        tm = tm * t.clone();
    }
    out.scale(&factorial_rat(n).recip().expect("nonzero factorial"))
}

/// `J_n(x|a,b)`, orthogonal against `(x+1)^{a-1}(1-x)^{b-1}` on [-1, 1].
pub fn jacobi_eval<S: Scalar>(n: usize, x: &S, p: &JacobiParams<S>) -> S {
    let t = (x.clone() - x.one_like()).scale(&half(x));
    jacobi_sum(n, &t, p)
}

/// `K_n(x|a,b) = J_n(2x-1|a,b)`, orthogonal on [0, 1].
pub fn jacobi_shifted_eval<S: Scalar>(n: usize, x: &S, p: &JacobiParams<S>) -> S {
    jacobi_sum(n, &(x.clone() - x.one_like()), p)
}

/// Power-basis coefficients of `J_n` (index = power of x).
pub fn jacobi_power_coefficients(n: usize, p: &JacobiParams<ExactRational>) -> Vec<ExactRational> {
    let mut coeffs = vec![ExactRational::zero(); n + 1];
    let h = rat(1, 2).expect("nonzero");
    for m in 0..=n {
        let e = e_coeff(n, m, p) * h.pow(m as i32).expect("nonzero");
        // ((x-1))^m = sum_i C(m,i) x^i (-1)^{m-i}
        for (i, slot) in coeffs.iter_mut().enumerate().take(m + 1) {
            let sgn = ExactRational::from(if (m - i) % 2 == 0 { 1 } else { -1 });
            *slot = slot.clone() + e.clone() * binomial_rat(m, i as i64) * sgn;
        }
    }
    coeffs
}

/// `e_{n,m}`: coefficient of `((x-1)/2)^m` in `J_n`.
pub fn e_coeff<S: Scalar>(n: usize, m: usize, p: &JacobiParams<S>) -> S {
    let like = &p.a;
    if m > n {
        return like.zero_like();
    }
    like.lift(&binomial_rat(n, m as i64))
        * rising(&(p.sum() + like.lift_int(n as i64 - 1)), m)
        * rising(&(p.b.clone() + like.lift_int(m as i64)), n - m)
        * like.lift(&factorial_rat(n).recip().expect("nonzero"))
}

/// Inverse triangle: coefficient of `J_m` in `((x-1)/2)^n`.
pub fn etilde_coeff<S: Scalar>(n: usize, m: usize, p: &JacobiParams<S>) -> MathResult<S> {
    let like = &p.a;
    if m > n {
        return Ok(like.zero_like());
    }
    let s = p.sum();
    let num = sign(like, n - m)
        * like.lift(&(factorial_rat(n) * factorial_rat(n - m).recip().expect("nonzero")))
        * rising(&(p.b.clone() + like.lift_int(m as i64)), n - m);
    let den = rising(&(s.clone() + like.lift_int(m as i64 - 1)), m)
        * rising(&(s + like.lift_int(2 * m as i64)), n - m);
    div(num, &den)
}

/// Second closed form of the inverse triangle; larger pole set.
pub fn etilde_coeff_alt<S: Scalar>(n: usize, m: usize, p: &JacobiParams<S>) -> MathResult<S> {
    let like = &p.a;
    if m > n {
        return Ok(like.zero_like());
    }
    let s = p.sum();
    let num = sign(like, n - m)
        * like.lift(&(factorial_rat(n) * factorial_rat(n - m).recip().expect("nonzero")))
        * rising(&(p.b.clone() + like.lift_int(m as i64)), n - m)
        * (s.clone() + like.lift_int(2 * m as i64 - 1));
    let den = rising(&(s + like.lift_int(m as i64 - 1)), n + 1);
    div(num, &den)
}

/// `c_{n,j}`: coefficient of `J_j(.|target)` in `J_n(.|source)`.
pub fn conn_coeff<S: Scalar>(
    n: usize,
    j: usize,
    source: &JacobiParams<S>,
    target: &JacobiParams<S>,
) -> MathResult<S> {
    let mut out = source.a.zero_like();
    for k in j..=n {
        out = out + e_coeff(n, k, source) * etilde_coeff(k, j, target)?;
    }
    Ok(out)
}

/// Lower-triangular table indexed `(n, j)` with `j <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionMatrix<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> ConnectionMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        ConnectionMatrix { rows }
    }

    pub fn identity(size: usize, like: &S) -> Self {
        let rows = (0..size)
            .map(|n| (0..=n).map(|j| like.lift_int(i64::from(n == j))).collect())
            .collect();
        ConnectionMatrix { rows }
    }

    /// Number of rows (`N + 1`).
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, n: usize, j: usize) -> Option<&S> {
        self.rows.get(n).and_then(|r| r.get(j))
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    /// Product over the common leading block.
    pub fn mul(&self, other: &Self) -> Self {
        let size = self.size().min(other.size());
        let rows = (0..size)
            .map(|n| {
                (0..=n)
                    .map(|j| {
                        (j..=n).fold(self.rows[n][0].zero_like(), |acc, k| {
                            acc + self.rows[n][k].clone() * other.rows[k][j].clone()
                        })
                    })
                    .collect()
            })
            .collect();
        ConnectionMatrix { rows }
    }
}

impl ConnectionMatrix<ExactRational> {
    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(n, row)| row.iter().enumerate().all(|(j, v)| *v == ExactRational::from(i64::from(n == j))))
    }
}

fn build_matrix<S: Scalar>(
    size: usize,
    entry: impl Fn(usize, usize) -> MathResult<S> + Sync,
) -> MathResult<ConnectionMatrix<S>> {
    let rows = (0..size)
        .into_par_iter()
        .map(|n| (0..=n).map(|j| entry(n, j)).collect::<MathResult<Vec<S>>>())
        .collect::<MathResult<Vec<_>>>()?;
    Ok(ConnectionMatrix { rows })
}

/// Rows `0..=big_n` of the connection coefficients from `source` to `target`.
pub fn conn_matrix<S: Scalar>(
    big_n: usize,
    source: &JacobiParams<S>,
    target: &JacobiParams<S>,
) -> MathResult<ConnectionMatrix<S>> {
    build_matrix(big_n + 1, |n, j| conn_coeff(n, j, source, target))
}

pub fn e_matrix<S: Scalar>(big_n: usize, p: &JacobiParams<S>) -> MathResult<ConnectionMatrix<S>> {
    build_matrix(big_n + 1, |n, j| Ok(e_coeff(n, j, p)))
}

pub fn etilde_matrix<S: Scalar>(big_n: usize, p: &JacobiParams<S>) -> MathResult<ConnectionMatrix<S>> {
    build_matrix(big_n + 1, |n, j| etilde_coeff(n, j, p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CconCase {
    Ebb,
    Oebb,
    Ea12,
    Oea12,
    Ea32,
    Oea32,
    A12,
    A32,
    Ab,
    Ba,
    Aabb,
}

impl CconCase {
    pub const ALL: [CconCase; 11] = [
        CconCase::Ebb,
        CconCase::Oebb,
        CconCase::Ea12,
        CconCase::Oea12,
        CconCase::Ea32,
        CconCase::Oea32,
        CconCase::A12,
        CconCase::A32,
        CconCase::Ab,
        CconCase::Ba,
        CconCase::Aabb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CconCase::Ebb => "ebb",
            CconCase::Oebb => "oebb",
            CconCase::Ea12 => "ea12",
            CconCase::Oea12 => "oea12",
            CconCase::Ea32 => "ea32",
            CconCase::Oea32 => "oea32",
            CconCase::A12 => "a12",
            CconCase::A32 => "a32",
            CconCase::Ab => "ab",
            CconCase::Ba => "ba",
            CconCase::Aabb => "aabb",
        }
    }

    /// Whether the closed form depends on `a` (all cases use `b` or `a`).
    pub fn uses_b(self) -> bool {
        !matches!(self, CconCase::Ea12 | CconCase::Oea12 | CconCase::Ea32 | CconCase::Oea32)
    }

    pub fn uses_a(self) -> bool {
        !matches!(self, CconCase::Ebb | CconCase::Oebb)
    }
}

/// Closed forms of the special expansion and connection coefficients.
pub fn ccon_closed<S: Scalar>(case: CconCase, n: usize, j: usize, a: &S, b: &S) -> MathResult<S> {
    if j > n {
        return Ok(a.zero_like());
    }
    let c = |v: i64| a.lift_int(v);
    let h = |num: i64| a.lift(&rat(num, 2).expect("nonzero"));
    let inv = |r: ExactRational| a.lift(&r.recip().expect("nonzero"));
    let d = n - j;
    let (ni, ji) = (n as i64, j as i64);
    let sg = sign(a, d);
    let fact = |k: usize| factorial_rat(k);
    match case {
        CconCase::Ebb => Ok(a.lift(&binomial_rat(n, ji))
            * rising(&(c(2) * b.clone() + c(ni - 1)), j)
            * rising(&(b.clone() + c(ji)), d)
            * inv(fact(n))),
        CconCase::Oebb => div(
            sg * a.lift(&fact(n)) * rising(&(b.clone() + c(ji)), d) * (c(2) * b.clone() + c(2 * ji - 1)),
            &(a.lift(&fact(d)) * rising(&(c(2) * b.clone() + c(ji - 1)), n + 1)),
        ),
        CconCase::Ea12 | CconCase::Ea32 => {
            let (shift, base) = if case == CconCase::Ea12 { (-1, 1) } else { (1, 3) };
            div(
                rising(&(a.clone() + h(shift) + c(ni)), j) * rising(&h(base), n),
                &(a.lift(&(fact(j) * fact(d))) * rising(&h(base), j)),
            )
        }
        CconCase::Oea12 | CconCase::Oea32 => {
            let (shift, base) = if case == CconCase::Oea12 { (-1, 1) } else { (1, 3) };
            div(
                sg * (a.clone() + h(shift) + c(2 * ji)) * rising(&(h(base) + c(ji)), d) * a.lift(&fact(n)),
                &(a.lift(&fact(d)) * rising(&(a.clone() + h(shift) + c(ji)), n + 1)),
            )
        }
        CconCase::A12 | CconCase::A32 => {
            let (base, lo) = if case == CconCase::A12 { (1, -1) } else { (3, 1) };
            let num = sg
                * rising(&h(base), n)
                * rising(&(a.clone() - b.clone()), d)
                * rising(&(a.clone() + h(lo) + c(ni)), j)
                * (b.clone() + h(lo) + c(2 * ji));
            let den = a.lift(&fact(d))
                * rising(&h(base), j)
                * rising(&(b.clone() + h(lo + 2) + c(2 * ji)), d)
                * rising(&(b.clone() + h(lo) + c(ji)), j + 1);
            div(num, &den)
        }
        CconCase::Ab => div(
            sg * rising(&(b.clone() + c(ji)), d)
                * rising(&(a.clone() - b.clone()), d)
                * rising(&(a.clone() + b.clone() + c(ni - 1)), j)
                * (c(2) * b.clone() + c(2 * ji - 1)),
            &(a.lift(&fact(d)) * rising(&(c(2) * b.clone() + c(ji - 1)), n + 1)),
        ),
        CconCase::Ba => div(
            sg * rising(&(b.clone() + c(ji)), d)
                * rising(&(c(2) * b.clone() + c(ni - 1)), j)
                * rising(&(b.clone() - a.clone()), d)
                * (a.clone() + b.clone() + c(2 * ji - 1)),
            &(a.lift(&fact(d)) * rising(&(a.clone() + b.clone() + c(ji - 1)), n + 1)),
        ),
        CconCase::Aabb => {
            if d % 2 == 1 {
                return Ok(a.zero_like());
            }
            let m = d / 2;
            let mid = ((n + j) / 2) as i64;
            div(
                (c(2) * b.clone() + c(2 * ji - 1))
                    * rising(&(c(2) * a.clone() + c(ni - 1)), j)
                    * rising(&(a.clone() - b.clone()), m)
                    * rising(&(b.clone() + c(ji)), m)
                    * rising(&(a.clone() + c(mid)), m),
                &(a.lift(&fact(m)) * rising(&(c(2) * b.clone() + c(ji - 1)), n + 1)),
            )
        }
    }
}

/// The generic connection-coefficient value each closed form specializes.
pub fn ccon_generic<S: Scalar>(case: CconCase, n: usize, j: usize, a: &S, b: &S) -> MathResult<S> {
    let h = |num: i64| a.lift(&rat(num, 2).expect("nonzero"));
    let jp = |x: &S, y: &S| JacobiParams::new(x.clone(), y.clone());
    match case {
        CconCase::Ebb => Ok(e_coeff(n, j, &jp(b, b))),
        CconCase::Oebb => etilde_coeff(n, j, &jp(b, b)),
        CconCase::Ea12 => Ok(e_coeff(n, j, &jp(a, &h(1)))),
        CconCase::Oea12 => etilde_coeff(n, j, &jp(a, &h(1))),
        CconCase::Ea32 => Ok(e_coeff(n, j, &jp(a, &h(3)))),
        CconCase::Oea32 => etilde_coeff(n, j, &jp(a, &h(3))),
        CconCase::A12 => conn_coeff(n, j, &jp(a, &h(1)), &jp(b, &h(1))),
        CconCase::A32 => conn_coeff(n, j, &jp(a, &h(3)), &jp(b, &h(3))),
        CconCase::Ab => conn_coeff(n, j, &jp(a, b), &jp(b, b)),
        CconCase::Ba => conn_coeff(n, j, &jp(b, b), &jp(a, b)),
        CconCase::Aabb => conn_coeff(n, j, &jp(a, a), &jp(b, b)),
    }
}

/// `int x^k h(x|a,b) dx` for positive shape parameters.
pub fn beta_moment(k: usize, p: &JacobiParams<ExactRational>) -> MathResult<ExactRational> {
    if !p.a.is_positive() || !p.b.is_positive() {
        return Err(MathError::InvalidShape);
    }
    let ab = p.a.clone() + p.b.clone();
    let mut out = ExactRational::zero();
    for j in 0..=k {
        let sgn = ExactRational::from(if (k - j) % 2 == 0 { 1 } else { -1 });
        let ratio = rising(&p.a, j).checked_div(&rising(&ab, j))?;
        out = out + binomial_rat(k, j as i64) * ExactRational::from(2).pow(j as i32)? * sgn * ratio;
    }
    Ok(out)
}

/// `int J_n^2 h(x|a,b) dx`.
pub fn jacobi_norm<S: Scalar>(n: usize, p: &JacobiParams<S>) -> MathResult<S> {
    let like = &p.a;
    if n == 0 {
        return Ok(like.one_like());
    }
    let s = p.sum();
    let num = rising(&p.a, n) * rising(&p.b, n);
    let den = like.lift(&factorial_rat(n)) * (s.clone() + like.lift_int(2 * n as i64 - 1)) * rising(&s, n - 1);
    div(num, &den)
}

/// Chebyshev polynomials of the first kind by recurrence.
pub fn chebyshev_t<S: Scalar>(n: usize, x: &S) -> S {
    let two = x.lift_int(2);
    let (mut prev, mut cur) = (x.one_like(), x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = two.clone() * x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomials of the second kind by recurrence.
pub fn chebyshev_u<S: Scalar>(n: usize, x: &S) -> S {
    let two = x.lift_int(2);
    let (mut prev, mut cur) = (x.one_like(), two.clone() * x.clone());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = two.clone() * x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn legendre<S: Scalar>(n: usize, x: &S) -> S {
    jacobi_eval(n, x, &JacobiParams::new(x.one_like(), x.one_like()))
}

/// Gegenbauer polynomials `C_n^lambda` by their recurrence.
pub fn gegenbauer<S: Scalar>(n: usize, x: &S, lambda: &S) -> S {
    let two = x.lift_int(2);
    let (mut prev, mut cur) = (x.one_like(), two.clone() * lambda.clone() * x.clone());
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let kk = x.lift_int(k as i64);
        let next = (two.clone() * x.clone() * (kk.clone() + lambda.clone()) * cur.clone()
            - (kk + two.clone() * lambda.clone() - x.one_like()) * prev)
            .scale(&rat(1, k as i64 + 1).expect("nonzero"));
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev T through the Jacobi family at `a = b = 1/2`.
pub fn chebyshev_t_via_jacobi<S: Scalar>(n: usize, x: &S) -> S {
    let h = x.lift(&rat(1, 2).expect("nonzero"));
    let c = ExactRational::from(2).pow(2 * n as i32).expect("nonzero") * factorial_rat(n) * factorial_rat(n)
        * factorial_rat(2 * n).recip().expect("nonzero");
    jacobi_eval(n, x, &JacobiParams::new(h.clone(), h)).scale(&c)
}

/// Chebyshev U through the Jacobi family at `a = b = 3/2`.
pub fn chebyshev_u_via_jacobi<S: Scalar>(n: usize, x: &S) -> S {
    let h = x.lift(&rat(3, 2).expect("nonzero"));
    let c = ExactRational::from(2).pow(2 * n as i32).expect("nonzero") * factorial_rat(n) * factorial_rat(n + 1)
        * factorial_rat(2 * n + 1).recip().expect("nonzero");
    jacobi_eval(n, x, &JacobiParams::new(h.clone(), h)).scale(&c)
}

/// Gegenbauer through the Jacobi family at `a = b = lambda + 1/2`.
pub fn gegenbauer_via_jacobi<S: Scalar>(n: usize, x: &S, lambda: &S) -> MathResult<S> {
    let shifted = lambda.clone() + x.lift(&rat(1, 2).expect("nonzero"));
    let ratio = div(rising(&(x.lift_int(2) * lambda.clone()), n), &rising(&shifted, n))?;
    Ok(ratio * jacobi_eval(n, x, &JacobiParams::new(shifted.clone(), shifted)))
}

/// Which argument order of the connection coefficients feeds the density
/// expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientOrder {
    /// `c_{n,0}(a,b;c,d)`: `J_n(.|a,b)` expanded in the target family.
    AbCd,
    /// `c_{n,0}(c,d;a,b)`.
    CdAb,
}

impl CoefficientOrder {
    pub fn label(self) -> &'static str {
        match self {
            CoefficientOrder::AbCd => "ab_cd",
            CoefficientOrder::CdAb => "cd_ab",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConventionOutcome {
    pub order: CoefficientOrder,
    pub residual: BigReal,
    pub terms_used: usize,
    pub converged: bool,
}

#[derive(Debug, Clone)]
pub struct DensityExpansionOutcome {
    pub ab_cd: ConventionOutcome,
    pub cd_ab: ConventionOutcome,
}

impl DensityExpansionOutcome {
    /// The single convergent convention, if exactly one converged.
    pub fn convergent(&self) -> Option<&ConventionOutcome> {
        match (self.ab_cd.converged, self.cd_ab.converged) {
            (true, false) => Some(&self.ab_cd),
            (false, true) => Some(&self.cd_ab),
            _ => None,
        }
    }

    pub fn get(&self, order: CoefficientOrder) -> &ConventionOutcome {
        match order {
            CoefficientOrder::AbCd => &self.ab_cd,
            CoefficientOrder::CdAb => &self.cd_ab,
        }
    }

    pub fn residual(&self) -> MathResult<BigReal> {
        self.convergent().map(|c| c.residual.clone()).ok_or(MathError::NotConverged)
    }
}

fn integer_offset(hi: &ExactRational, lo: &ExactRational) -> MathResult<i64> {
    (hi - lo).to_i64().ok_or(MathError::UnsupportedOffset)
}

/// `h(x|c,d) / h(x|a,b)` for integer offsets, exactly.
pub fn density_ratio(
    source: &JacobiParams<ExactRational>,
    target: &JacobiParams<ExactRational>,
    x: &ExactRational,
) -> MathResult<ExactRational> {
    let m = integer_offset(&target.a, &source.a)?;
    let k = integer_offset(&target.b, &source.b)?;
    let one = ExactRational::one();
    let beta = gamma_shift(&(source.a.clone() + source.b.clone()), m + k)
        .zip(gamma_shift(&source.a, m))
        .zip(gamma_shift(&source.b, k))
        .ok_or(MathError::Singular)?;
    let ((ab, ga), gb) = beta;
    let powers = (x + &one).pow(m as i32)? * (&one - x).pow(k as i32)? * ExactRational::from(2).pow(-(m + k) as i32)?;
    Ok(powers * ab.checked_div(&(ga * gb))?)
}

/// Partial sums of the expansion of `h(x|c,d)/h(x|a,b)` in `J_n(x|a,b)`
/// under both coefficient orders.
pub fn density_ratio_expansion_check(
    source: &JacobiParams<ExactRational>,
    target: &JacobiParams<ExactRational>,
    x: &BigReal,
    ctx: &PrecisionContext,
) -> MathResult<DensityExpansionOutcome> {
    for v in [&source.a, &source.b, &target.a, &target.b] {
        if !v.is_positive() {
            return Err(MathError::InvalidShape);
        }
    }
    integer_offset(&target.a, &source.a)?;
    integer_offset(&target.b, &source.b)?;
    let two = ExactRational::from(2);
    if &two * &target.a <= source.a || &two * &target.b <= source.b {
        return Err(MathError::DivergentDomain);
    }
    if x.abs() >= ctx.one() {
        return Err(MathError::OutsideSupport);
    }
    let prec = ctx.precision_bits();
    let real = |r: &ExactRational| BigReal::from_rational(r, prec);
    let lhs = real(&density_ratio(source, target, &x.to_exact())?);
    let terms = ctx.max_terms();
    let real_source = JacobiParams::new(real(&source.a), real(&source.b));
    let jn: Vec<BigReal> = (0..terms).into_par_iter().map(|n| jacobi_eval(n, x, &real_source)).collect();
    let norms = (0..terms).map(|n| jacobi_norm(n, source)).collect::<MathResult<Vec<_>>>()?;
    let run = |order: CoefficientOrder| -> MathResult<ConventionOutcome> {
        let (from, to) = match order {
            CoefficientOrder::AbCd => (source, target),
            CoefficientOrder::CdAb => (target, source),
        };
        let inv0 = (0..terms).map(|k| etilde_coeff(k, 0, to)).collect::<MathResult<Vec<_>>>()?;
        let weights = (0..terms)
            .into_par_iter()
            .map(|n| {
                let c = (0..=n).fold(ExactRational::zero(), |acc, k| acc + e_coeff(n, k, from) * inv0[k].clone());
                Ok(real(&c.checked_div(&norms[n])?))
            })
            .collect::<MathResult<Vec<BigReal>>>()?;
        let tol = ctx.tolerance();
        let mut partial = ctx.zero();
        let mut last_bad = 0usize;
        let mut residual = lhs.clone();
        for n in 0..terms {
            partial = partial + weights[n].clone() * jn[n].clone();
            residual = (lhs.clone() - partial.clone()).abs();
            if residual >= tol {
                last_bad = n + 1;
            }
        }
        let converged = last_bad < terms;
        Ok(ConventionOutcome {
            order,
            residual,
            terms_used: if converged { last_bad + 1 } else { terms },
            converged,
        })
    };
    Ok(DensityExpansionOutcome { ab_cd: run(CoefficientOrder::AbCd)?, cd_ab: run(CoefficientOrder::CdAb)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        rat(n, d).unwrap()
    }

    fn jp(a: ExactRational, b: ExactRational) -> JacobiParams<ExactRational> {
        JacobiParams::new(a, b)
    }

    #[test]
    fn low_degree_values() {
        let x = r(3, 7);
        let one = ExactRational::one();
        assert_eq!(jacobi_eval(0, &x, &jp(r(2, 3), r(5, 4))), one);
        assert_eq!(jacobi_eval(1, &x, &jp(one.clone(), one.clone())), x);
        assert_eq!(jacobi_shifted_eval(1, &x, &jp(one.clone(), one.clone())), r(2, 1) * x.clone() - one.clone());
        let p = jp(r(2, 3), r(-5, 4));
        for n in 0..=6 {
            assert_eq!(jacobi_shifted_eval(n, &x, &p), jacobi_eval(n, &(r(2, 1) * x.clone() - one.clone()), &p));
        }
    }

    #[test]
    fn leading_coefficients() {
        let p = jp(r(3, 2), r(2, 5));
        for n in 0..=8 {
            let lead = jacobi_power_coefficients(n, &p).pop().unwrap();
            let expect = rising(&(p.a.clone() + p.b.clone() + ExactRational::from(n as i64 - 1)), n)
                * factorial_rat(n).recip().unwrap()
                * ExactRational::from(2).pow(-(n as i32)).unwrap();
            assert_eq!(lead, expect);
        }
    }

    #[test]
    fn coefficient_examples() {
        let (a, b) = (r(2, 3), r(5, 7));
        let p = jp(a.clone(), b.clone());
        assert_eq!(e_coeff(1, 0, &p), b);
        assert_eq!(e_coeff(1, 1, &p), a.clone() + b.clone());
        assert_eq!(etilde_coeff(1, 0, &p).unwrap(), -b.clone() * (a.clone() + b.clone()).recip().unwrap());
        let (c, d) = (r(9, 4), r(1, 3));
        let q = jp(c.clone(), d.clone());
        let expect = b.clone() - d.clone() * (a.clone() + b.clone()) * (c + d).recip().unwrap();
        assert_eq!(conn_coeff(1, 0, &p, &q).unwrap(), expect);
        for n in 0..6 {
            for m in 0..=n {
                assert_eq!(etilde_coeff(n, m, &p).unwrap(), etilde_coeff_alt(n, m, &p).unwrap());
            }
        }
    }

    #[test]
    fn singular_inverse_triangle() {
        let p = jp(r(1, 2), r(-1, 2));
        assert_eq!(etilde_coeff(2, 1, &p).unwrap_err().to_string(), "singular parameters");
    }

    #[test]
    fn matrices_are_inverse() {
        let p = jp(r(2, 3), r(5, 7));
        let q = jp(r(-1, 3), r(3, 2));
        assert!(conn_matrix(6, &p, &p).unwrap().is_identity());
        let prod = conn_matrix(6, &p, &q).unwrap().mul(&conn_matrix(6, &q, &p).unwrap());
        assert!(prod.is_identity());
        assert!(e_matrix(6, &p).unwrap().mul(&etilde_matrix(6, &p).unwrap()).is_identity());
    }

    #[test]
    fn closed_forms_match_generic() {
        let (a, b) = (r(7, 3), r(2, 5));
        for case in CconCase::ALL {
            for n in 0..=6 {
                for j in 0..=n {
                    let closed = ccon_closed(case, n, j, &a, &b).unwrap();
                    let generic = ccon_generic(case, n, j, &a, &b).unwrap();
                    assert_eq!(closed, generic, "{} n={n} j={j}", case.name());
                }
            }
        }
    }

    #[test]
    fn moments_and_norms() {
        let one = ExactRational::one();
        assert_eq!(beta_moment(1, &jp(one.clone(), one.clone())).unwrap(), ExactRational::zero());
        assert_eq!(beta_moment(2, &jp(one.clone(), one.clone())).unwrap(), r(1, 3));
        let (a, b) = (r(3, 2), r(5, 4));
        let expect = (a.clone() - b.clone()) * (a.clone() + b.clone()).recip().unwrap();
        assert_eq!(beta_moment(1, &jp(a, b)).unwrap(), expect);
        assert_eq!(beta_moment(1, &jp(-one.clone(), one.clone())).unwrap_err(), MathError::InvalidShape);
        assert_eq!(jacobi_norm(1, &jp(one.clone(), one.clone())).unwrap(), r(1, 3));
        assert_eq!(jacobi_norm(0, &jp(r(2, 9), one)).unwrap(), ExactRational::one());
    }

    #[test]
    fn classical_specializations() {
        let x = r(-2, 7);
        assert_eq!(chebyshev_t(2, &x), r(2, 1) * x.clone() * x.clone() - ExactRational::one());
        assert_eq!(chebyshev_u(2, &ExactRational::zero()), ExactRational::from(-1));
        assert_eq!(chebyshev_u(2, &ExactRational::one()), ExactRational::from(3));
        for n in 0..=8 {
            assert_eq!(chebyshev_t_via_jacobi(n, &x), chebyshev_t(n, &x));
            assert_eq!(chebyshev_u_via_jacobi(n, &x), chebyshev_u(n, &x));
            let lambda = r(3, 4);
            assert_eq!(gegenbauer_via_jacobi(n, &x, &lambda).unwrap(), gegenbauer(n, &x, &lambda));
        }
    }

    #[test]
    fn density_expansion_examples() {
        let ctx = PrecisionContext::default().with_max_terms(80).unwrap();
        let p = ctx.precision_bits();
        let one = ExactRational::one();
        let x = BigReal::from_rational(&r(1, 5), p);
        let same = density_ratio_expansion_check(&jp(one.clone(), one.clone()), &jp(one.clone(), one.clone()), &x, &ctx)
            .unwrap();
        assert!(same.ab_cd.residual.is_zero());
        assert_eq!(same.ab_cd.terms_used, 1);
        let out = density_ratio_expansion_check(&jp(one.clone(), one.clone()), &jp(r(2, 1), r(3, 1)), &x, &ctx).unwrap();
        assert_eq!(out.convergent().unwrap().order, CoefficientOrder::AbCd);
        let xm = BigReal::from_rational(&r(-2, 5), p);
        let out = density_ratio_expansion_check(&jp(r(2, 1), r(2, 1)), &jp(r(3, 1), r(2, 1)), &xm, &ctx).unwrap();
        assert!(out.residual().unwrap() < BigReal::pow2(-60, p));
        let bad = density_ratio_expansion_check(&jp(one.clone(), one.clone()), &jp(r(3, 2), one.clone()), &x, &ctx);
        assert_eq!(bad.unwrap_err().to_string(), "unsupported parameter offset");
    }
}
