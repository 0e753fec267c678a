//! q-numbers, q-binomials, finite and infinite q-Pochhammer symbols, the
//! shift laws and the real kernels v, l, w.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{MathError, MathResult};
use crate::numerics::{BigReal, ExactRational, PrecisionContext, Scalar};

/// `1 + q + ... + q^{n-1}`.
pub fn q_number<S: Scalar>(n: usize, q: &S) -> S {
    let mut out = q.zero_like();
    let mut power = q.one_like();
    for _ in 0..n {
        out = out + power.clone();
        power = power * q.clone();
    }
    out
}

pub fn q_factorial<S: Scalar>(n: usize, q: &S) -> S {
    (1..=n).fold(q.one_like(), |acc, k| acc * q_number(k, q))
}

/// Row `n` of q-binomials, built by the Pascal rule so no division occurs.
pub fn q_binomial_row<S: Scalar>(n: usize, q: &S) -> Vec<S> {
    let mut row = vec![q.one_like()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        next.push(q.one_like());
        let mut qk = q.clone();
        for k in 1..m {
            next.push(row[k - 1].clone() + qk.clone() * row[k].clone());
            qk = qk * q.clone();
        }
        next.push(q.one_like());
        row = next;
    }
    row
}

/// `[n k]_q`, zero outside `0 <= k <= n`.
pub fn q_binomial<S: Scalar>(n: usize, k: i64, q: &S) -> S {
    if k < 0 || k as usize > n {
        return q.zero_like();
    }
    // Pascal's rule restricted to the first min(k, n-k) columns.
    let k = (k as usize).min(n - k as usize);
    let mut powers = vec![q.one_like()];
    for j in 1..=k {
        powers.push(powers[j - 1].clone() * q.clone());
    }
    let mut col = vec![q.one_like(); k + 1];
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            col[j] = if j < m { col[j - 1].clone() + powers[j].clone() * col[j].clone() } else { q.one_like() };
        }
    }
    col.swap_remove(k)
}

/// `(a|q)_n = prod_{j<n} (1 - a q^j)`.
pub fn q_poch<S: Scalar>(a: &S, q: &S, n: usize) -> S {
    let mut out = a.one_like();
    let mut aq = a.clone();
    for _ in 0..n {
        out = out * (a.one_like() - aq.clone());
        aq = aq * q.clone();
    }
    out
}

pub fn q_poch_multi<S: Scalar>(list: &[S], q: &S, n: usize) -> S {
    list.iter().fold(q.one_like(), |acc, a| acc * q_poch(a, q, n))
}

/// Nome together with the numeric context for infinite objects.
#[derive(Debug, Clone)]
pub struct QPochConfig {
    q: BigReal,
    ctx: PrecisionContext,
}

impl QPochConfig {
    pub fn new(q: BigReal, ctx: PrecisionContext) -> MathResult<Self> {
        if q.abs() >= ctx.one() {
            return Err(MathError::DivergentDomain);
        }
        Ok(QPochConfig { q, ctx })
    }

    pub fn q(&self) -> &BigReal {
        &self.q
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }
}

/// Number of factors `K` of `prod_j (1 - u_j)` with `|u_j| <= lead * ratio^j`
/// after which the remaining product is within `tolerance / 10` of one in
/// relative terms.
pub fn product_cutoff(lead: f64, ratio: f64, ctx: &PrecisionContext) -> MathResult<usize> {
    if !(0.0..1.0).contains(&ratio) {
        return Err(MathError::DivergentDomain);
    }
    if lead == 0.0 {
        return Ok(0);
    }
    if ratio == 0.0 {
        return Ok(1);
    }
    let lead = lead * 1.01;
    let ratio = (ratio * (1.0 + 1e-12)).min(1.0 - 1e-15);
    // tail sum T = lead r^K / (1 - r) bounds log|prod|; T/(1-T) <= tol/10 once T <= tol/20
    let target = ctx.tolerance_exp() as f64 - 20f64.log2();
    let need = (target + (1.0 - ratio).log2() - lead.log2()) / ratio.log2();
    let k = need.ceil().max(0.0) as usize;
    if k > ctx.max_product_factors() {
        return Err(MathError::BudgetExceeded);
    }
    Ok(k)
}

/// Truncated `prod_{j>=0} factor(j)` under [`product_cutoff`].
pub fn infinite_product(
    lead: f64,
    ratio: f64,
    ctx: &PrecisionContext,
    mut factor: impl FnMut(usize) -> BigReal,
) -> MathResult<BigReal> {
    let k = product_cutoff(lead, ratio, ctx)?;
    Ok((0..k).fold(ctx.one(), |acc, j| acc * factor(j)))
}

/// `(a|q)_inf`.
pub fn q_poch_inf(a: &BigReal, cfg: &QPochConfig) -> MathResult<BigReal> {
    let ctx = &cfg.ctx;
    let one = ctx.one();
    let mut aq = a.clone();
    infinite_product(a.abs().to_f64(), cfg.q.abs().to_f64(), ctx, |_| {
        let f = one.clone() - aq.clone();
        aq = aq.clone() * cfg.q.clone();
        f
    })
}

/// `(a|q)_inf` directly from values; rejects `|q| >= 1`.
pub fn q_poch_inf_at(a: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    q_poch_inf(a, &QPochConfig::new(q.clone(), ctx.clone())?)
}

/// `v(x|a) = 1 - 2ax + a^2`.
pub fn kernel_v<S: Scalar>(x: &S, a: &S) -> S {
    x.one_like() - x.lift_int(2) * a.clone() * x.clone() + a.clone() * a.clone()
}

/// `l(x|a) = (1+a)^2 - 4x^2 a`.
pub fn kernel_l<S: Scalar>(x: &S, a: &S) -> S {
    let s = x.one_like() + a.clone();
    s.clone() * s - x.lift_int(4) * x.clone() * x.clone() * a.clone()
}

/// `w(x,y|a) = (1-a^2)^2 - 4xya(1+a^2) + 4a^2(x^2+y^2)`.
pub fn kernel_w<S: Scalar>(x: &S, y: &S, a: &S) -> S {
    let one = x.one_like();
    let four = x.lift_int(4);
    let a2 = a.clone() * a.clone();
    let d = one.clone() - a2.clone();
    d.clone() * d - four.clone() * x.clone() * y.clone() * a.clone() * (one + a2.clone())
        + four * a2 * (x.clone() * x.clone() + y.clone() * y.clone())
}

fn check_unit_interval(values: &[&BigReal], ctx: &PrecisionContext) -> MathResult<()> {
    if values.iter().any(|v| v.abs() > ctx.one()) {
        return Err(MathError::OutsideSupport);
    }
    Ok(())
}

/// `prod_{j>=0} l(x|a q^j)` for `|x| <= 1`.
pub fn prod_l_inf(x: &BigReal, a: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    check_unit_interval(&[x], ctx)?;
    let mut aq = a.clone();
    infinite_product(3.0 * a.abs().to_f64(), q.abs().to_f64(), ctx, |_| {
        let f = kernel_l(x, &aq);
        aq = aq.clone() * q.clone();
        f
    })
}

/// `prod_{j>=0} v(x|a q^j)` for `|x| <= 1`.
pub fn prod_v_inf(x: &BigReal, a: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    check_unit_interval(&[x], ctx)?;
    let mut aq = a.clone();
    infinite_product(3.0 * a.abs().to_f64(), q.abs().to_f64(), ctx, |_| {
        let f = kernel_v(x, &aq);
        aq = aq.clone() * q.clone();
        f
    })
}

/// `prod_{j>=0} w(x,y|a q^j)` for `|x|,|y| <= 1`.
pub fn prod_w_inf(
    x: &BigReal,
    y: &BigReal,
    a: &BigReal,
    q: &BigReal,
    ctx: &PrecisionContext,
) -> MathResult<BigReal> {
    check_unit_interval(&[x, y], ctx)?;
    let mut aq = a.clone();
    infinite_product(19.0 * a.abs().to_f64(), q.abs().to_f64(), ctx, |_| {
        let f = kernel_w(x, y, &aq);
        aq = aq.clone() * q.clone();
        f
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftId {
    S1,
    S2,
    S3,
    S4,
    Knk1,
    Knk2,
}

#[derive(Debug, Clone)]
pub struct ShiftParams<S> {
    pub a: S,
    pub q: S,
    pub n: usize,
    pub k: usize,
}

fn div<S: Scalar>(num: S, den: &S) -> MathResult<S> {
    num.try_div(den).ok_or(MathError::SingularSample)
}

/// Both sides of a shift law.
pub fn shift_sides<S: Scalar>(id: ShiftId, p: &ShiftParams<S>) -> MathResult<(S, S)> {
    let (a, q, n, k) = (&p.a, &p.q, p.n, p.k);
    let one = a.one_like();
    let aq = |e: usize| a.clone() * q.pow_u(e);
    Ok(match id {
        ShiftId::S1 => (q_poch(a, q, n + k), q_poch(a, q, n) * q_poch(&aq(n), q, k)),
        ShiftId::S2 => (
            div(q_poch(&aq(n), q, k), &q_poch(&aq(k), q, n))?,
            div(q_poch(a, q, k), &q_poch(a, q, n))?,
        ),
        ShiftId::S3 => {
            let a2 = a.clone() * a.clone();
            let q2 = q.clone() * q.clone();
            (q_poch(&a2, &q2, n), q_poch(a, q, n) * q_poch(&(-a.clone()), q, n))
        }
        ShiftId::S4 => {
            let q2 = q.clone() * q.clone();
            (q_poch(a, q, 2 * n), q_poch(a, &q2, n) * q_poch(&aq(1), &q2, n))
        }
        ShiftId::Knk1 => {
            if k > n {
                return Err(MathError::Singular);
            }
            // a q^{k-1} with k = 0 carries q^{-1}
            let shifted = div(a.clone() * q.pow_u(k), q)?;
            let lhs = q_poch(&shifted, q, k) * q_poch(&aq(2 * k), q, n - k);
            let num = q_poch(&shifted, q, n) * (one.clone() - div(aq(n + k), q)?);
            let den = one - div(aq(2 * k), q)?;
            (lhs, div(num, &den)?)
        }
        ShiftId::Knk2 => {
            if k > n || n == 0 {
                return Err(MathError::Singular);
            }
            let lhs = q_poch(a, q, k) * q_poch(&div(aq(n + k), q)?, q, n - k);
            (lhs, div(q_poch(a, q, 2 * n - 1), &q_poch(&aq(k), q, n - 1))?)
        }
    })
}

/// True iff the shift law holds exactly at the given rational point.
pub fn q_shift_check(id: ShiftId, p: &ShiftParams<ExactRational>) -> MathResult<bool> {
    let (l, r) = shift_sides(id, p)?;
    Ok(l == r)
}

/// Element `c0 + c1 s + c2 r + c3 s r` of the extension with `s^2 = ss` and
/// `r^2 = rr`. Stands in for `e^{i theta} = x + s` when `ss = x^2 - 1`.
#[derive(Debug, Clone)]
pub struct BiQuad<S> {
    pub parts: [S; 4],
    ss: S,
    rr: S,
}

impl<S: Scalar> BiQuad<S> {
    pub fn new(parts: [S; 4], ss: S, rr: S) -> Self {
        BiQuad { parts, ss, rr }
    }

    pub fn scalar(c: S, ss: &S, rr: &S) -> Self {
        let z = c.zero_like();
        BiQuad { parts: [c, z.clone(), z.clone(), z], ss: ss.clone(), rr: rr.clone() }
    }

    /// `x + sign * s` with the root of `x^2 - 1`.
    pub fn unit_s(x: &S, sign: i64, ss: &S, rr: &S) -> Self {
        let z = x.zero_like();
        BiQuad { parts: [x.clone(), x.lift_int(sign), z.clone(), z], ss: ss.clone(), rr: rr.clone() }
    }

    /// `y + sign * r` with the root of `y^2 - 1`.
    pub fn unit_r(y: &S, sign: i64, ss: &S, rr: &S) -> Self {
        let z = y.zero_like();
        BiQuad { parts: [y.clone(), z.clone(), y.lift_int(sign), z], ss: ss.clone(), rr: rr.clone() }
    }

    pub fn scale(&self, c: &S) -> Self {
        BiQuad { parts: self.parts.clone().map(|p| p * c.clone()), ss: self.ss.clone(), rr: self.rr.clone() }
    }
}

impl<S: Scalar> Add for BiQuad<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.parts;
        let [b0, b1, b2, b3] = rhs.parts;
        BiQuad { parts: [a0 + b0, a1 + b1, a2 + b2, a3 + b3], ss: self.ss, rr: self.rr }
    }
}

impl<S: Scalar> Neg for BiQuad<S> {
    type Output = Self;
    fn neg(self) -> Self {
        BiQuad { parts: self.parts.map(|p| -p), ss: self.ss, rr: self.rr }
    }
}

impl<S: Scalar> Sub for BiQuad<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Mul for BiQuad<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let [a0, a1, a2, a3] = self.parts;
        let [b0, b1, b2, b3] = rhs.parts;
        let (ss, rr) = (self.ss.clone(), self.rr.clone());
        let srr = ss.clone() * rr.clone();
        let c0 = a0.clone() * b0.clone()
            + ss.clone() * a1.clone() * b1.clone()
            + rr.clone() * a2.clone() * b2.clone()
            + srr * a3.clone() * b3.clone();
        let c1 = a0.clone() * b1.clone() + a1.clone() * b0.clone() + rr.clone() * (a2.clone() * b3.clone() + a3.clone() * b2.clone());
        let c2 = a0.clone() * b2.clone() + a2.clone() * b0.clone() + ss.clone() * (a1.clone() * b3.clone() + a3.clone() * b1.clone());
        let c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
        BiQuad { parts: [c0, c1, c2, c3], ss: self.ss, rr: self.rr }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelProduct {
    V,
    W,
    L,
}

/// Component-wise sides of `prod_{k<n}` of the exponential-argument factors
/// against the product of real kernels at `a q^k`.
pub fn kernel_factorization<S: Scalar>(which: KernelProduct, n: usize, x: &S, y: &S, a: &S, q: &S) -> Vec<(S, S)> {
    let one = x.one_like();
    let ss = x.clone() * x.clone() - one.clone();
    let rr = y.clone() * y.clone() - one.clone();
    let unit = BiQuad::scalar(one.clone(), &ss, &rr);
    let mut lhs = unit.clone();
    let mut rhs = one.clone();
    let mut ak = a.clone();
    for _ in 0..n {
        match which {
            KernelProduct::V => {
                for sign in [1, -1] {
                    lhs = lhs * (unit.clone() - BiQuad::unit_s(x, sign, &ss, &rr).scale(&ak));
                }
                rhs = rhs * kernel_v(x, &ak);
            }
            KernelProduct::L => {
                for sign in [1, -1] {
                    let e = BiQuad::unit_s(x, sign, &ss, &rr);
                    lhs = lhs * (unit.clone() - (e.clone() * e).scale(&ak));
                }
                rhs = rhs * kernel_l(x, &ak);
            }
            KernelProduct::W => {
                for sx in [1, -1] {
                    for sy in [1, -1] {
                        let e = BiQuad::unit_s(x, sx, &ss, &rr) * BiQuad::unit_r(y, sy, &ss, &rr);
                        lhs = lhs * (unit.clone() - e.scale(&ak));
                    }
                }
                rhs = rhs * kernel_w(x, y, &ak);
            }
        }
        ak = ak * q.clone();
    }
    let z = x.zero_like();
    let [c0, c1, c2, c3] = lhs.parts;
    vec![(c0, rhs), (c1, z.clone()), (c2, z.clone()), (c3, z)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use crate::pochhammer::binomial_rat;

    fn r(n: i64, d: i64) -> ExactRational {
        rat(n, d).unwrap()
    }

    #[test]
    fn q_numbers_and_binomials() {
        let two = ExactRational::from(2);
        assert_eq!(q_number(0, &two), ExactRational::zero());
        assert_eq!(q_number(3, &two), ExactRational::from(7));
        assert_eq!(q_number(5, &ExactRational::one()), ExactRational::from(5));
        assert_eq!(q_binomial(4, 2, &two), ExactRational::from(35));
        assert_eq!(q_binomial(3, 5, &two), ExactRational::zero());
        for n in 0..=12 {
            for k in 0..=n as i64 {
                assert_eq!(q_binomial(n, k, &ExactRational::one()), binomial_rat(n, k));
                assert_eq!(q_binomial(n, k, &ExactRational::zero()), ExactRational::one());
            }
        }
    }

    #[test]
    fn finite_pochhammer() {
        let a = r(2, 7);
        assert_eq!(q_poch(&a, &r(3, 5), 0), ExactRational::one());
        assert_eq!(q_poch(&a, &ExactRational::one(), 4), (ExactRational::one() - a.clone()).pow(4).unwrap());
        assert_eq!(q_poch(&r(1, 2), &r(1, 3), 2), r(5, 12));
        let q = r(-2, 3);
        let pm = q_poch_multi(&[a.clone(), -a.clone()], &q, 5);
        assert_eq!(pm, q_poch(&(a.clone() * a.clone()), &(q.clone() * q.clone()), 5));
        assert_eq!(q_poch_multi::<ExactRational>(&[], &q, 5), ExactRational::one());
        // (q)_n = (1-q)^n [n]_q!
        let lhs = q_poch(&q, &q, 6);
        let rhs = (ExactRational::one() - q.clone()).pow(6).unwrap() * q_factorial(6, &q);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn infinite_pochhammer() {
        let ctx = PrecisionContext::default();
        let p = ctx.precision_bits();
        let cfg = QPochConfig::new(BigReal::from_rational(&r(1, 2), p), ctx.clone()).unwrap();
        assert_eq!(q_poch_inf(&ctx.zero(), &cfg).unwrap(), ctx.one());
        let zero_q = QPochConfig::new(ctx.zero(), ctx.clone()).unwrap();
        let a = BigReal::from_rational(&r(1, 3), p);
        assert_eq!(q_poch_inf(&a, &zero_q).unwrap(), ctx.one() - a.clone());
        assert_eq!(
            QPochConfig::new(ctx.one(), ctx.clone()).unwrap_err().to_string(),
            "divergent parameter domain"
        );
        // Euler series for (t)_inf at t=1/3, q=1/2
        let prod = q_poch_inf(&a, &cfg).unwrap();
        let (t, q) = (r(1, 3), r(1, 2));
        let mut sum = ExactRational::zero();
        for k in 0..40usize {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let term = ExactRational::from(sign) * q.pow((k * k.saturating_sub(1) / 2) as i32).unwrap()
                * t.pow(k as i32).unwrap()
                * q_poch(&q, &q, k).recip().unwrap();
            sum = sum + term;
        }
        let diff = (prod - BigReal::from_rational(&sum, p)).abs();
        assert!(diff < ctx.tolerance());
    }

    #[test]
    fn budget_and_domain() {
        let ctx = PrecisionContext::new(128, -80, 200, 10).unwrap();
        assert_eq!(product_cutoff(0.5, 0.9, &ctx).unwrap_err(), MathError::BudgetExceeded);
        assert_eq!(product_cutoff(0.5, 1.0, &ctx).unwrap_err(), MathError::DivergentDomain);
    }

    #[test]
    fn kernels() {
        let x = r(2, 5);
        let a = r(-3, 7);
        let one = ExactRational::one();
        assert_eq!(kernel_l(&one, &a), (one.clone() - a.clone()).pow(2).unwrap());
        assert_eq!(kernel_w(&x, &x, &a), (one.clone() - a.clone()).pow(2).unwrap() * kernel_l(&x, &a));
        assert_eq!(kernel_v(&x, &ExactRational::zero()), one);
    }

    #[test]
    fn shift_examples() {
        let p = ShiftParams { a: r(1, 3), q: r(1, 2), n: 2, k: 3 };
        assert!(q_shift_check(ShiftId::S1, &p).unwrap());
        let p = ShiftParams { a: r(1, 3), q: r(1, 2), n: 4, k: 4 };
        assert!(q_shift_check(ShiftId::Knk2, &p).unwrap());
        let p = ShiftParams { a: ExactRational::zero(), q: r(2, 3), n: 3, k: 2 };
        assert!(q_shift_check(ShiftId::S2, &p).unwrap());
        for id in [ShiftId::S3, ShiftId::S4, ShiftId::Knk1] {
            let p = ShiftParams { a: r(5, 7), q: r(-1, 3), n: 5, k: 2 };
            assert!(q_shift_check(id, &p).unwrap(), "{id:?}");
        }
    }

    #[test]
    fn kernel_products_factorize() {
        let (x, y, a, q) = (r(1, 3), r(-2, 5), r(3, 4), r(1, 2));
        for which in [KernelProduct::V, KernelProduct::L, KernelProduct::W] {
            for (l, rhs) in kernel_factorization(which, 4, &x, &y, &a, &q) {
                assert_eq!(l, rhs, "{which:?}");
            }
        }
    }
}
