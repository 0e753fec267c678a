//! q-Hermite, the auxiliary b family, Rogers, Al-Salam-Chihara and
//! Askey-Wilson polynomials, their norms and densities.

use crate::error::{MathError, MathResult};
use crate::numerics::{BigReal, PrecisionContext, Scalar};
use crate::qkernel::{kernel_w, prod_l_inf, prod_w_inf, q_binomial_row, q_poch, q_poch_inf_at};

fn div<S: Scalar>(num: S, den: &S) -> MathResult<S> {
    num.try_div(den).ok_or(MathError::Singular)
}

fn sign<S: Scalar>(v: S, odd: bool) -> S {
    if odd {
        -v
    } else {
        v
    }
}

/// `h_0, ..., h_n` at `x`.
pub fn qhermite_sequence<S: Scalar>(n: usize, x: &S, q: &S) -> Vec<S> {
    let two_x = x.lift_int(2) * x.clone();
    let mut out = vec![x.one_like()];
    let mut prev = x.zero_like();
    let mut qk = x.one_like();
    for k in 0..n {
        let cur = out[k].clone();
        let next = two_x.clone() * cur.clone() + (qk.clone() - x.one_like()) * prev;
        prev = cur;
        out.push(next);
        qk = qk * q.clone();
    }
    out
}

/// `h_n(x|q)`: `h_{k+1} = 2x h_k + (q^k - 1) h_{k-1}`.
pub fn qhermite_eval<S: Scalar>(n: usize, x: &S, q: &S) -> S {
    qhermite_sequence(n, x, q).swap_remove(n)
}

/// `b_0, ..., b_n` at `x`, division free so `q = 0` is allowed.
pub fn bpoly_sequence<S: Scalar>(n: usize, x: &S, q: &S) -> Vec<S> {
    let minus_two_x = -(x.lift_int(2) * x.clone());
    let mut out = vec![x.one_like()];
    let mut prev = x.zero_like();
    let mut qk = x.one_like();
    let mut qkm1 = x.one_like();
    for k in 0..n {
        let cur = out[k].clone();
        let mut next = minus_two_x.clone() * qk.clone() * cur.clone();
        if k > 0 {
            next = next + qkm1.clone() * (x.one_like() - qk.clone()) * prev;
            qkm1 = qkm1 * q.clone();
        }
        prev = cur;
        out.push(next);
        qk = qk * q.clone();
    }
    out
}

/// `b_n(x|q) = (-1)^n q^{C(n,2)} h_n(x|1/q)`, evaluated by its recurrence.
pub fn bpoly_eval<S: Scalar>(n: usize, x: &S, q: &S) -> S {
    bpoly_sequence(n, x, q).swap_remove(n)
}

/// The closed form through `h_n(x|1/q)`; needs `q != 0`.
pub fn bpoly_closed<S: Scalar>(n: usize, x: &S, q: &S) -> MathResult<S> {
    let inv = div(q.one_like(), q)?;
    let c2 = n * n.saturating_sub(1) / 2;
    Ok(sign(q.pow_u(c2) * qhermite_eval(n, x, &inv), n % 2 == 1))
}

/// `(-1)^n q^{C(n,2)} h_n(x|q)`, the form that fails the zero-sum identity.
pub fn bpoly_literal<S: Scalar>(n: usize, x: &S, q: &S) -> S {
    let c2 = n * n.saturating_sub(1) / 2;
    sign(q.pow_u(c2) * qhermite_eval(n, x, q), n % 2 == 1)
}

/// `C_0, ..., C_n` for the Rogers family.
pub fn rogers_sequence<S: Scalar>(n: usize, x: &S, beta: &S, q: &S) -> MathResult<Vec<S>> {
    let one = x.one_like();
    let two_x = x.lift_int(2) * x.clone();
    let mut out = vec![one.clone()];
    if n == 0 {
        return Ok(out);
    }
    let first = (two_x.clone() * (one.clone() - beta.clone()))
        .try_div(&(one.clone() - q.clone()))
        .ok_or(MathError::SingularQ)?;
    out.push(first);
    let beta2 = beta.clone() * beta.clone();
    let mut qk = q.clone();
    let mut qkm1 = one.clone();
    for k in 1..n {
        let lhs = two_x.clone() * (one.clone() - beta.clone() * qk.clone()) * out[k].clone()
            - (one.clone() - beta2.clone() * qkm1.clone()) * out[k - 1].clone();
        qkm1 = qk.clone();
        qk = qk * q.clone();
        let next = lhs.try_div(&(one.clone() - qk.clone())).ok_or(MathError::SingularQ)?;
        out.push(next);
    }
    Ok(out)
}

/// `C_n(x|beta,q)`.
pub fn rogers_eval<S: Scalar>(n: usize, x: &S, beta: &S, q: &S) -> MathResult<S> {
    Ok(rogers_sequence(n, x, beta, q)?.swap_remove(n))
}

/// Al-Salam-Chihara parameters in the real `(y, rho)` form.
#[derive(Debug, Clone, PartialEq)]
pub struct AscParams<S> {
    pub y: S,
    pub rho: S,
    pub q: S,
}

impl<S: Scalar> AscParams<S> {
    pub fn new(y: S, rho: S, q: S) -> Self {
        Self { y, rho, q }
    }
}

/// `p_0, ..., p_n` at `x`.
pub fn asc_sequence<S: Scalar>(n: usize, x: &S, p: &AscParams<S>) -> Vec<S> {
    let one = x.one_like();
    let two = x.lift_int(2);
    let rho2 = p.rho.clone() * p.rho.clone();
    let two_rho_y = two.clone() * p.rho.clone() * p.y.clone();
    let mut out = vec![one.clone()];
    let mut prev = x.zero_like();
    let mut qk = one.clone();
    let mut qkm1 = one.clone();
    for k in 0..n {
        let cur = out[k].clone();
        let mut next = (two.clone() * x.clone() - two_rho_y.clone() * qk.clone()) * cur.clone();
        if k > 0 {
            next = next - (one.clone() - qk.clone()) * (one.clone() - rho2.clone() * qkm1.clone()) * prev;
            qkm1 = qkm1 * p.q.clone();
        }
        prev = cur;
        out.push(next);
        qk = qk * p.q.clone();
    }
    out
}

/// `p_n(x|y,rho,q)`.
pub fn asc_eval<S: Scalar>(n: usize, x: &S, p: &AscParams<S>) -> S {
    asc_sequence(n, x, p).swap_remove(n)
}

/// `g_0, ..., g_n` with `g_n(x|y,rho,q) = rho^n p_n(y|x,1/rho,q)`, computed
/// without the division so `rho = 0` gives the b family.
pub fn g_sequence<S: Scalar>(n: usize, x: &S, y: &S, rho: &S, q: &S) -> Vec<S> {
    let one = x.one_like();
    let two = x.lift_int(2);
    let rho2 = rho.clone() * rho.clone();
    let two_y_rho = two.clone() * y.clone() * rho.clone();
    let mut out = vec![one.clone()];
    let mut prev = x.zero_like();
    let mut qk = one.clone();
    let mut qkm1 = one.clone();
    for k in 0..n {
        let cur = out[k].clone();
        let mut next = (two_y_rho.clone() - two.clone() * x.clone() * qk.clone()) * cur.clone();
        if k > 0 {
            next = next - (one.clone() - qk.clone()) * (rho2.clone() - qkm1.clone()) * prev;
            qkm1 = qkm1 * q.clone();
        }
        prev = cur;
        out.push(next);
        qk = qk * q.clone();
    }
    out
}

pub fn g_eval<S: Scalar>(n: usize, x: &S, y: &S, rho: &S, q: &S) -> S {
    g_sequence(n, x, y, rho, q).swap_remove(n)
}

/// Askey-Wilson parameters: `(y, rho1)` and `(z, rho2)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct AwParams<S> {
    pub y: S,
    pub rho1: S,
    pub z: S,
    pub rho2: S,
    pub q: S,
}

impl<S: Scalar> AwParams<S> {
    pub fn new(y: S, rho1: S, z: S, rho2: S, q: S) -> Self {
        Self { y, rho1, z, rho2, q }
    }

    fn first_pair(&self) -> AscParams<S> {
        AscParams::new(self.y.clone(), self.rho1.clone(), self.q.clone())
    }

    fn product_sq(&self) -> S {
        let r = self.rho1.clone() * self.rho2.clone();
        r.clone() * r
    }
}

/// `alpha_n(x)` through its expansion in the ASC family.
pub fn aw_alpha_eval<S: Scalar>(n: usize, x: &S, p: &AwParams<S>) -> MathResult<S> {
    let q = &p.q;
    let asc = asc_sequence(n, x, &p.first_pair());
    if n == 0 {
        return Ok(asc[0].clone());
    }
    let binom = q_binomial_row(n, q);
    let rho1_sq = p.rho1.clone() * p.rho1.clone();
    let s = p.product_sq();
    let twist = p.rho1.clone() * p.rho2.clone() * q.pow_u(n - 1);
    let g = g_sequence(n, &p.z, &p.y, &twist, q);
    let mut out = x.zero_like();
    for j in 0..=n {
        let m = n - j;
        let num = binom[j].clone()
            * asc[j].clone()
            * p.rho2.pow_u(m)
            * q_poch(&(rho1_sq.clone() * q.pow_u(j)), q, m)
            * g[m].clone();
        out = out + div(num, &q_poch(&(s.clone() * q.pow_u(n + j - 1)), q, m))?;
    }
    Ok(out)
}

/// The inverse expansion: `p_n(x|y,rho1)` rebuilt from `alpha_0..alpha_n`.
pub fn asc_from_alpha<S: Scalar>(n: usize, x: &S, p: &AwParams<S>) -> MathResult<S> {
    let q = &p.q;
    let binom = q_binomial_row(n, q);
    let rho1_sq = p.rho1.clone() * p.rho1.clone();
    let s = p.product_sq();
    let mut out = x.zero_like();
    for j in 0..=n {
        let m = n - j;
        let twist = AscParams::new(p.y.clone(), p.rho1.clone() * p.rho2.clone() * q.pow_u(j), q.clone());
        let num = binom[j].clone()
            * aw_alpha_eval(j, x, p)?
            * p.rho2.pow_u(m)
            * q_poch(&(rho1_sq.clone() * q.pow_u(j)), q, m)
            * asc_eval(m, &p.z, &twist);
        out = out + div(num, &q_poch(&(s.clone() * q.pow_u(2 * j)), q, m))?;
    }
    Ok(out)
}

/// Families with a closed-form squared norm.
#[derive(Debug, Clone, PartialEq)]
pub enum NormFamily<S> {
    QHermite,
    ChebyshevU,
    Rogers { beta: S },
    Asc { rho: S },
    AskeyWilson { y: S, z: S, rho1: S, rho2: S },
}

/// Squared norm of the `n`th member against its probability density.
pub fn family_norm<S: Scalar>(family: &NormFamily<S>, n: usize, q: &S) -> MathResult<S> {
    let one = q.one_like();
    let qq = q_poch(q, q, n);
    match family {
        NormFamily::QHermite => Ok(qq),
        NormFamily::ChebyshevU => Ok(one),
        NormFamily::Rogers { beta } => {
            let num = q_poch(&(beta.clone() * beta.clone()), q, n) * (one.clone() - beta.clone());
            div(num, &((one - beta.clone() * q.pow_u(n)) * qq))
        }
        NormFamily::Asc { rho } => Ok(qq * q_poch(&(rho.clone() * rho.clone()), q, n)),
        NormFamily::AskeyWilson { y, z, rho1, rho2 } => {
            let r = rho1.clone() * rho2.clone();
            let s = r.clone() * r.clone();
            let mut kernel = one.clone();
            let mut rq = r;
            for _ in 0..n {
                kernel = kernel * kernel_w(y, z, &rq);
                rq = rq * q.clone();
            }
            let num = q_poch(&(rho1.clone() * rho1.clone()), q, n)
                * q_poch(&(rho2.clone() * rho2.clone()), q, n)
                * qq
                * kernel;
            let shifted = if n == 0 { one } else { q_poch(&(s.clone() * q.pow_u(n - 1)), q, n) };
            div(num, &(q_poch(&s, q, 2 * n) * shifted))
        }
    }
}

/// Which density to evaluate; parameters other than `q`.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityFamily {
    QHermite,
    Rogers { beta: BigReal },
    ConditionalNormal { y: BigReal, rho: BigReal },
    ConditionalPair { y: BigReal, z: BigReal, rho1: BigReal, rho2: BigReal },
}

#[derive(Debug, Clone)]
pub struct DensitySpec {
    family: DensityFamily,
    q: BigReal,
    ctx: PrecisionContext,
}

fn inside_open_unit(v: &BigReal, ctx: &PrecisionContext) -> bool {
    v.abs() < ctx.one()
}

impl DensitySpec {
    /// Validates the convergence bounds `|q|, |beta|, |rho| < 1` and the
    /// conditioning points.
    pub fn new(family: DensityFamily, q: BigReal, ctx: PrecisionContext) -> MathResult<Self> {
        let bounded: Vec<&BigReal> = match &family {
            DensityFamily::QHermite => vec![&q],
            DensityFamily::Rogers { beta } => vec![&q, beta],
            DensityFamily::ConditionalNormal { rho, .. } => vec![&q, rho],
            DensityFamily::ConditionalPair { rho1, rho2, .. } => vec![&q, rho1, rho2],
        };
        if bounded.iter().any(|v| !inside_open_unit(v, &ctx)) {
            return Err(MathError::DivergentDomain);
        }
        let points: Vec<&BigReal> = match &family {
            DensityFamily::ConditionalNormal { y, .. } => vec![y],
            DensityFamily::ConditionalPair { y, z, .. } => vec![y, z],
            _ => vec![],
        };
        if points.iter().any(|v| !inside_open_unit(v, &ctx)) {
            return Err(MathError::OutsideSupport);
        }
        Ok(Self { family, q, ctx })
    }

    pub fn family(&self) -> &DensityFamily {
        &self.family
    }

    pub fn q(&self) -> &BigReal {
        &self.q
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.ctx
    }
}

fn check_point(x: &BigReal, ctx: &PrecisionContext) -> MathResult<()> {
    if inside_open_unit(x, ctx) {
        Ok(())
    } else {
        Err(MathError::OutsideSupport)
    }
}

/// `f_h(x|q) = 2 (q)_inf sqrt(1-x^2) / pi * prod_{k>=1} l(x|q^k)`.
pub fn qhermite_density(x: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    check_point(x, ctx)?;
    let prec = ctx.precision_bits();
    let root = (ctx.one() - x.clone() * x.clone()).sqrt()?;
    let scale = (BigReal::from_i64(2, prec) * q_poch_inf_at(q, q, ctx)? * root)
        .checked_div(&BigReal::pi(prec))
        .ok_or(MathError::Singular)?;
    Ok(scale * prod_l_inf(x, q, q, ctx)?)
}

/// `f_C(x|beta,q)`, the Rogers density normalized to integrate to one.
pub fn rogers_density(x: &BigReal, beta: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    let base = qhermite_density(x, q, ctx)?;
    let num = q_poch_inf_at(&(beta.clone() * beta.clone()), q, ctx)? * base;
    let den = q_poch_inf_at(beta, q, ctx)? * q_poch_inf_at(&(beta.clone() * q.clone()), q, ctx)? * prod_l_inf(x, beta, q, ctx)?;
    num.checked_div(&den).ok_or(MathError::Singular)
}

/// `W(x,y|r) = (r^2)_inf / prod_j w(x,y|r q^j)`, so `f_CN = f_h W`.
pub fn pair_weight(x: &BigReal, y: &BigReal, r: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    let num = q_poch_inf_at(&(r.clone() * r.clone()), q, ctx)?;
    num.checked_div(&prod_w_inf(x, y, r, q, ctx)?).ok_or(MathError::Singular)
}

/// `f_CN(x|y,rho,q)`.
pub fn conditional_normal_density(
    x: &BigReal,
    y: &BigReal,
    rho: &BigReal,
    q: &BigReal,
    ctx: &PrecisionContext,
) -> MathResult<BigReal> {
    check_point(y, ctx)?;
    Ok(qhermite_density(x, q, ctx)? * pair_weight(x, y, rho, q, ctx)?)
}

/// Both composition orders of the two-conditional density at `x`:
/// `f_CN(y|x,r1) f_CN(x|z,r2) / f_CN(y|z,r1 r2)` and
/// `f_CN(x|y,r1) f_CN(z|x,r2) / f_CN(z|y,r1 r2)`.
pub fn conditional_pair_orders(
    x: &BigReal,
    (y, z): (&BigReal, &BigReal),
    (rho1, rho2): (&BigReal, &BigReal),
    q: &BigReal,
    ctx: &PrecisionContext,
) -> MathResult<(BigReal, BigReal)> {
    let r12 = rho1.clone() * rho2.clone();
    let f = |a: &BigReal, b: &BigReal, r: &BigReal| conditional_normal_density(a, b, r, q, ctx);
    let first = (f(y, x, rho1)? * f(x, z, rho2)?)
        .checked_div(&f(y, z, &r12)?)
        .ok_or(MathError::Singular)?;
    let second = (f(x, y, rho1)? * f(z, x, rho2)?)
        .checked_div(&f(z, y, &r12)?)
        .ok_or(MathError::Singular)?;
    Ok((first, second))
}

/// Density value at `x`. For the two-conditional family both composition
/// orders are evaluated and must agree to the context tolerance.
pub fn density_eval(spec: &DensitySpec, x: &BigReal) -> MathResult<BigReal> {
    let (q, ctx) = (&spec.q, &spec.ctx);
    match &spec.family {
        DensityFamily::QHermite => qhermite_density(x, q, ctx),
        DensityFamily::Rogers { beta } => rogers_density(x, beta, q, ctx),
        DensityFamily::ConditionalNormal { y, rho } => conditional_normal_density(x, y, rho, q, ctx),
        DensityFamily::ConditionalPair { y, z, rho1, rho2 } => {
            let (first, second) = conditional_pair_orders(x, (y, z), (rho1, rho2), q, ctx)?;
            let bound = ctx.tolerance() * (ctx.one() + first.abs());
            if (first.clone() - second).abs() > bound {
                return Err(MathError::NotConverged);
            }
            Ok(first)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::chebyshev_u;
    use crate::numerics::{rat, ExactRational};
    use crate::qkernel::q_binomial;

    fn r(n: i64, d: i64) -> ExactRational {
        rat(n, d).unwrap()
    }

    fn pts() -> Vec<ExactRational> {
        vec![r(1, 3), r(-2, 5), r(7, 4), r(3, 1), r(-5, 7)]
    }

    #[test]
    fn qhermite_examples() {
        for x in pts() {
            for q in pts() {
                let expect = ExactRational::from(4) * x.clone() * x.clone() + q.clone() - ExactRational::one();
                assert_eq!(qhermite_eval(2, &x, &q), expect);
            }
        }
        let q = r(2, 7);
        let one = ExactRational::one();
        assert_eq!(qhermite_eval(0, &one, &q), one);
        assert_eq!(qhermite_eval(1, &one, &q), ExactRational::from(2));
        assert_eq!(qhermite_eval(2, &one, &q), q.clone() + ExactRational::from(3));
        let zero = ExactRational::zero();
        for j in 0..5usize {
            let val = q_poch(&q, &(q.clone() * q.clone()), j);
            let val = if j % 2 == 1 { -val } else { val };
            assert_eq!(qhermite_eval(2 * j, &zero, &q), val);
        }
    }

    #[test]
    fn b_family() {
        let zero = ExactRational::zero();
        for x in pts() {
            for q in pts() {
                assert_eq!(bpoly_eval(1, &x, &q), -(ExactRational::from(2) * x.clone()));
                for n in 0..8 {
                    assert_eq!(bpoly_eval(n, &x, &q), bpoly_closed(n, &x, &q).unwrap());
                }
            }
            let q0 = ExactRational::zero();
            assert_eq!(bpoly_eval(2, &x, &q0), ExactRational::one());
            assert_eq!(bpoly_eval(3, &x, &q0), zero);
        }
        for q in pts() {
            for j in 0..5usize {
                let expect = q.pow((j * j.saturating_sub(1)) as i32).unwrap() * q_poch(&q, &(q.clone() * q.clone()), j);
                assert_eq!(bpoly_eval(2 * j, &zero, &q), expect);
            }
        }
    }

    #[test]
    fn zero_sum_separates_b_conventions() {
        let q = r(2, 3);
        for y in pts() {
            for n in 1..=8usize {
                let h = qhermite_sequence(n, &y, &q);
                let b = bpoly_sequence(n, &y, &q);
                let total = (0..=n).fold(ExactRational::zero(), |acc, j| {
                    acc + q_binomial(n, j as i64, &q) * h[j].clone() * b[n - j].clone()
                });
                assert!(total.is_zero(), "n={n}");
            }
            let literal = (0..=2usize).fold(ExactRational::zero(), |acc, j| {
                acc + q_binomial(2, j as i64, &q) * qhermite_eval(j, &y, &q) * bpoly_literal(2 - j, &y, &q)
            });
            assert!(!literal.is_zero());
        }
    }

    #[test]
    fn rogers_examples() {
        for x in pts() {
            for q in [r(1, 2), r(-1, 3), r(5, 2)] {
                for n in 0..=8 {
                    assert_eq!(rogers_eval(n, &x, &q, &q).unwrap(), chebyshev_u(n, &x));
                }
                for beta in pts() {
                    let p = AscParams::new(x.clone(), beta.clone(), q.clone());
                    for n in 0..=6 {
                        let lhs = asc_eval(n, &x, &p);
                        assert_eq!(lhs, q_poch(&q, &q, n) * rogers_eval(n, &x, &beta, &q).unwrap());
                    }
                }
            }
        }
        let (beta, q) = (r(1, 3), r(1, 2));
        let expect = -((ExactRational::one() - beta.clone() * beta.clone())
            .checked_div(&(ExactRational::one() - q.clone() * q.clone()))
            .unwrap());
        assert_eq!(rogers_eval(2, &ExactRational::zero(), &beta, &q).unwrap(), expect);
        assert_eq!(rogers_eval(3, &r(1, 2), &beta, &ExactRational::from(-1)), Err(MathError::SingularQ));
    }

    #[test]
    fn asc_and_g_examples() {
        let two = ExactRational::from(2);
        for x in pts() {
            for y in pts() {
                for rho in pts() {
                    let q = r(3, 5);
                    let p = AscParams::new(y.clone(), rho.clone(), q.clone());
                    assert_eq!(asc_eval(1, &x, &p), two.clone() * x.clone() - two.clone() * rho.clone() * y.clone());
                    assert_eq!(g_eval(1, &x, &y, &rho, &q), two.clone() * rho.clone() * y.clone() - two.clone() * x.clone());
                    let swapped = AscParams::new(x.clone(), rho.recip().unwrap(), q.clone());
                    for n in 0..6 {
                        let expect = rho.pow(n as i32).unwrap() * asc_eval(n, &y, &swapped);
                        assert_eq!(g_eval(n, &x, &y, &rho, &q), expect);
                    }
                }
                let q = r(-2, 7);
                let flat = AscParams::new(y.clone(), ExactRational::zero(), q.clone());
                for n in 0..7 {
                    assert_eq!(asc_eval(n, &x, &flat), qhermite_eval(n, &x, &q));
                    assert_eq!(g_eval(n, &x, &y, &ExactRational::zero(), &q), bpoly_eval(n, &x, &q));
                }
            }
        }
    }

    #[test]
    fn askey_wilson_expansions() {
        let q = r(1, 2);
        let params = [
            AwParams::new(r(2, 7), r(1, 3), r(-3, 4), r(2, 5), q.clone()),
            AwParams::new(r(5, 3), r(-7, 2), r(1, 6), r(3, 1), r(-4, 3)),
        ];
        for p in &params {
            for x in pts() {
                assert_eq!(aw_alpha_eval(0, &x, p).unwrap(), ExactRational::one());
                for n in 0..=5 {
                    assert_eq!(asc_from_alpha(n, &x, p).unwrap(), asc_eval(n, &x, &p.first_pair()));
                }
                let mut flat = p.clone();
                flat.rho2 = ExactRational::zero();
                for n in 0..=5 {
                    assert_eq!(aw_alpha_eval(n, &x, &flat).unwrap(), asc_eval(n, &x, &flat.first_pair()));
                }
            }
        }
    }

    #[test]
    fn norms() {
        let q = r(2, 5);
        assert_eq!(family_norm(&NormFamily::QHermite, 0, &q).unwrap(), ExactRational::one());
        for n in 0..=5 {
            let one = ExactRational::one();
            let expect = (q_poch(&(q.clone() * q.clone()), &q, n) * (one.clone() - q.clone()))
                .checked_div(&((one - q.pow(n as i32 + 1).unwrap()) * q_poch(&q, &q, n)))
                .unwrap();
            let beta = NormFamily::Rogers { beta: q.clone() };
            assert_eq!(family_norm(&beta, n, &q).unwrap(), expect);
            let asc = NormFamily::Asc { rho: ExactRational::zero() };
            assert_eq!(family_norm(&asc, n, &q).unwrap(), q_poch(&q, &q, n));
            let aw = NormFamily::AskeyWilson { y: r(1, 3), z: r(-1, 2), rho1: r(3, 7), rho2: ExactRational::zero() };
            assert_eq!(family_norm(&aw, n, &q).unwrap(), q_poch(&q, &q, n) * q_poch(&r(9, 49), &q, n));
        }
    }

    #[test]
    fn askey_wilson_norm_matches_recurrence_value() {
        // reference value from the monic recurrence with complex parameters
        let ctx = PrecisionContext::default();
        let v = |s: &str| ctx.real(s).unwrap();
        let aw = NormFamily::AskeyWilson { y: v("0.2"), z: v("0.3"), rho1: v("0.4"), rho2: v("0.5") };
        let got = family_norm(&aw, 2, &v("0.6")).unwrap().to_f64();
        assert!((got - 0.119272493436212).abs() < 1e-13, "{got}");
    }

    #[test]
    fn parity() {
        let q = r(3, 7);
        let beta = r(-2, 9);
        for x in pts() {
            let nx = -x.clone();
            for n in 0..8usize {
                let s = |v: ExactRational| if n % 2 == 1 { -v } else { v };
                assert_eq!(qhermite_eval(n, &nx, &q), s(qhermite_eval(n, &x, &q)));
                assert_eq!(rogers_eval(n, &nx, &beta, &q).unwrap(), s(rogers_eval(n, &x, &beta, &q).unwrap()));
                let p = AscParams::new(r(1, 4), beta.clone(), q.clone());
                let pn = AscParams::new(r(-1, 4), beta.clone(), q.clone());
                assert_eq!(asc_eval(n, &nx, &pn), s(asc_eval(n, &x, &p)));
            }
        }
    }

    #[test]
    fn densities() {
        let ctx = PrecisionContext::default();
        let v = |s: &str| ctx.real(s).unwrap();
        let zero = ctx.zero();
        let semicircle = qhermite_density(&zero, &zero, &ctx).unwrap();
        let two_over_pi = (BigReal::from_i64(2, 256)).checked_div(&BigReal::pi(256)).unwrap();
        assert!((semicircle - two_over_pi).abs() < ctx.tolerance());

        let q = v("0.45");
        let spec = DensitySpec::new(DensityFamily::ConditionalNormal { y: v("0.3"), rho: zero.clone() }, q.clone(), ctx.clone()).unwrap();
        let flat = density_eval(&spec, &v("-0.2")).unwrap();
        let base = qhermite_density(&v("-0.2"), &q, &ctx).unwrap();
        assert!((flat - base).abs() < ctx.tolerance());

        let (first, second) =
            conditional_pair_orders(&v("0.1"), (&v("0.2"), &v("0.3")), (&v("0.4"), &v("0.5")), &v("0.6"), &ctx).unwrap();
        assert!((first - second).abs() < BigReal::pow2(-60, 256));

        assert_eq!(qhermite_density(&v("1.0"), &q, &ctx), Err(MathError::OutsideSupport));
        let bad = DensitySpec::new(DensityFamily::Rogers { beta: v("1.5") }, q, ctx.clone());
        assert!(matches!(bad, Err(MathError::DivergentDomain)));
    }

    #[test]
    fn rogers_density_reduces_to_chebyshev_weight() {
        // beta = q gives the semicircle weight 2 sqrt(1-x^2)/pi
        let ctx = PrecisionContext::default();
        let v = |s: &str| ctx.real(s).unwrap();
        let x = v("0.35");
        let got = rogers_density(&x, &v("0.5"), &v("0.5"), &ctx).unwrap();
        let expect = (BigReal::from_i64(2, 256) * (ctx.one() - x.clone() * x).sqrt().unwrap())
            .checked_div(&BigReal::pi(256))
            .unwrap();
        assert!((got - expect).abs() < BigReal::pow2(-70, 256));
    }
}
