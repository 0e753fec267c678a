use super::util::{c2, dv, signed, sum, try_sum, zero_sum, Pairs};
use super::{exact, free, with_base};
use crate::awfamilies::{asc_eval, asc_from_alpha, bpoly_eval, bpoly_literal, g_eval, qhermite_eval, rogers_eval, AscParams, AwParams};
use crate::error::{MathError, MathResult};
use crate::exact_body;
use crate::jacobi::chebyshev_u;
use crate::numerics::Scalar;
use crate::qkernel::{q_binomial, q_poch};
use crate::registry::record::{var, Domain, ExactBody, NLimit, Variable};
use crate::registry::IdentityRecord;

fn qb<S: Scalar>(n: usize, k: usize, q: &S) -> S {
    q_binomial(n, k as i64, q)
}

fn qpi<S: Scalar>(q: &S, e: i64) -> MathResult<S> {
    q.pow_i(e).ok_or(MathError::SingularSample)
}

fn inv<S: Scalar>(x: &S) -> MathResult<S> {
    dv(x.one_like(), x)
}

fn p<S: Scalar>(n: usize, x: &S, y: &S, rho: &S, q: &S) -> S {
    asc_eval(n, x, &AscParams::new(y.clone(), rho.clone(), q.clone()))
}

fn u_in_h<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, q) = (&v[0], &v[1]);
    let rhs = sum(x, (0..=n / 2).map(|j| {
        signed(q.pow_u(c2(j + 1)) * qb(n - j, j, q) * qhermite_eval(n - 2 * j, x, q), j % 2 == 1)
    }));
    Ok(vec![(chebyshev_u(n, x), rhs)])
}

fn h_in_u<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, q) = (&v[0], &v[1]);
    let one = x.one_like();
    let rhs = try_sum(x, (0..=n / 2).map(|k| {
        let top = q.pow_u(n - k + 1);
        let c = dv(q.pow_u(k) - top.clone(), &(one.clone() - top))?;
        Ok(c * qb(n, k, q) * chebyshev_u(n - 2 * k, x))
    }))?;
    Ok(vec![(qhermite_eval(n, x, q), rhs)])
}

fn chebu_fin1<S: Scalar>(m: usize, v: &[S]) -> Pairs<S> {
    let q = &v[0];
    let total = try_sum(q, (0..=m).map(|j| {
        let num = signed(q.pow_u(c2(j)) * qb(m, m - j, q) * qb(2 * m - j, m, q), j % 2 == 1);
        dv(num, &(q.one_like() - q.pow_u(m - j + 1)))
    }))?;
    zero_sum(q, total)
}

fn chebu_fin2<S: Scalar>(m: usize, v: &[S]) -> Pairs<S> {
    let q = &v[0];
    let one = q.one_like();
    let total = try_sum(q, (0..=m).map(|k| {
        let num = signed(q.pow_u(c2(k)) * qb(2 * m, m - k, q) * (one.clone() - q.pow_u(2 * k + 1)), k % 2 == 1);
        dv(num, &(one.clone() - q.pow_u(m + k + 1)))
    }))?;
    zero_sum(q, total)
}

/// `C_n(x|gamma)` in the `C_j(x|beta)` basis: coefficient of `C_{n-2k}`.
pub(super) fn cnac_coeff<S: Scalar>(n: usize, k: usize, beta: &S, gamma: &S, q: &S) -> MathResult<S> {
    let one = q.one_like();
    let num = beta.pow_u(k)
        * q_poch(&dv(gamma.clone(), beta)?, q, k)
        * q_poch(gamma, q, n - k)
        * (one.clone() - beta.clone() * q.pow_u(n - 2 * k));
    dv(num, &(q_poch(q, q, k) * q_poch(&(beta.clone() * q.clone()), q, n - k) * (one - beta.clone())))
}

fn cnac<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, beta, gamma, q) = (&v[0], &v[1], &v[2], &v[3]);
    let rhs = try_sum(x, (0..=n / 2).map(|k| Ok(cnac_coeff(n, k, beta, gamma, q)? * rogers_eval(n - 2 * k, x, beta, q)?)))?;
    Ok(vec![(rogers_eval(n, x, gamma, q)?, rhs)])
}

fn rogers_fin<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, gamma, q) = (&v[0], &v[1], &v[2]);
    let one = q.one_like();
    let (bg, gb) = (dv(beta.clone(), gamma)?, dv(gamma.clone(), beta)?);
    let total = try_sum(q, (0..=n).map(|j| {
        let num = qb(n, j, q)
            * gamma.pow_u(j)
            * beta.pow_u(n - j)
            * q_poch(&bg, q, j)
            * q_poch(&gb, q, n - j)
            * (one.clone() - beta.clone() * q.pow_u(2 * j))
            * q_poch(&(gamma.clone() * q.pow_u(j + 1)), q, n - 1);
        dv(num, &q_poch(&(beta.clone() * q.pow_u(j)), q, n + 1))
    }))?;
    zero_sum(q, total)
}

fn rogers_p1<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, q) = (&v[0], &v[1]);
    let total = sum(q, (0..=n).map(|k| {
        signed(q.pow_u(c2(k)) * qb(n, k, q) * q_poch(&(beta.clone() * q.pow_u(n - k)), q, n - 1), k % 2 == 1)
    }));
    zero_sum(q, total)
}

fn rogers_p2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, q) = (&v[0], &v[1]);
    let total = try_sum(q, (0..=n).map(|k| {
        let num = signed(q.pow_u(c2(k)) * qb(n, k, q) * (q.one_like() - beta.clone() * q.pow_u(2 * k)), k % 2 == 1);
        dv(num, &q_poch(&(beta.clone() * q.pow_u(k)), q, n + 1))
    }))?;
    zero_sum(q, total)
}

fn rogers_p3<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, q) = (&v[0], &v[1]);
    let ib = inv(beta)?;
    let total = sum(q, (0..=n).map(|j| qb(n, j, q) * q_poch(beta, q, j) * beta.pow_u(n - j) * q_poch(&ib, q, n - j)));
    zero_sum(q, total)
}

fn h_c<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, beta, q) = (&v[0], &v[1], &v[2]);
    let rhs = try_sum(x, (0..=n).map(|j| {
        let num = rogers_eval(j, x, beta, q)? * beta.pow_u(n - j) * qhermite_eval(n - j, x, q);
        dv(num, &q_poch(q, q, n - j))
    }))?;
    Ok(vec![(dv(qhermite_eval(n, x, q), &q_poch(q, q, n))?, rhs)])
}

fn c_h<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, beta, q) = (&v[0], &v[1], &v[2]);
    let rhs = sum(x, (0..=n).map(|j| qb(n, j, q) * qhermite_eval(j, x, q) * beta.pow_u(n - j) * bpoly_eval(n - j, x, q)));
    Ok(vec![(q_poch(q, q, n) * rogers_eval(n, x, beta, q)?, rhs)])
}

fn simplified1<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (rho, q) = (&v[0], &v[1]);
    let rhs = sum(q, (0..=n).map(|j| qb(n, j, q) * q_poch(rho, q, j) * rho.pow_u(n - j)));
    Ok(vec![(q.one_like(), rhs)])
}

fn simplified2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (rho, q) = (&v[0], &v[1]);
    let rhs = sum(q, (0..=n).map(|j| signed(qb(n, j, q) * q.pow_u(c2(j)) * rho.pow_u(j), j % 2 == 1)));
    Ok(vec![(q_poch(rho, q, n), rhs)])
}

fn h_at_zero<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let q = &v[0];
    let q2 = q.clone() * q.clone();
    Ok(vec![(qhermite_eval(2 * n, &q.zero_like(), q), signed(q_poch(q, &q2, n), n % 2 == 1))])
}

fn c_at_zero<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, q) = (&v[0], &v[1]);
    let q2 = q.clone() * q.clone();
    let rhs = dv(q_poch(&(beta.clone() * beta.clone()), &q2, n), &q_poch(&q2, &q2, n))?;
    Ok(vec![(rogers_eval(2 * n, &q.zero_like(), beta, q)?, signed(rhs, n % 2 == 1))])
}

fn b_at_zero<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let q = &v[0];
    let q2 = q.clone() * q.clone();
    Ok(vec![(bpoly_eval(2 * n, &q.zero_like(), q), q.pow_u(n * n.saturating_sub(1)) * q_poch(q, &q2, n))])
}

fn cc_zero<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, beta, q) = (&v[0], &v[1], &v[2]);
    let ib = inv(beta)?;
    let total = try_sum(x, (0..=n).map(|j| Ok(rogers_eval(j, x, beta, q)? * beta.pow_u(n - j) * rogers_eval(n - j, x, &ib, q)?)))?;
    zero_sum(x, total)
}

fn cc_zero_base<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, beta, q) = (&v[0], &v[1], &v[2]);
    let iq = inv(q)?;
    let total = try_sum(x, (0..=n).map(|j| {
        Ok(rogers_eval(j, x, beta, q)? * qpi(q, j as i64 - n as i64)? * rogers_eval(n - j, x, beta, &iq)?)
    }))?;
    zero_sum(x, total)
}

/// `U_n` in the Rogers basis: coefficient of `C_{n-2k}(x|beta)`.
pub(super) fn u_in_c_coeff<S: Scalar>(n: usize, k: usize, beta: &S, q: &S) -> MathResult<S> {
    let one = q.one_like();
    let num = beta.pow_u(k)
        * q_poch(&dv(q.clone(), beta)?, q, k)
        * q_poch(q, q, n - k)
        * (one - beta.clone() * q.pow_u(n - 2 * k));
    dv(num, &(q_poch(q, q, k) * q_poch(beta, q, n - k + 1)))
}

/// `C_n(x|beta)` in the Chebyshev basis: coefficient of `U_{n-2k}`.
pub(super) fn c_in_u_coeff<S: Scalar>(n: usize, k: usize, beta: &S, q: &S) -> MathResult<S> {
    let one = q.one_like();
    let num = q.pow_u(k)
        * q_poch(&dv(beta.clone(), q)?, q, k)
        * q_poch(beta, q, n - k)
        * (one - q.pow_u(n - 2 * k + 1));
    dv(num, &(q_poch(q, q, k) * q_poch(q, q, n - k + 1)))
}

fn u_in_c<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, beta, q) = (&v[0], &v[1], &v[2]);
    let rhs = try_sum(x, (0..=n / 2).map(|k| Ok(u_in_c_coeff(n, k, beta, q)? * rogers_eval(n - 2 * k, x, beta, q)?)))?;
    Ok(vec![(chebyshev_u(n, x), rhs)])
}

fn c_in_u<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, beta, q) = (&v[0], &v[1], &v[2]);
    let rhs = try_sum(x, (0..=n / 2).map(|k| Ok(c_in_u_coeff(n, k, beta, q)? * chebyshev_u(n - 2 * k, x))))?;
    Ok(vec![(rogers_eval(n, x, beta, q)?, rhs)])
}

fn rc_ratios<S: Scalar>(beta: &S, q: &S) -> MathResult<(S, S)> {
    Ok((dv(beta.clone(), q)?, dv(q.clone(), beta)?))
}

fn rc_fin1<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, q) = (&v[0], &v[1]);
    let one = q.one_like();
    let (bq, qb_) = rc_ratios(beta, q)?;
    let total = try_sum(q, (0..=n).map(|k| {
        let num = qb(n, k, q)
            * qb(n + k + 1, k + 1, q)
            * q.pow_u(k)
            * beta.pow_u(n - k)
            * q_poch(&bq, q, k)
            * q_poch(&qb_, q, n - k)
            * (one.clone() - beta.clone() * q.pow_u(2 * k));
        dv(num, &(q_poch(&(beta.clone() * q.pow_u(k)), q, n + 1) * (one.clone() - q.pow_u(n + k + 1))))
    }))?;
    zero_sum(q, total)
}

fn rc_fin2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, q) = (&v[0], &v[1]);
    let one = q.one_like();
    let (bq, qb_) = rc_ratios(beta, q)?;
    let total = sum(q, (0..=n).map(|k| {
        qb(2 * n + 1, n - k, q)
            * beta.pow_u(k)
            * q.pow_u(n - k)
            * q_poch(&qb_, q, k)
            * q_poch(&bq, q, n - k)
            * (one.clone() - q.pow_u(2 * k + 1))
            * q_poch(&(beta.clone() * q.pow_u(k + 1)), q, n - 1)
    }));
    zero_sum(q, total)
}

fn rc_pre1<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, q) = (&v[0], &v[1]);
    let one = q.one_like();
    let (bq, qb_) = rc_ratios(beta, q)?;
    let total = try_sum(q, (0..=n).map(|k| {
        let num = q.pow_u(k)
            * beta.pow_u(n - k)
            * q_poch(&bq, q, k)
            * q_poch(&qb_, q, n - k)
            * q_poch(beta, q, k)
            * q_poch(q, q, n + k)
            * (one.clone() - beta.clone() * q.pow_u(2 * k));
        let den = q_poch(q, q, k) * q_poch(q, q, k + 1) * q_poch(q, q, n - k) * q_poch(beta, q, n + k + 1);
        dv(num, &den)
    }))?;
    zero_sum(q, total)
}

fn rc_pre2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, q) = (&v[0], &v[1]);
    let one = q.one_like();
    let (bq, qb_) = rc_ratios(beta, q)?;
    let total = try_sum(q, (0..=n).map(|k| {
        let num = beta.pow_u(k)
            * q.pow_u(n - k)
            * q_poch(&qb_, q, k)
            * q_poch(&bq, q, n - k)
            * q_poch(beta, q, n + k)
            * (one.clone() - q.pow_u(2 * k + 1));
        dv(num, &(q_poch(q, q, n + k + 1) * q_poch(q, q, n - k) * q_poch(beta, q, k + 1)))
    }))?;
    zero_sum(q, total)
}

fn asc_fin_with<S: Scalar>(n: usize, v: &[S], b: fn(usize, &S, &S) -> S) -> Pairs<S> {
    let (y, q) = (&v[0], &v[1]);
    let total = sum(y, (0..=n).map(|j| qb(n, j, q) * qhermite_eval(j, y, q) * b(n - j, y, q)));
    zero_sum(y, total)
}

fn asc_fin<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    asc_fin_with(n, v, bpoly_eval)
}

/// The zero sum with the literal `b_n = (-1)^n q^C(n,2) h_n(x|q)`.
pub(super) fn asc_fin_literal<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    asc_fin_with(n, v, bpoly_literal)
}

fn p_in_h<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y, rho, q) = (&v[0], &v[1], &v[2], &v[3]);
    let rhs = sum(x, (0..=n).map(|j| qb(n, j, q) * rho.pow_u(n - j) * bpoly_eval(n - j, y, q) * qhermite_eval(j, x, q)));
    Ok(vec![(p(n, x, y, rho, q), rhs)])
}

fn h_in_p<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y, rho, q) = (&v[0], &v[1], &v[2], &v[3]);
    let rhs = sum(x, (0..=n).map(|j| qb(n, j, q) * rho.pow_u(n - j) * qhermite_eval(n - j, y, q) * p(j, x, y, rho, q)));
    Ok(vec![(qhermite_eval(n, x, q), rhs)])
}

fn p_c<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, rho, q) = (&v[0], &v[1], &v[2]);
    Ok(vec![(p(n, x, x, rho, q), q_poch(q, q, n) * rogers_eval(n, x, rho, q)?)])
}

fn g_reflect<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y, rho, q) = (&v[0], &v[1], &v[2], &v[3]);
    Ok(vec![(g_eval(n, x, y, rho, q), rho.pow_u(n) * p(n, y, x, &inv(rho)?, q))])
}

struct AwFin<'a, S> {
    z: &'a S,
    y: &'a S,
    beta: &'a S,
    q: &'a S,
    b2: S,
}

impl<'a, S: Scalar> AwFin<'a, S> {
    fn new(v: &'a [S]) -> Self {
        Self { z: &v[0], y: &v[1], beta: &v[2], q: &v[3], b2: v[2].clone() * v[2].clone() }
    }

    fn p(&self, n: usize, twist: S) -> S {
        p(n, self.z, self.y, &(self.beta.clone() * twist), self.q)
    }

    fn g(&self, n: usize, twist: S) -> S {
        g_eval(n, self.z, self.y, &(self.beta.clone() * twist), self.q)
    }

    fn b2q(&self, e: i64) -> MathResult<S> {
        Ok(self.b2.clone() * qpi(self.q, e)?)
    }
}

fn aw_fin1<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let a = AwFin::new(v);
    let q = a.q;
    let total = try_sum(q, (0..=n).map(|j| {
        Ok(qb(n, j, q) * q_poch(&a.b2q(j as i64)?, q, n - 1) * a.p(j, q.one_like()) * a.g(n - j, q.pow_u(n - 1)))
    }))?;
    zero_sum(q, total)
}

fn aw_fin2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let a = AwFin::new(v);
    let q = a.q;
    let one = q.one_like();
    let total = try_sum(q, (0..=n).map(|j| {
        let ji = j as i64;
        let num = qb(n, j, q) * a.p(n - j, q.pow_u(j)) * a.g(j, qpi(q, ji - 1)?) * (one.clone() - a.b2q(2 * ji - 1)?);
        dv(num, &(q_poch(&a.b2q(ji - 1)?, q, n) * (one.clone() - a.b2q(n as i64 + ji - 1)?)))
    }))?;
    zero_sum(q, total)
}

fn aw_pre1<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let a = AwFin::new(v);
    let q = a.q;
    let total = try_sum(q, (0..=n).map(|j| {
        let num = qb(n, j, q) * a.g(n - j, q.pow_u(n - 1)) * a.p(j, q.one_like());
        dv(num, &(q_poch(&a.b2q((n + j) as i64 - 1)?, q, n - j) * q_poch(&a.b2, q, j)))
    }))?;
    zero_sum(q, total)
}

fn aw_pre2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let a = AwFin::new(v);
    let q = a.q;
    let total = try_sum(q, (0..=n).map(|j| {
        let ji = j as i64;
        let num = qb(n, j, q) * a.p(n - j, q.pow_u(j)) * a.g(j, qpi(q, ji - 1)?);
        dv(num, &(q_poch(&a.b2q(2 * ji)?, q, n - j) * q_poch(&a.b2q(ji - 1)?, q, j)))
    }))?;
    zero_sum(q, total)
}

fn aw_c1<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, r, q) = (&v[0], &v[1], &v[2]);
    let rn = r.clone() * q.pow_u(n - 1);
    let irn = inv(&rn)?;
    let r2 = r.clone() * r.clone();
    let total = try_sum(x, (0..=n).map(|j| {
        Ok(rn.pow_u(n - j)
            * q_poch(&(r2.clone() * q.pow_u(j)), q, n - 1)
            * rogers_eval(j, x, r, q)?
            * rogers_eval(n - j, x, &irn, q)?)
    }))?;
    zero_sum(x, total)
}

fn aw_c2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, r, q) = (&v[0], &v[1], &v[2]);
    let r2 = r.clone() * r.clone();
    let total = try_sum(x, (0..=n).map(|j| {
        let rj = r.clone() * qpi(q, j as i64 - 1)?;
        let left = dv(rj.pow_u(j) * rogers_eval(j, x, &inv(&rj)?, q)?, &q_poch(&(r2.clone() * qpi(q, j as i64 - 1)?), q, j))?;
        let right = dv(rogers_eval(n - j, x, &(r.clone() * q.pow_u(j)), q)?, &q_poch(&(r2.clone() * q.pow_u(2 * j)), q, n - j))?;
        Ok(left * right)
    }))?;
    zero_sum(x, total)
}

fn aw_a1<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (a, q) = (&v[0], &v[1]);
    let first = try_sum(q, (0..=n).map(|k| {
        let num = signed(qb(n, k, q) * q.pow_u(c2(n - k)), k % 2 == 1);
        dv(num, &(q_poch(a, q, k) * q_poch(&(a.clone() * q.pow_u(n + k - 1)), q, n - k)))
    }))?;
    let second = sum(q, (0..=n).map(|k| signed(qb(n, k, q) * q.pow_u(c2(n - k)) * q_poch(&(a.clone() * q.pow_u(k)), q, n - 1), k % 2 == 1)));
    Ok(vec![(first, q.zero_like()), (second, q.zero_like())])
}

fn aw_a2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (a, q) = (&v[0], &v[1]);
    let one = q.one_like();
    let first = try_sum(q, (0..=n).map(|k| {
        let num = signed(qb(n, k, q) * q.pow_u(c2(k)), k % 2 == 1);
        let shifted = a.clone() * qpi(q, k as i64 - 1)?;
        dv(num, &(q_poch(&shifted, q, k) * q_poch(&(a.clone() * q.pow_u(2 * k)), q, n - k)))
    }))?;
    let second = try_sum(q, (0..=n).map(|k| {
        let ki = k as i64;
        let num = signed(qb(n, k, q) * q.pow_u(c2(k)) * (one.clone() - a.clone() * qpi(q, 2 * ki - 1)?), k % 2 == 1);
        dv(num, &q_poch(&(a.clone() * qpi(q, ki - 1)?), q, n + 1))
    }))?;
    Ok(vec![(first, q.zero_like()), (second, q.zero_like())])
}

fn aw_inverse<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y, z, rho1, rho2, q) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
    let params = AwParams::new(y.clone(), rho1.clone(), z.clone(), rho2.clone(), q.clone());
    Ok(vec![(p(n, x, y, rho1, q), asc_from_alpha(n, x, &params)?)])
}

fn nonzero(name: &'static str) -> Variable {
    var(name, Domain::NonZero)
}

fn finite(body: ExactBody) -> ExactBody {
    body.limit(NLimit::Minus(2))
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let xb = || with_base(vec![var("x", Domain::Rational), nonzero("beta")]);
    let xbq = || with_base(free(&["x", "beta"]));
    let bq = || with_base(free(&["beta"]));
    let nbq = || with_base(vec![nonzero("beta")]);
    let zybq = || with_base(free(&["z", "y", "beta"]));
    vec![
        exact("qh.chebU.U_in_h", "Chebyshev U in the q-Hermite basis", with_base(free(&["x"])), finite(exact_body!(|n, v| u_in_h(n, v)).from(0))),
        exact("qh.chebU.h_in_U", "q-Hermite in the Chebyshev U basis", with_base(free(&["x"])), finite(exact_body!(|n, v| h_in_u(n, v)).from(0))),
        exact("qh.chebU.fin1", "first vanishing sum of the q-Hermite/Chebyshev U pair", with_base(vec![]), finite(exact_body!(|n, v| chebu_fin1(n, v)))),
        exact(
            "qh.chebU.fin2",
            "second vanishing sum of the q-Hermite/Chebyshev U pair, sign carried by (-1)^k q^C(k,2)",
            with_base(vec![]),
            finite(exact_body!(|n, v| chebu_fin2(n, v))),
        ),
        exact("rogers.rogers.CnaC", "C_n(x|gamma) in the C_j(x|beta) basis", with_base(vec![var("x", Domain::Rational), nonzero("beta"), var("gamma", Domain::Rational)]), finite(exact_body!(|n, v| cnac(n, v)).from(0))),
        exact("rogers.rogers.fin", "vanishing sum from composing beta -> gamma -> beta", with_base(vec![nonzero("beta"), nonzero("gamma")]), finite(exact_body!(|n, v| rogers_fin(n, v)))),
        exact("rogers.rogers.cc_zero", "sum of C_j(x|beta) beta^{n-j} C_{n-j}(x|1/beta) vanishes", xb(), finite(exact_body!(|n, v| cc_zero(n, v)))),
        exact("rogers.rogers.cc_zero_base", "sum of C_j(x|beta,q) q^{j-n} C_{n-j}(x|beta,1/q) vanishes", xbq(), finite(exact_body!(|n, v| cc_zero_base(n, v)))),
        exact("qh.rogers.p1", "gamma = 0 vanishing sum, first form", bq(), finite(exact_body!(|n, v| rogers_p1(n, v)))),
        exact("qh.rogers.p2", "gamma = 0 vanishing sum, second form", bq(), finite(exact_body!(|n, v| rogers_p2(n, v)))),
        exact("qh.rogers.p3", "gamma = 0 vanishing sum, third form", nbq(), finite(exact_body!(|n, v| rogers_p3(n, v)))),
        exact("qh.rogers.hC", "q-Hermite in the Rogers basis", xbq(), finite(exact_body!(|n, v| h_c(n, v)).from(0))),
        exact("qh.rogers.Ch", "Rogers in the q-Hermite basis through b_n", xbq(), finite(exact_body!(|n, v| c_h(n, v)).from(0))),
        exact("qh.rogers.simplified1", "1 = sum [n,j] (rho)_j rho^{n-j}", with_base(free(&["rho"])), finite(exact_body!(|n, v| simplified1(n, v)).from(0))),
        exact("qh.rogers.simplified2", "(rho)_n = sum [n,j] (-1)^j q^C(j,2) rho^j", with_base(free(&["rho"])), finite(exact_body!(|n, v| simplified2(n, v)).from(0))),
        exact("qh.special.h2n_zero", "h_{2n}(0) = (-1)^n (q|q^2)_n", with_base(vec![]), finite(exact_body!(|n, v| h_at_zero(n, v)).from(0))),
        exact("qh.special.b2n_zero", "b_{2n}(0) = q^{n(n-1)} (q|q^2)_n", with_base(vec![]), finite(exact_body!(|n, v| b_at_zero(n, v)).from(0))),
        exact("rogers.special.c2n_zero", "C_{2n}(0|beta) = (-1)^n (beta^2|q^2)_n / (q^2|q^2)_n", bq(), finite(exact_body!(|n, v| c_at_zero(n, v)).from(0))),
        exact("rogers.chebU.U_in_C", "Chebyshev U in the Rogers basis", xb(), finite(exact_body!(|n, v| u_in_c(n, v)).from(0))),
        exact("rogers.chebU.C_in_U", "Rogers in the Chebyshev U basis", xb(), finite(exact_body!(|n, v| c_in_u(n, v)).from(0))),
        exact("rogers.chebU.fin1", "first vanishing sum of the Rogers/Chebyshev U pair", nbq(), finite(exact_body!(|n, v| rc_fin1(n, v)))),
        exact("rogers.chebU.fin2", "second vanishing sum of the Rogers/Chebyshev U pair", nbq(), finite(exact_body!(|n, v| rc_fin2(n, v)))),
        exact("rogers.chebU.pre1", "first vanishing sum before q-binomial simplification", nbq(), finite(exact_body!(|n, v| rc_pre1(n, v)))),
        exact("rogers.chebU.pre2", "second vanishing sum before q-binomial simplification", nbq(), finite(exact_body!(|n, v| rc_pre2(n, v)))),
        exact(
            "asc.qh.fin",
            "0 = sum [n,j] h_j(y) b_{n-j}(y) with b_n(x|q) = (-1)^n q^C(n,2) h_n(x|1/q)",
            with_base(free(&["y"])),
            exact_body!(|n, v| asc_fin(n, v)).limit(NLimit::Plus(2)),
        ),
        exact("asc.qh.p_in_h", "Al-Salam-Chihara in the q-Hermite basis", with_base(free(&["x", "y", "rho"])), finite(exact_body!(|n, v| p_in_h(n, v)).from(0))),
        exact("asc.qh.h_in_p", "q-Hermite in the Al-Salam-Chihara basis", with_base(free(&["x", "y", "rho"])), finite(exact_body!(|n, v| h_in_p(n, v)).from(0))),
        exact("asc.rogers.pC", "p_n(x|x,rho) = (q)_n C_n(x|rho)", with_base(free(&["x", "rho"])), finite(exact_body!(|n, v| p_c(n, v)).from(0))),
        exact(
            "asc.g.reflect",
            "g_n(x|y,rho) = rho^n p_n(y|x,1/rho)",
            with_base(vec![var("x", Domain::Rational), var("y", Domain::Rational), nonzero("rho")]),
            finite(exact_body!(|n, v| g_reflect(n, v)).from(0)),
        ),
        exact("aw.asc.fin1", "vanishing sum linking p_j(z|y,beta) and g_{n-j}(z|y,beta q^{n-1})", zybq(), finite(exact_body!(|n, v| aw_fin1(n, v)))),
        exact("aw.asc.fin2", "vanishing sum linking p_{n-j}(z|y,beta q^j) and g_j(z|y,beta q^{j-1})", zybq(), finite(exact_body!(|n, v| aw_fin2(n, v)))),
        exact("aw.asc.pre1", "first AW vanishing sum before simplification", zybq(), finite(exact_body!(|n, v| aw_pre1(n, v)))),
        exact("aw.asc.pre2", "second AW vanishing sum before simplification", zybq(), finite(exact_body!(|n, v| aw_pre2(n, v)))),
        exact("aw.asc.c1", "Rogers form of the first AW vanishing sum", xb(), finite(exact_body!(|n, v| aw_c1(n, v)))),
        exact("aw.asc.c2", "Rogers form of the second AW vanishing sum", xb(), finite(exact_body!(|n, v| aw_c2(n, v)))),
        exact("aw.asc.a1", "first vanishing sum in a = rho^2 q, both forms", with_base(free(&["a"])), finite(exact_body!(|n, v| aw_a1(n, v)))),
        exact("aw.asc.a2", "second vanishing sum in a = rho^2 q, both forms", with_base(free(&["a"])), finite(exact_body!(|n, v| aw_a2(n, v)))),
        exact(
            "aw.asc.inverse",
            "p_n(x|y,rho1) rebuilt from the Askey-Wilson polynomials",
            with_base(free(&["x", "y", "z", "rho1", "rho2"])),
            finite(exact_body!(|n, v| aw_inverse(n, v)).from(0)),
        ),
    ]
}
