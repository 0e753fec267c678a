//! Mutual-inverse checks for the connection-coefficient pairs of the
//! q-families: `sum_k c_{n,k} cbar_{k,j} = delta_{n,j}` in both orders.

use super::qfamilies::{c_in_u_coeff, cnac_coeff, u_in_c_coeff};
use super::util::{c2, delta, dv, signed, try_sum, Pairs};
use super::{exact, free, with_base};
use crate::awfamilies::{asc_eval, bpoly_eval, g_eval, qhermite_eval, AscParams};
use crate::error::MathResult;
use crate::exact_body;
use crate::numerics::Scalar;
use crate::qkernel::{q_binomial, q_poch};
use crate::registry::record::{var, Domain};
use crate::registry::IdentityRecord;

fn inverse_pairs<S: Scalar>(
    n: usize,
    like: &S,
    c: impl Fn(usize, usize) -> MathResult<S>,
    cbar: impl Fn(usize, usize) -> MathResult<S>,
) -> Pairs<S> {
    let mut out = Vec::with_capacity(2 * (n + 1));
    for j in 0..=n {
        let fwd = try_sum(like, (j..=n).map(|k| Ok(c(n, k)? * cbar(k, j)?)))?;
        let back = try_sum(like, (j..=n).map(|k| Ok(cbar(n, k)? * c(k, j)?)))?;
        out.push((fwd, delta(like, n, j)));
        out.push((back, delta(like, n, j)));
    }
    Ok(out)
}

/// Lifts a coefficient indexed by the step `k` of `n -> n - 2k` to a dense
/// triangle entry.
fn even_step<S: Scalar>(like: &S, n: usize, m: usize, f: impl Fn(usize, usize) -> MathResult<S>) -> MathResult<S> {
    if (n - m) % 2 == 1 {
        Ok(like.zero_like())
    } else {
        f(n, (n - m) / 2)
    }
}

fn qh_chebu<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let q = &v[0];
    let one = q.one_like();
    // U_n in h_m, and h_n in U_m
    let u_h = |n: usize, m: usize| {
        even_step(q, n, m, |n, j| Ok(signed(q.pow_u(c2(j + 1)) * q_binomial(n - j, j as i64, q), j % 2 == 1)))
    };
    let h_u = |n: usize, m: usize| {
        even_step(q, n, m, |n, k| {
            let top = q.pow_u(n - k + 1);
            Ok(dv(q.pow_u(k) - top.clone(), &(one.clone() - top))? * q_binomial(n, k as i64, q))
        })
    };
    inverse_pairs(n, q, u_h, h_u)
}

fn rogers_chebu<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, q) = (&v[0], &v[1]);
    let u_c = |n: usize, m: usize| even_step(q, n, m, |n, k| u_in_c_coeff(n, k, beta, q));
    let c_u = |n: usize, m: usize| even_step(q, n, m, |n, k| c_in_u_coeff(n, k, beta, q));
    inverse_pairs(n, q, u_c, c_u)
}

fn rogers_rogers<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (beta, gamma, q) = (&v[0], &v[1], &v[2]);
    let fwd = |n: usize, m: usize| even_step(q, n, m, |n, k| cnac_coeff(n, k, beta, gamma, q));
    let back = |n: usize, m: usize| even_step(q, n, m, |n, k| cnac_coeff(n, k, gamma, beta, q));
    inverse_pairs(n, q, fwd, back)
}

fn asc_qh<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (y, rho, q) = (&v[0], &v[1], &v[2]);
    let base = |n: usize, j: usize| q_binomial(n, j as i64, q) * rho.pow_u(n - j);
    let p_h = |n: usize, j: usize| Ok(base(n, j) * bpoly_eval(n - j, y, q));
    let h_p = |n: usize, j: usize| Ok(base(n, j) * qhermite_eval(n - j, y, q));
    inverse_pairs(n, q, p_h, h_p)
}

fn aw_asc<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (y, z, rho1, rho2, q) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
    let r12 = rho1.clone() * rho2.clone();
    let s = r12.clone() * r12.clone();
    let r1sq = rho1.clone() * rho1.clone();
    let common = |n: usize, j: usize| {
        q_binomial(n, j as i64, q) * rho2.pow_u(n - j) * q_poch(&(r1sq.clone() * q.pow_u(j)), q, n - j)
    };
    // alpha_n in p_j
    let alpha_p = |n: usize, j: usize| {
        if n == 0 {
            return Ok(q.one_like());
        }
        let g = g_eval(n - j, z, y, &(r12.clone() * q.pow_u(n - 1)), q);
        dv(common(n, j) * g, &q_poch(&(s.clone() * q.pow_u(n + j - 1)), q, n - j))
    };
    // p_n in alpha_j
    let p_alpha = |n: usize, j: usize| {
        let p = asc_eval(n - j, z, &AscParams::new(y.clone(), r12.clone() * q.pow_u(j), q.clone()));
        dv(common(n, j) * p, &q_poch(&(s.clone() * q.pow_u(2 * j)), q, n - j))
    };
    inverse_pairs(n, q, alpha_p, p_alpha)
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let nz = |name| var(name, Domain::NonZero);
    vec![
        exact("framework.inverse.qh_chebU", "q-Hermite/Chebyshev U connection triangles are mutually inverse", with_base(vec![]), exact_body!(|n, v| qh_chebu(n, v)).from(0)),
        exact("framework.inverse.rogers_chebU", "Rogers/Chebyshev U connection triangles are mutually inverse", with_base(vec![nz("beta")]), exact_body!(|n, v| rogers_chebu(n, v)).from(0)),
        exact("framework.inverse.rogers_rogers", "Rogers beta/gamma connection triangles are mutually inverse", with_base(vec![nz("beta"), nz("gamma")]), exact_body!(|n, v| rogers_rogers(n, v)).from(0)),
        exact("framework.inverse.asc_qh", "Al-Salam-Chihara/q-Hermite connection triangles are mutually inverse", with_base(free(&["y", "rho"])), exact_body!(|n, v| asc_qh(n, v)).from(0)),
        exact("framework.inverse.aw_asc", "Askey-Wilson/Al-Salam-Chihara connection triangles are mutually inverse", with_base(free(&["y", "z", "rho1", "rho2"])), exact_body!(|n, v| aw_asc(n, v)).from(0)),
    ]
}
