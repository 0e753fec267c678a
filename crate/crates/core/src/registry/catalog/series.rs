use super::util::c2;
use super::{series, unit};
use crate::awfamilies::{
    asc_sequence, aw_alpha_eval, bpoly_sequence, g_eval, pair_weight, qhermite_sequence, rogers_density, rogers_sequence,
    AscParams, AwParams,
};
use crate::error::{MathError, MathResult};
use crate::jacobi::chebyshev_u;
use crate::numerics::{BigReal, PrecisionContext, Scalar};
use crate::qkernel::{kernel_w, prod_l_inf, q_binomial, q_poch, q_poch_inf_at};
use crate::registry::record::SeriesSetup;
use crate::registry::IdentityRecord;

fn inside(values: &[&BigReal], ctx: &PrecisionContext) -> MathResult<()> {
    if values.iter().all(|v| v.abs() < ctx.one()) {
        Ok(())
    } else {
        Err(MathError::DivergentDomain)
    }
}

fn div(num: BigReal, den: &BigReal) -> MathResult<BigReal> {
    num.checked_div(den).ok_or(MathError::Singular)
}

fn recip(v: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    div(ctx.one(), v)
}

fn inf(a: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    q_poch_inf_at(a, q, &ctx.tightened(24))
}

/// Number of terms computed up front.
fn span(ctx: &PrecisionContext) -> usize {
    ctx.max_terms() + 2
}

/// `(a)_0, ..., (a)_n`.
fn poch_table(a: &BigReal, q: &BigReal, n: usize) -> Vec<BigReal> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = a.one_like();
    let mut aq = a.clone();
    out.push(acc.clone());
    for _ in 0..n {
        acc = acc * (a.one_like() - aq.clone());
        aq = aq * q.clone();
        out.push(acc.clone());
    }
    out
}

fn alternate(v: BigReal, k: usize) -> BigReal {
    if k % 2 == 1 {
        -v
    } else {
        v
    }
}

fn setup(target: BigReal, terms: Vec<BigReal>) -> SeriesSetup {
    SeriesSetup {
        target,
        term: Box::new(move |k| terms.get(k).cloned().ok_or(MathError::BudgetExceeded)),
    }
}

fn table(n: usize, f: impl FnMut(usize) -> MathResult<BigReal>) -> MathResult<Vec<BigReal>> {
    (0..n).map(f).collect()
}

fn bin_t(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (t, q) = (&v[0], &v[1]);
    inside(&[t, q], ctx)?;
    let qq = poch_table(q, q, span(ctx));
    let terms = table(span(ctx), |k| div(t.pow_u(k), &qq[k]))?;
    Ok(setup(recip(&inf(t, q, ctx)?, ctx)?, terms))
}

fn obin_t(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (t, q) = (&v[0], &v[1]);
    inside(&[t, q], ctx)?;
    let qq = poch_table(q, q, span(ctx));
    let terms = table(span(ctx), |k| div(alternate(q.pow_u(c2(k)) * t.pow_u(k), k), &qq[k]))?;
    Ok(setup(inf(t, q, ctx)?, terms))
}

fn bin_t_n(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    const N: usize = 4;
    let (t, q) = (&v[0], &v[1]);
    inside(&[t, q], ctx)?;
    let terms = table(span(ctx), |k| Ok(q_binomial(N + k, k as i64, q) * t.pow_u(k)))?;
    Ok(setup(recip(&q_poch(t, q, N + 1), ctx)?, terms))
}

fn inf_zero(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let q = &v[0];
    inside(&[q], ctx)?;
    let qq = poch_table(q, q, span(ctx));
    let terms = table(span(ctx), |k| div(alternate(q.pow_u(c2(k)), k), &qq[k]))?;
    Ok(setup(ctx.zero(), terms))
}

/// `(q)_inf prod_{j>=0} l(x|q^{j+1})`.
fn chebu_product(x: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    Ok(inf(q, q, ctx)? * prod_l_inf(x, q, q, ctx)?)
}

/// `(1-q) q^j / ((q)_j^2 (1-q^{j+1}))`.
fn galois_weights(q: &BigReal, n: usize) -> MathResult<Vec<BigReal>> {
    let qq = poch_table(q, q, n + 1);
    let one = q.one_like();
    table(n, |j| div((one.clone() - q.clone()) * q.pow_u(j), &(qq[j].clone() * qq[j].clone() * (one.clone() - q.pow_u(j + 1)))))
}

fn in_u(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (x, q) = (&v[0], &v[1]);
    inside(&[q], ctx)?;
    let target = chebu_product(x, q, ctx)?;
    let terms = table(span(ctx), |j| Ok(alternate(q.pow_u(c2(j + 1)) * chebyshev_u(2 * j, x), j)))?;
    Ok(setup(target, terms))
}

fn nah(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (x, q) = (&v[0], &v[1]);
    inside(&[q], ctx)?;
    let target = recip(&chebu_product(x, q, ctx)?, ctx)?;
    let h = qhermite_sequence(2 * span(ctx), x, q);
    let w = galois_weights(q, span(ctx))?;
    Ok(setup(target, (0..span(ctx)).map(|j| w[j].clone() * h[2 * j].clone()).collect()))
}

fn x0(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let q = &v[0];
    inside(&[q], ctx)?;
    let q2 = q.clone() * q.clone();
    let target = recip(&(inf(&q2, &q2, ctx)? * inf(&(-q.clone()), q, ctx)?), ctx)?;
    let w = galois_weights(q, span(ctx))?;
    let odd = poch_table(q, &q2, span(ctx));
    let terms = (0..span(ctx)).map(|j| alternate(w[j].clone() * odd[j].clone(), j)).collect();
    Ok(setup(target, terms))
}

fn galois(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let q = &v[0];
    inside(&[q], ctx)?;
    let target = recip(&inf(q, q, ctx)?.powi(3), ctx)?;
    let h = qhermite_sequence(2 * span(ctx), &ctx.one(), q);
    let w = galois_weights(q, span(ctx))?;
    Ok(setup(target, (0..span(ctx)).map(|j| w[j].clone() * h[2 * j].clone()).collect()))
}

fn rogers_rogers(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (x, beta, gamma, q) = (&v[0], &v[1], &v[2], &v[3]);
    inside(&[beta, gamma, q], ctx)?;
    let target = div(rogers_density(x, beta, q, ctx)?, &rogers_density(x, gamma, q, ctx)?)?;
    let n = span(ctx);
    let one = ctx.one();
    let gb = poch_table(&div(gamma.clone(), beta)?, q, n);
    let g = poch_table(gamma, q, n);
    let qq = poch_table(q, q, 2 * n);
    let b = poch_table(beta, q, n + 1);
    let g2 = poch_table(&(gamma.clone() * gamma.clone()), q, 2 * n);
    let c = rogers_sequence(2 * n, x, gamma, q)?;
    let scale = div(one.clone() - beta.clone(), &(one.clone() - gamma.clone()))?;
    let terms = table(n, |k| {
        let num = beta.pow_u(k) * gb[k].clone() * g[k].clone() * scale.clone() * (one.clone() - gamma.clone() * q.pow_u(2 * k)) * qq[2 * k].clone();
        Ok(div(num, &(qq[k].clone() * b[k + 1].clone() * g2[2 * k].clone()))? * c[2 * k].clone())
    })?;
    Ok(setup(target, terms))
}

/// `(beta)_inf (beta q)_inf (-beta)_inf^2 / (beta^2)_inf`.
fn qh_rogers_product(beta: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    let minus = inf(&(-beta.clone()), q, ctx)?;
    let num = inf(beta, q, ctx)? * inf(&(beta.clone() * q.clone()), q, ctx)? * minus.clone() * minus;
    div(num, &inf(&(beta.clone() * beta.clone()), q, ctx)?)
}

fn qh_rogers1(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (beta, q) = (&v[0], &v[1]);
    inside(&[beta, q], ctx)?;
    let n = span(ctx);
    let one = ctx.one();
    let (q2, b2) = (q.clone() * q.clone(), beta.clone() * beta.clone());
    let (b, qq, b2q2, b2t, q2q2) = (poch_table(beta, q, n), poch_table(q, q, 2 * n), poch_table(&b2, &q2, n), poch_table(&b2, q, 2 * n), poch_table(&q2, &q2, n));
    let terms = table(n, |k| {
        let num = beta.pow_u(k) * q.pow_u(c2(k)) * b[k].clone() * (one.clone() - beta.clone() * q.pow_u(2 * k)) * qq[2 * k].clone() * b2q2[k].clone();
        div(num, &(qq[k].clone() * b2t[2 * k].clone() * (one.clone() - beta.clone()) * q2q2[k].clone()))
    })?;
    Ok(setup(qh_rogers_product(beta, q, ctx)?, terms))
}

fn qh_rogers2(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (beta, q) = (&v[0], &v[1]);
    inside(&[beta, q], ctx)?;
    let n = span(ctx);
    let one = ctx.one();
    let (qq, b, odd) = (poch_table(q, q, n), poch_table(beta, q, n + 1), poch_table(q, &(q.clone() * q.clone()), n));
    let terms = table(n, |k| div((-beta.clone()).pow_u(k) * (one.clone() - beta.clone()) * odd[k].clone(), &(qq[k].clone() * b[k + 1].clone())))?;
    Ok(setup(recip(&qh_rogers_product(beta, q, ctx)?, ctx)?, terms))
}

/// `(q beta^2|q^2)_inf (-q)_inf (q^2|q^2)_inf / (beta^2|q^2)_inf`.
fn rogers_chebu_product(beta: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    let (q2, b2) = (q.clone() * q.clone(), beta.clone() * beta.clone());
    let num = inf(&(q.clone() * b2.clone()), &q2, ctx)? * inf(&(-q.clone()), q, ctx)? * inf(&q2, &q2, ctx)?;
    div(num, &inf(&b2, &q2, ctx)?)
}

fn rc_series1(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (beta, q) = (&v[0], &v[1]);
    inside(&[beta, q], ctx)?;
    let n = span(ctx);
    let (qb, b) = (poch_table(&div(q.clone(), beta)?, q, n), poch_table(beta, q, n + 1));
    let terms = table(n, |k| div(alternate(beta.pow_u(k) * qb[k].clone(), k), &b[k + 1]))?;
    Ok(setup(rogers_chebu_product(beta, q, ctx)?, terms))
}

fn rc_series2(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (beta, q) = (&v[0], &v[1]);
    inside(&[beta, q], ctx)?;
    let n = span(ctx);
    let one = ctx.one();
    let q2 = q.clone() * q.clone();
    let bq = poch_table(&div(beta.clone(), q)?, q, n);
    let b = poch_table(beta, q, n);
    let odd = poch_table(q, &q2, n);
    let qq = poch_table(q, q, n + 1);
    let b2q = poch_table(&(beta.clone() * beta.clone() * q.clone()), &q2, n);
    let terms = table(n, |k| {
        let num = alternate(q.pow_u(k) * bq[k].clone() * b[k].clone() * odd[k].clone() * (one.clone() - beta.clone() * q.pow_u(2 * k)), k);
        div(num, &(qq[k].clone() * qq[k + 1].clone() * b2q[k].clone()))
    })?;
    let target = recip(&(rogers_chebu_product(beta, q, ctx)? * (one.clone() - q.clone())), ctx)?;
    Ok(setup(target, terms))
}

fn nice(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (beta, q) = (&v[0], &v[1]);
    inside(&[beta, q], ctx)?;
    let n = span(ctx);
    let (qb, b) = (poch_table(&div(q.clone(), beta)?, q, n), poch_table(beta, q, n + 1));
    let terms = table(n, |k| div(beta.lift_int(2 * k as i64 + 1) * beta.pow_u(k) * qb[k].clone(), &b[k + 1]))?;
    let target = div(inf(&(beta.clone() * beta.clone()), q, ctx)? * inf(q, q, ctx)?.powi(3), &inf(beta, q, ctx)?.powi(4))?;
    Ok(setup(target, terms))
}

fn asc_pm(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (x, y, rho, q) = (&v[0], &v[1], &v[2], &v[3]);
    inside(&[rho, q], ctx)?;
    let n = span(ctx);
    let target = pair_weight(x, y, rho, q, ctx)?;
    let (hx, hy, qq) = (qhermite_sequence(n, x, q), qhermite_sequence(n, y, q), poch_table(q, q, n));
    let terms = table(n, |j| div(rho.pow_u(j) * hx[j].clone() * hy[j].clone(), &qq[j]))?;
    Ok(setup(target, terms))
}

fn asc_inv(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (x, y, rho, q) = (&v[0], &v[1], &v[2], &v[3]);
    inside(&[rho, q], ctx)?;
    let n = span(ctx);
    let target = recip(&pair_weight(x, y, rho, q, ctx)?, ctx)?;
    let b = bpoly_sequence(n, y, q);
    let p = asc_sequence(n, x, &AscParams::new(y.clone(), rho.clone(), q.clone()));
    let (qq, r2) = (poch_table(q, q, n), poch_table(&(rho.clone() * rho.clone()), q, n));
    let terms = table(n, |j| div(rho.pow_u(j) * b[j].clone() * p[j].clone(), &(qq[j].clone() * r2[j].clone())))?;
    Ok(setup(target, terms))
}

/// `(rho^2)_inf / ((rho)_inf^2 prod_j l(x|rho q^j))`.
fn diag_product(x: &BigReal, rho: &BigReal, q: &BigReal, ctx: &PrecisionContext) -> MathResult<BigReal> {
    let r = inf(rho, q, ctx)?;
    div(inf(&(rho.clone() * rho.clone()), q, ctx)?, &(r.clone() * r * prod_l_inf(x, rho, q, ctx)?))
}

fn diag1(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (x, rho, q) = (&v[0], &v[1], &v[2]);
    inside(&[rho, q], ctx)?;
    let n = span(ctx);
    let (h, qq) = (qhermite_sequence(n, x, q), poch_table(q, q, n));
    let terms = table(n, |j| div(rho.pow_u(j) * h[j].clone() * h[j].clone(), &qq[j]))?;
    Ok(setup(diag_product(x, rho, q, ctx)?, terms))
}

fn diag2(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let (x, rho, q) = (&v[0], &v[1], &v[2]);
    inside(&[rho, q], ctx)?;
    let n = span(ctx);
    let b = bpoly_sequence(n, x, q);
    let c = rogers_sequence(n, x, rho, q)?;
    let r2 = poch_table(&(rho.clone() * rho.clone()), q, n);
    let terms = table(n, |j| div(rho.pow_u(j) * b[j].clone() * c[j].clone(), &r2[j]))?;
    Ok(setup(recip(&diag_product(x, rho, q, ctx)?, ctx)?, terms))
}

/// `W(x,z|rho2) / W(z,y|rho1 rho2)`.
fn aw_ratio(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<BigReal> {
    let (x, y, z, rho1, rho2, q) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
    inside(&[rho1, rho2, q], ctx)?;
    let r12 = rho1.clone() * rho2.clone();
    div(pair_weight(x, z, rho2, q, ctx)?, &pair_weight(z, y, &r12, q, ctx)?)
}

fn aw_series1(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let target = aw_ratio(v, ctx)?;
    let (x, y, z, rho1, rho2, q) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
    let n = span(ctx);
    let r12 = rho1.clone() * rho2.clone();
    let pz = asc_sequence(n, z, &AscParams::new(y.clone(), r12.clone(), q.clone()));
    let px = asc_sequence(n, x, &AscParams::new(y.clone(), rho1.clone(), q.clone()));
    let (s, qq) = (poch_table(&(r12.clone() * r12), q, n), poch_table(q, q, n));
    let terms = table(n, |k| div(rho2.pow_u(k) * pz[k].clone() * px[k].clone(), &(s[k].clone() * qq[k].clone())))?;
    Ok(setup(target, terms))
}

fn aw_series2(v: &[BigReal], ctx: &PrecisionContext) -> MathResult<SeriesSetup> {
    let target = recip(&aw_ratio(v, ctx)?, ctx)?;
    let (x, y, z, rho1, rho2, q) = (v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone(), v[5].clone());
    let params = AwParams::new(y.clone(), rho1.clone(), z.clone(), rho2.clone(), q.clone());
    let r12 = rho1 * rho2.clone();
    let s = r12.clone() * r12.clone();
    let r22 = rho2.clone() * rho2.clone();
    // prod_{j<k} w(y,z|rho1 rho2 q^j), extended as terms are requested
    let mut kernel = vec![x.one_like()];
    let term = move |k: usize| -> MathResult<BigReal> {
        while kernel.len() <= k {
            let j = kernel.len() - 1;
            let next = kernel[j].clone() * kernel_w(&y, &z, &(r12.clone() * q.pow_u(j)));
            kernel.push(next);
        }
        let twist = if k == 0 { div(r12.clone(), &q)? } else { r12.clone() * q.pow_u(k - 1) };
        let g = g_eval(k, &z, &y, &twist, &q);
        let num = rho2.pow_u(k) * q_poch(&s, &q, 2 * k) * g * aw_alpha_eval(k, &x, &params)?;
        div(num, &(kernel[k].clone() * q_poch(&r22, &q, k) * q_poch(&q, &q, k)))
    };
    Ok(SeriesSetup { target, term: Box::new(term) })
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let aw_vars = || unit(&["x", "y", "z", "rho1", "rho2", "q"]);
    let aw_point = || vec![vec!["0.1", "0.2", "0.3", "0.4", "0.5", "0.6"]];
    vec![
        series("q.euler.binT", "1/(t)_inf = sum t^k/(q)_k", unit(&["t", "q"]), vec![vec!["1/3", "1/2"]], 0.5, bin_t),
        series("q.euler.obinT", "(t)_inf = sum (-1)^k q^C(k,2) t^k/(q)_k", unit(&["t", "q"]), vec![vec!["1/3", "1/2"]], 0.5, obin_t),
        series("q.euler.binT_n", "1/(t)_{n+1} = sum [n+k,k] t^k at n = 4", unit(&["t", "q"]), vec![vec!["1/3", "1/2"]], 0.5, bin_t_n),
        series("q.euler.inf_zero", "0 = sum (-1)^k q^C(k,2)/(q)_k", unit(&["q"]), vec![vec!["1/2"]], 0.5, inf_zero),
        series(
            "qh.chebU.inU",
            "(q)_inf prod l(x|q^{j+1}) expanded in U_{2j}",
            unit(&["x", "q"]),
            vec![vec!["0", "0.5"], vec!["0.3", "0.5"]],
            0.5,
            in_u,
        ),
        series(
            "qh.chebU.nah",
            "reciprocal of the U_{2j} generating product expanded in h_{2j}",
            unit(&["x", "q"]),
            vec![vec!["0", "0.5"], vec!["0.3", "0.5"]],
            0.5,
            nah,
        ),
        series("qh.chebU.x0", "x = 0 case of the h_{2j} expansion", unit(&["q"]), vec![vec!["0.5"]], 0.5, x0),
        series("qh.chebU.galois", "1/(q)_inf^3 as a sum over Galois numbers h_{2j}(1)", unit(&["q"]), vec![vec!["1/2"]], 0.5, galois),
        series(
            "rogers.rogers.series",
            "f_C(x|beta)/f_C(x|gamma) expanded in C_{2n}(x|gamma)",
            unit(&["x", "beta", "gamma", "q"]),
            vec![vec!["0.3", "0.3", "0.5", "0.4"]],
            0.5,
            rogers_rogers,
        ),
        series("qh.rogers.series1", "gamma = 0 product identity, first form", unit(&["beta", "q"]), vec![vec!["0.3", "0.5"]], 0.5, qh_rogers1),
        series("qh.rogers.series2", "gamma = 0 product identity, reciprocal form", unit(&["beta", "q"]), vec![vec!["0.3", "0.5"]], 0.5, qh_rogers2),
        series("rogers.chebU.series1", "Rogers/Chebyshev U product identity, first form", unit(&["beta", "q"]), vec![vec!["0.3", "0.4"]], 0.5, rc_series1),
        series("rogers.chebU.series2", "Rogers/Chebyshev U product identity, reciprocal form", unit(&["beta", "q"]), vec![vec!["0.3", "0.4"]], 0.5, rc_series2),
        series("rogers.chebU.nice", "(beta^2)_inf (q)_inf^3/(beta)_inf^4 = sum (2n+1) beta^n (q/beta)_n/(beta)_{n+1}", unit(&["beta", "q"]), vec![vec!["0.3", "0.4"]], 0.5, nice),
        series("asc.qh.pm", "Poisson-Mehler expansion of (rho^2)_inf / prod w(x,y|rho q^j)", unit(&["x", "y", "rho", "q"]), vec![vec!["0.3", "0.3", "0.4", "0.5"]], 0.5, asc_pm),
        series("asc.qh.inv", "reciprocal Poisson-Mehler kernel in b_j(y) p_j(x|y,rho)", unit(&["x", "y", "rho", "q"]), vec![vec!["0.3", "0.3", "0.4", "0.5"]], 0.5, asc_inv),
        series("asc.qh.diag1", "Poisson-Mehler expansion on the diagonal x = y", unit(&["x", "rho", "q"]), vec![vec!["0.3", "0.4", "0.5"]], 0.5, diag1),
        series("asc.qh.diag2", "reciprocal diagonal kernel in b_j(x) C_j(x|rho)", unit(&["x", "rho", "q"]), vec![vec!["0.3", "0.4", "0.5"]], 0.5, diag2),
        series("aw.asc.series1", "W(x,z|rho2)/W(z,y|rho1 rho2) expanded in p_n(z|y,rho1 rho2) p_n(x|y,rho1)", aw_vars(), aw_point(), 0.6, aw_series1),
        series("aw.asc.series2", "W(z,y|rho1 rho2)/W(x,z|rho2) expanded in Askey-Wilson polynomials alpha_n(x)", aw_vars(), aw_point(), 0.6, aw_series2),
    ]
}
