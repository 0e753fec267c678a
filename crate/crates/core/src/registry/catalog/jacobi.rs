use super::util::{delta, dv, fact, signed, sum, try_sum, zero_sum, Pairs};
use super::{exact, expansion, free, shapes};
use crate::exact_body;
use crate::jacobi::{
    ccon_closed, ccon_generic, chebyshev_t, chebyshev_t_via_jacobi, chebyshev_u, chebyshev_u_via_jacobi, conn_coeff,
    e_coeff, etilde_coeff, etilde_coeff_alt, gegenbauer, gegenbauer_via_jacobi, jacobi_eval, legendre, CconCase,
    CoefficientOrder, JacobiParams,
};
use crate::numerics::{rat, Scalar};
use crate::pochhammer::{binomial_rat, rising};
use crate::registry::record::{var, Domain};
use crate::registry::IdentityRecord;

fn jp<S: Scalar>(a: &S, b: &S) -> JacobiParams<S> {
    JacobiParams::new(a.clone(), b.clone())
}

fn half<S: Scalar>(like: &S, num: i64) -> S {
    like.lift(&rat(num, 2).expect("nonzero"))
}

fn odwr<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let p = jp(&v[0], &v[1]);
    (0..=n)
        .map(|m| {
            let s = try_sum(&v[0], (m..=n).map(|k| Ok(e_coeff(n, k, &p) * etilde_coeff(k, m, &p)?)))?;
            Ok((s, delta(&v[0], n, m)))
        })
        .collect()
}

fn odw2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let p = jp(&v[0], &v[1]);
    (0..=n)
        .map(|m| {
            let s = try_sum(&v[0], (m..=n).map(|k| Ok(etilde_coeff(n, k, &p)? * e_coeff(k, m, &p))))?;
            Ok((s, delta(&v[0], n, m)))
        })
        .collect()
}

fn dnj2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let p = jp(&v[0], &v[1]);
    (0..=n).map(|m| Ok((etilde_coeff(n, m, &p)?, etilde_coeff_alt(n, m, &p)?))).collect()
}

/// Connection sums nest three deep, so their grids stay small.
const CONN_BUDGET: usize = 30_000;

fn conn_expand<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let x = &v[0];
    let (src, tgt) = (jp(&v[1], &v[2]), jp(&v[3], &v[4]));
    let rhs = try_sum(x, (0..=n).map(|j| Ok(conn_coeff(n, j, &src, &tgt)? * jacobi_eval(j, x, &tgt))))?;
    Ok(vec![(jacobi_eval(n, x, &src), rhs)])
}

fn conn_inverse<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (src, tgt) = (jp(&v[0], &v[1]), jp(&v[2], &v[3]));
    (0..=n)
        .map(|j| {
            let s = try_sum(&v[0], (j..=n).map(|k| Ok(conn_coeff(n, k, &src, &tgt)? * conn_coeff(k, j, &tgt, &src)?)))?;
            Ok((s, delta(&v[0], n, j)))
        })
        .collect()
}

fn conn_compose<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (p1, p2, p3) = (jp(&v[0], &v[1]), jp(&v[2], &v[3]), jp(&v[4], &v[5]));
    (0..=n)
        .map(|j| {
            let s = try_sum(&v[0], (j..=n).map(|k| Ok(conn_coeff(n, k, &p1, &p2)? * conn_coeff(k, j, &p2, &p3)?)))?;
            Ok((s, conn_coeff(n, j, &p1, &p3)?))
        })
        .collect()
}

fn conn_parity<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (a, b) = (&v[0], &v[1]);
    (0..=n)
        .filter(|j| (n - j) % 2 == 1)
        .map(|j| Ok((conn_coeff(n, j, &jp(a, a), &jp(b, b))?, a.zero_like())))
        .collect()
}

fn conn_reflect<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (src, tgt) = (jp(&v[0], &v[1]), jp(&v[2], &v[3]));
    (0..=n)
        .map(|j| {
            let flipped = conn_coeff(n, j, &src.swapped(), &tgt.swapped())?;
            Ok((conn_coeff(n, j, &src, &tgt)?, signed(flipped, (n - j) % 2 == 1)))
        })
        .collect()
}

fn reflect<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, p) = (&v[0], jp(&v[1], &v[2]));
    Ok(vec![(jacobi_eval(n, &(-x.clone()), &p.swapped()), signed(jacobi_eval(n, x, &p), n % 2 == 1))])
}

fn lemma_even<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, a) = (&v[0], &v[1]);
    let t = x.lift_int(2) * x.clone() * x.clone() - x.one_like();
    let c = dv(fact(x, n) * rising(&(a.clone() + x.lift_int(n as i64)), n), &fact(x, 2 * n))?;
    Ok(vec![(jacobi_eval(2 * n, x, &jp(a, a)), c * jacobi_eval(n, &t, &jp(&half(x, 1), a)))])
}

fn lemma_odd<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, a) = (&v[0], &v[1]);
    let t = x.lift_int(2) * x.clone() * x.clone() - x.one_like();
    let c = dv(fact(x, n) * rising(&(a.clone() + x.lift_int(n as i64)), n + 1), &fact(x, 2 * n + 1))?;
    Ok(vec![(jacobi_eval(2 * n + 1, x, &jp(a, a)), c * x.clone() * jacobi_eval(n, &t, &jp(&half(x, 3), a)))])
}

fn special_t<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    Ok(vec![(chebyshev_t(n, &v[0]), chebyshev_t_via_jacobi(n, &v[0]))])
}

fn special_u<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    Ok(vec![(chebyshev_u(n, &v[0]), chebyshev_u_via_jacobi(n, &v[0]))])
}

fn special_legendre<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let one = v[0].one_like();
    Ok(vec![(legendre(n, &v[0]), jacobi_eval(n, &v[0], &jp(&one, &one)))])
}

fn special_gegenbauer<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    Ok(vec![(gegenbauer(n, &v[0], &v[1]), gegenbauer_via_jacobi(n, &v[0], &v[1])?)])
}

fn ccon_pairs<S: Scalar>(case: CconCase, n: usize, v: &[S]) -> Pairs<S> {
    let (a, b) = match (case.uses_a(), case.uses_b()) {
        (true, true) => (&v[0], &v[1]),
        (true, false) => (&v[0], &v[0]),
        _ => (&v[0], &v[0]),
    };
    (0..=n).map(|j| Ok((ccon_closed(case, n, j, a, b)?, ccon_generic(case, n, j, a, b)?))).collect()
}

fn bc<S: Scalar>(like: &S, n: usize, j: usize) -> S {
    like.lift(&binomial_rat(n, j as i64))
}

fn r<S: Scalar>(base: &S, shift: i64, len: usize) -> S {
    rising(&(base.clone() + base.lift_int(shift)), len)
}

fn upr_x_y<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y) = (&v[0], &v[1]);
    let xy = x.clone() + y.clone();
    let y2 = y.lift_int(2) * y.clone();
    let ni = n as i64;
    let lhs = sum(x, (0..=n).map(|j| {
        let t = bc(x, n, j) * r(&xy, ni - 1, n - j) * r(x, (n - j) as i64, j) * r(&y2, (n - j) as i64, j) * r(y, 0, n - j);
        signed(t, (n - j) % 2 == 1)
    }));
    Ok(vec![(lhs, r(&(x.clone() - y.clone()), 0, n) * r(y, 0, n))])
}

fn upr_y_x<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y) = (&v[0], &v[1]);
    let xy = x.clone() + y.clone();
    let y2 = y.lift_int(2) * y.clone();
    let lhs = sum(x, (0..=n).map(|j| {
        let ji = j as i64;
        let t = bc(x, n, j) * r(&y2, n as i64 - 1, j) * r(y, ji, n - j) * r(x, 0, j) * r(&xy, ji, n - j);
        signed(t, j % 2 == 1)
    }));
    Ok(vec![(lhs, r(&(y.clone() - x.clone()), 0, n) * r(y, 0, n))])
}

fn upr_001<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (a, b) = (&v[0], &v[1]);
    let (ab, b2) = (a.clone() + b.clone(), b.lift_int(2) * b.clone());
    let (ba, amb) = (b.clone() - a.clone(), a.clone() - b.clone());
    let total = try_sum(a, (0..=n).map(|j| {
        let ji = j as i64;
        let num = bc(a, n, j) * r(&b2, n as i64 - 1, j) * r(&ba, 0, n - j) * r(&amb, 0, j) * (ab.clone() + a.lift_int(2 * ji - 1));
        dv(num, &(r(&ab, ji - 1, n + 1) * r(&b2, 0, j)))
    }))?;
    zero_sum(a, total)
}

fn upr_002<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (a, b) = (&v[0], &v[1]);
    let (ab, b2) = (a.clone() + b.clone(), b.lift_int(2) * b.clone());
    let (ba, amb) = (b.clone() - a.clone(), a.clone() - b.clone());
    let total = try_sum(a, (0..=n).map(|j| {
        let ji = j as i64;
        let num = bc(a, n, j) * r(&ab, n as i64 - 1, j) * r(&amb, 0, n - j) * r(&ba, 0, j) * (b2.clone() + a.lift_int(2 * ji - 1));
        dv(num, &(r(&b2, ji - 1, n + 1) * r(&ab, 0, j)))
    }))?;
    zero_sum(a, total)
}

fn upr_dd1<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y) = (&v[0], &v[1]);
    let (x2, y2) = (x.lift_int(2) * x.clone(), y.lift_int(2) * y.clone());
    let m = 2 * n;
    let lhs = sum(x, (0..=m).map(|j| {
        let ji = j as i64;
        let t = bc(x, m, j) * r(x, ji, m - j) * r(&x2, m as i64 - 1, j) * r(y, 0, j) * r(&y2, ji, m - j);
        signed(t, j % 2 == 1)
    }));
    let c = dv(fact(x, m), &fact(x, n))?;
    Ok(vec![(lhs, c * r(&(x.clone() - y.clone()), 0, n) * r(y, 0, n) * r(x, n as i64, n))])
}

fn upr_dd2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y) = (&v[0], &v[1]);
    let (x2, y2) = (x.lift_int(2) * x.clone(), y.lift_int(2) * y.clone());
    let m = 2 * n + 1;
    let total = sum(x, (0..=m).map(|j| {
        let ji = j as i64;
        let t = bc(x, m, j) * r(&x2, 2 * n as i64, j) * r(x, ji, m - j) * r(y, 0, j) * r(&y2, ji, m - j);
        signed(t, j % 2 == 1)
    }));
    zero_sum(x, total)
}

fn upr_aaababaa<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y) = (&v[0], &v[1]);
    let (xy, y2) = (x.clone() + y.clone(), y.lift_int(2) * y.clone());
    let (xmy, ymx) = (x.clone() - y.clone(), y.clone() - x.clone());
    let total = try_sum(x, (0..=n).map(|s| {
        let si = s as i64;
        let num = bc(x, n, s) * r(&xmy, 0, n - s) * r(&ymx, 0, s) * r(&xy, n as i64 - 1, s);
        dv(num, &(r(&xy, 0, s) * r(&y2, si - 1, s) * r(&y2, 2 * si, n - s)))
    }))?;
    zero_sum(x, total)
}

fn upr_aabbbbaa<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y) = (&v[0], &v[1]);
    let (xmy, ymx) = (x.clone() - y.clone(), y.clone() - x.clone());
    let h = half(x, 1);
    let total = try_sum(x, (0..=n).map(|s| {
        let si = s as i64;
        let num = bc(x, n, s) * r(&ymx, 0, s) * r(&xmy, 0, n - s) * r(&(x.clone() - h.clone()), n as i64, s);
        let den = r(&(x.clone() + h.clone()), 0, s) * r(&(y.clone() - h.clone()), si, s) * r(&(y.clone() + h.clone()), 2 * si, n - s);
        dv(num, &den)
    }))?;
    zero_sum(x, total)
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out = vec![
        exact("jacobi.inverse.odwr", "expansion triangle times its inverse is the identity", shapes(&["a", "b"]), exact_body!(|n, v| odwr(n, v)).from(0)),
        exact("jacobi.inverse.odw2", "inverse triangle times expansion triangle is the identity", shapes(&["a", "b"]), exact_body!(|n, v| odw2(n, v)).from(0)),
        exact("jacobi.inverse.dnj2", "two closed forms of the inverse triangle agree", shapes(&["a", "b"]), exact_body!(|n, v| dnj2(n, v)).from(0)),
        exact(
            "jacobi.conn.expand",
            "J_n(x|a,b) expanded in J_j(x|c,d) with the generic connection coefficients",
            [vec![var("x", Domain::Rational)], shapes(&["a", "b", "c", "d"])].concat(),
            exact_body!(|n, v| conn_expand(n, v)).from(0).budget(CONN_BUDGET),
        ),
        exact("jacobi.conn.inverse", "connection matrices in opposite directions are inverse", shapes(&["a", "b", "c", "d"]), exact_body!(|n, v| conn_inverse(n, v)).from(0).budget(CONN_BUDGET)),
        exact("jacobi.conn.compose", "connection matrices compose through an intermediate family", shapes(&["a", "b", "c", "d", "e", "f"]), exact_body!(|n, v| conn_compose(n, v)).from(0).budget(CONN_BUDGET)),
        exact("jacobi.conn.parity", "symmetric-to-symmetric coefficients vanish for odd n-j", shapes(&["a", "b"]), exact_body!(|n, v| conn_parity(n, v))),
        exact("jacobi.conn.reflect", "swapping both parameter pairs flips the sign of odd n-j", shapes(&["a", "b", "c", "d"]), exact_body!(|n, v| conn_reflect(n, v)).from(0).budget(CONN_BUDGET)),
        exact("jacobi.reflect", "J_n(-x|b,a) = (-1)^n J_n(x|a,b)", free(&["x", "a", "b"]), exact_body!(|n, v| reflect(n, v)).from(0)),
        exact("jacobi.lemma.even", "even symmetric Jacobi polynomials through the quadratic map 2x^2-1", free(&["x", "a"]), exact_body!(|n, v| lemma_even(n, v)).from(0)),
        exact("jacobi.lemma.odd", "odd symmetric Jacobi polynomials through the quadratic map 2x^2-1", free(&["x", "a"]), exact_body!(|n, v| lemma_odd(n, v)).from(0)),
        exact("jacobi.special.chebyshev_t", "Chebyshev T as the (1/2,1/2) Jacobi family", free(&["x"]), exact_body!(|n, v| special_t(n, v)).from(0)),
        exact("jacobi.special.chebyshev_u", "Chebyshev U as the (3/2,3/2) Jacobi family", free(&["x"]), exact_body!(|n, v| special_u(n, v)).from(0)),
        exact("jacobi.special.legendre", "Legendre as the (1,1) Jacobi family", free(&["x"]), exact_body!(|n, v| special_legendre(n, v)).from(0)),
        exact(
            "jacobi.special.gegenbauer",
            "Gegenbauer as the (lambda+1/2, lambda+1/2) Jacobi family",
            vec![var("x", Domain::Rational), var("lambda", Domain::Shape)],
            exact_body!(|n, v| special_gegenbauer(n, v)).from(0),
        ),
        exact("jacobi.upr.x_y", "two-parameter Pochhammer sum equal to (x-y)^(n) y^(n)", free(&["x", "y"]), exact_body!(|n, v| upr_x_y(n, v))),
        exact("jacobi.upr.y_x", "two-parameter Pochhammer sum equal to (y-x)^(n) y^(n)", free(&["x", "y"]), exact_body!(|n, v| upr_y_x(n, v))),
        exact("jacobi.upr.i001", "vanishing sum from composing (a,b) -> (b,b) -> (a,b)", shapes(&["a", "b"]), exact_body!(|n, v| upr_001(n, v))),
        exact("jacobi.upr.i002", "vanishing sum from composing (b,b) -> (a,b) -> (b,b)", shapes(&["a", "b"]), exact_body!(|n, v| upr_002(n, v))),
        exact("jacobi.upr.dd1", "even-length alternating sum with closed value", free(&["x", "y"]), exact_body!(|n, v| upr_dd1(n, v))),
        exact("jacobi.upr.dd2", "odd-length alternating sum vanishing", free(&["x", "y"]), exact_body!(|n, v| upr_dd2(n, v)).from(0)),
        exact("jacobi.upr.aaababaa", "vanishing sum from (x,x) -> (y,y) -> (x,x)", shapes(&["x", "y"]), exact_body!(|n, v| upr_aaababaa(n, v))),
        exact("jacobi.upr.aabbbbaa", "vanishing sum from (x,1/2) -> (y,1/2) and back", shapes(&["x", "y"]), exact_body!(|n, v| upr_aabbbbaa(n, v))),
    ];
    for case in CconCase::ALL {
        let names: Vec<&'static str> = match (case.uses_a(), case.uses_b()) {
            (true, true) => vec!["a", "b"],
            (true, false) => vec!["a"],
            _ => vec!["b"],
        };
        let id: &'static str = Box::leak(format!("jacobi.ccon.{}", case.name()).into_boxed_str());
        out.push(exact(
            id,
            "closed-form special coefficient against the generic connection formula",
            shapes(&names),
            exact_body!(|n, v| ccon_pairs(case, n, v)).from(0),
        ));
    }
    let points = vec!["-0.4", "0.2"];
    out.push(expansion("jacobi.density.expansion", "ratio of Jacobi densities h(x|a,b)/h(x|c,d) expanded in J_n(x|a,b)", (1, 1), (2, 3), points.clone(), None, None));
    for order in [CoefficientOrder::AbCd, CoefficientOrder::CdAb] {
        let id: &'static str = Box::leak(format!("jacobi.density.expansion.{}", order.label()).into_boxed_str());
        out.push(expansion(
            id,
            "density-ratio expansion under a single coefficient convention",
            (1, 1),
            (2, 3),
            points.clone(),
            Some(order),
            Some("jacobi.density.expansion."),
        ));
    }
    out
}
