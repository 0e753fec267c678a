use super::util::{c2, signed, sum, zero_sum, Pairs};
use super::{exact, free, with_base};
use crate::exact_body;
use crate::numerics::Scalar;
use crate::qkernel::{kernel_factorization, q_binomial_row, q_poch, shift_sides, KernelProduct, ShiftId, ShiftParams};
use crate::registry::record::NLimit;
use crate::registry::IdentityRecord;

fn finite_zero<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let q = &v[0];
    let row = q_binomial_row(n, q);
    let total = sum(q, row.into_iter().enumerate().map(|(j, b)| signed(b * q.pow_u(c2(j)), j % 2 == 1)));
    zero_sum(q, total)
}

fn obin_finite<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (t, q) = (&v[0], &v[1]);
    let row = q_binomial_row(n, q);
    let rhs = sum(t, row.into_iter().enumerate().map(|(j, b)| b * q.pow_u(c2(j)) * (-t.clone()).pow_u(j)));
    Ok(vec![(q_poch(t, q, n), rhs)])
}

fn shift<S: Scalar>(id: ShiftId, n: usize, v: &[S]) -> Pairs<S> {
    // s3 and s4 do not involve k
    let ks = if matches!(id, ShiftId::S3 | ShiftId::S4) { 0 } else { n };
    (0..=ks).map(|k| shift_sides(id, &ShiftParams { a: v[0].clone(), q: v[1].clone(), n, k })).collect()
}

fn kernel<S: Scalar>(which: KernelProduct, n: usize, v: &[S]) -> Pairs<S> {
    let (x, y, a, q) = match which {
        KernelProduct::W => (&v[0], &v[1], &v[2], &v[3]),
        _ => (&v[0], &v[0], &v[1], &v[2]),
    };
    Ok(kernel_factorization(which, n, x, y, a, q))
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out = vec![
        exact(
            "q.euler.finite_zero",
            "alternating q-binomial sum with q^C(j,2) weights vanishes",
            with_base(vec![]),
            exact_body!(|n, v| finite_zero(n, v)).limit(NLimit::Double),
        ),
        exact(
            "q.euler.obinT_finite",
            "finite q-binomial theorem for (t)_n",
            with_base(free(&["t"])),
            exact_body!(|n, v| obin_finite(n, v)).from(0),
        ),
    ];
    let shifts = [
        (ShiftId::S1, "q.shift.s1", "(a)_{n+k} = (a)_n (aq^n)_k"),
        (ShiftId::S2, "q.shift.s2", "(aq^n)_k/(aq^k)_n = (a)_k/(a)_n"),
        (ShiftId::S3, "q.shift.s3", "(a^2|q^2)_n = (a)_n (-a)_n"),
        (ShiftId::S4, "q.shift.s4", "(a)_{2n} = (a|q^2)_n (aq|q^2)_n"),
        (ShiftId::Knk1, "q.shift.knk1", "split of (aq^{k-1})_k (aq^{2k})_{n-k}"),
        (ShiftId::Knk2, "q.shift.knk2", "split of (a)_k (aq^{n+k-1})_{n-k}"),
    ];
    for (id, name, anchor) in shifts {
        let n_min = if id == ShiftId::Knk2 { 1 } else { 0 };
        out.push(exact(
            name,
            anchor,
            with_base(free(&["a"])),
            exact_body!(|n, v| shift(id, n, v)).from(n_min).limit(NLimit::Plus(2)),
        ));
    }
    let kernels = [
        (KernelProduct::V, "q.kernel.rozklv", "product of v(x|aq^k) against its exponential factorization", free(&["x", "a"])),
        (KernelProduct::W, "q.kernel.rozklw", "product of w(x,y|aq^k) against its exponential factorization", free(&["x", "y", "a"])),
        (KernelProduct::L, "q.kernel.rozkll", "product of l(x|aq^k) against its exponential factorization", free(&["x", "a"])),
    ];
    for (which, name, anchor, vars) in kernels {
        out.push(exact(name, anchor, with_base(vars), exact_body!(|n, v| kernel(which, n, v))));
    }
    out
}
