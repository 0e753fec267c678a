use super::util::{binom, signed, sum, Pairs};
use super::{exact, free};
use crate::exact_body;
use crate::numerics::{ExactRational, Scalar};
use crate::pochhammer::{falling, rising, stirling_table, StirlingKind};
use crate::registry::IdentityRecord;

fn vandermonde_rising<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y) = (&v[0], &v[1]);
    let rhs = sum(x, (0..=n).map(|k| binom(x, n, k) * rising(x, k) * rising(y, n - k)));
    Ok(vec![(rising(&(x.clone() + y.clone()), n), rhs)])
}

fn vandermonde_falling<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (x, y) = (&v[0], &v[1]);
    let rhs = sum(x, (0..=n).map(|k| binom(x, n, k) * falling(x, k) * falling(y, n - k)));
    Ok(vec![(falling(&(x.clone() + y.clone()), n), rhs)])
}

fn table_entry<S: Scalar>(like: &S, kind: StirlingKind, n: usize, k: usize) -> S {
    let big = stirling_table(kind, n).get(n, k);
    like.lift(&ExactRational::from_bigint(big.into()))
}

fn stirling_first<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let x = &v[0];
    let rhs = sum(x, (0..=n).map(|k| signed(table_entry(x, StirlingKind::FirstUnsigned, n, k) * x.pow_u(k), (n - k) % 2 == 1)));
    Ok(vec![(falling(x, n), rhs)])
}

fn stirling_rising<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let x = &v[0];
    let rhs = sum(x, (0..=n).map(|k| table_entry(x, StirlingKind::FirstUnsigned, n, k) * x.pow_u(k)));
    Ok(vec![(rising(x, n), rhs)])
}

fn stirling_second<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let x = &v[0];
    let rhs = sum(x, (0..=n).map(|k| table_entry(x, StirlingKind::Second, n, k) * falling(x, k)));
    Ok(vec![(x.pow_u(n), rhs)])
}

fn rozn<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (a, b) = (&v[0], &v[1]);
    let lhs = sum(a, (0..=n).map(|j| {
        signed(binom(a, n, j) * rising(a, j) * rising(&(b.clone() + a.lift_int(j as i64)), n - j), j % 2 == 1)
    }));
    Ok(vec![(lhs, rising(&(b.clone() - a.clone()), n))])
}

fn rozn2<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (a, b) = (&v[0], &v[1]);
    let shifted = b.clone() + a.lift_int(n as i64 - 1);
    let lhs = sum(a, (0..=n).map(|j| {
        let t = binom(a, n, j) * rising(&shifted, j) * rising(&(a.clone() + a.lift_int(j as i64)), n - j);
        signed(t, (n - j) % 2 == 1)
    }));
    Ok(vec![(lhs, rising(&(b.clone() - a.clone()), n))])
}

fn rozn3<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let (a, b) = (&v[0], &v[1]);
    let lhs = sum(a, (0..=n).map(|j| {
        let t = binom(a, n, j) * rising(b, n - j) * rising(&(a.clone() + a.lift_int(1 - j as i64)), j);
        signed(t, j % 2 == 1)
    }));
    Ok(vec![(lhs, rising(&(b.clone() - a.clone()), n))])
}

/// The `rozn` identity with one added to its right side.
pub(super) fn sabotaged<S: Scalar>(n: usize, v: &[S]) -> Pairs<S> {
    let mut out = rozn(n, v)?;
    out[0].1 = out[0].1.clone() + v[0].one_like();
    Ok(out)
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        exact("poch.vandermonde.rising", "Vandermonde convolution for rising factorials", free(&["x", "y"]), exact_body!(|n, v| vandermonde_rising(n, v)).from(0)),
        exact("poch.vandermonde.falling", "Vandermonde convolution for falling factorials", free(&["x", "y"]), exact_body!(|n, v| vandermonde_falling(n, v)).from(0)),
        exact("poch.stirling.s1", "falling factorial in powers, signed Stirling numbers of the first kind", free(&["x"]), exact_body!(|n, v| stirling_first(n, v)).from(0)),
        exact("poch.stirling.srising", "rising factorial in powers, unsigned Stirling numbers of the first kind", free(&["x"]), exact_body!(|n, v| stirling_rising(n, v)).from(0)),
        exact("poch.stirling.s2", "powers in falling factorials, Stirling numbers of the second kind", free(&["x"]), exact_body!(|n, v| stirling_second(n, v)).from(0)),
        exact("poch.lemma_ab.rozn", "alternating sum of rising factorials collapsing to (b-a)^(n)", free(&["a", "b"]), exact_body!(|n, v| rozn(n, v)).from(0)),
        exact("poch.lemma_ab.rozn2", "second form of the (b-a)^(n) collapse", free(&["a", "b"]), exact_body!(|n, v| rozn2(n, v)).from(0)),
        exact("poch.lemma_ab.rozn3", "third form of the (b-a)^(n) collapse", free(&["a", "b"]), exact_body!(|n, v| rozn3(n, v)).from(0)),
    ]
}
