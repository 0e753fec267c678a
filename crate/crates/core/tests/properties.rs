use proptest::prelude::*;

use qorth::awfamilies::{asc_eval, qhermite_eval, rogers_eval, AscParams};
use qorth::jacobi::{chebyshev_u, conn_coeff, e_matrix, etilde_matrix, jacobi_eval, JacobiParams};
use qorth::numerics::{rat, BigReal, ExactRational, RationalSampler, Scalar};
use qorth::pochhammer::{binomial_rat, falling, rising};
use qorth::qkernel::{kernel_l, kernel_w, q_binomial, q_factorial, q_poch};

fn small() -> impl Strategy<Value = ExactRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, d)| rat(p, d).unwrap())
}

fn nonzero() -> impl Strategy<Value = ExactRational> {
    small().prop_filter("nonzero", |r| !r.is_zero())
}

fn int(n: i64) -> ExactRational {
    ExactRational::from(n)
}

fn sign(n: usize) -> ExactRational {
    int(if n % 2 == 0 { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in small(), b in small(), c in small()) {
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a + &(-a.clone()), ExactRational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), ExactRational::one());
        }
    }

    #[test]
    fn real_conversion_error_shrinks_with_precision(r in small(), p1 in 53u32..200, extra in 1u32..200) {
        let p2 = p1 + extra;
        let lo = BigReal::from_rational(&r, p1).with_precision(p2);
        let hi = BigReal::from_rational(&r, p2);
        let bound = BigReal::pow2(2 - p1 as i64, p2) * BigReal::from_rational(&r.abs(), p2);
        prop_assert!((lo - hi).abs() <= bound);
    }

    #[test]
    fn sampler_is_deterministic(seed in any::<u64>(), count in 1usize..40) {
        let s = RationalSampler::new(seed).with_bounds(9, 7);
        prop_assert_eq!(s.sample(count).unwrap(), s.sample(count).unwrap());
        for r in s.sample(count).unwrap() {
            prop_assert!(r.numer().magnitude() <= &9u32.into());
            prop_assert!(r.denom() <= &7.into());
        }
    }

    #[test]
    fn vandermonde(x in small(), y in small(), n in 0usize..=12) {
        let sum = |f: fn(&ExactRational, usize) -> ExactRational| {
            (0..=n).fold(ExactRational::zero(), |acc, k| {
                acc + binomial_rat(n, k as i64) * f(&x, k) * f(&y, n - k)
            })
        };
        prop_assert_eq!(rising(&(&x + &y), n), sum(rising));
        prop_assert_eq!(falling(&(&x + &y), n), sum(falling));
    }

    #[test]
    fn rising_shift_laws(x in small(), j in 0usize..8, m in 0usize..8) {
        prop_assert_eq!(rising(&x, j + m), rising(&x, j) * rising(&(&x + &int(j as i64)), m));
        let xj = &x + &int(j as i64);
        prop_assume!(!xj.is_zero());
        let n = j + m;
        let left = rising(&x, j) * rising(&(&xj + &int(1)), n - j);
        prop_assert_eq!(left, rising(&x, n + 1).checked_div(&xj).unwrap());
    }

    #[test]
    fn falling_of_negation(a in small(), n in 0usize..=12) {
        prop_assert_eq!(falling(&(-a.clone()), n) * sign(n), rising(&a, n));
    }

    #[test]
    fn binomial_pascal(n in 1usize..40, k in 1i64..40) {
        prop_assert_eq!(binomial_rat(n, k), binomial_rat(n - 1, k) + binomial_rat(n - 1, k - 1));
    }

    #[test]
    fn q_binomial_pascal(q in nonzero(), n in 1usize..14, k in 1i64..14) {
        let left = q_binomial(n, k, &q);
        let right = q_binomial(n - 1, k - 1, &q) + q.pow_u(k as usize) * q_binomial(n - 1, k, &q);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn q_poch_of_q(q in small(), n in 0usize..=12) {
        let one_minus = &int(1) - &q;
        prop_assert_eq!(q_poch(&q, &q, n), one_minus.pow_u(n) * q_factorial(n, &q));
    }

    #[test]
    fn finite_euler(t in small(), q in small(), n in 0usize..=12) {
        let sum = (0..=n).fold(ExactRational::zero(), |acc, j| {
            acc + q_binomial(n, j as i64, &q) * q.pow_u(j * j.saturating_sub(1) / 2) * (-t.clone()).pow_u(j)
        });
        prop_assert_eq!(q_poch(&t, &q, n), sum);
    }

    #[test]
    fn jacobi_reflection(x in small(), a in small(), b in small(), n in 0usize..=10) {
        let p = JacobiParams::new(a, b);
        let left = sign(n) * jacobi_eval(n, &x, &p);
        prop_assert_eq!(left, jacobi_eval(n, &(-x.clone()), &p.swapped()));
    }

    #[test]
    fn connection_sign_reflection(
        a in small(), b in small(), c in small(), d in small(), n in 0usize..=8, j in 0usize..=8
    ) {
        prop_assume!(j <= n);
        let src = JacobiParams::new(a, b);
        let tgt = JacobiParams::new(c, d);
        if let (Ok(left), Ok(right)) =
            (conn_coeff(n, j, &src, &tgt), conn_coeff(n, j, &src.swapped(), &tgt.swapped()))
        {
            prop_assert_eq!(left, sign(n - j) * right);
        }
    }

    #[test]
    fn expansion_matrices_are_inverse(a in small(), b in small()) {
        let p = JacobiParams::new(a, b);
        if let Ok(inv) = etilde_matrix(12, &p) {
            let e = e_matrix(12, &p).unwrap();
            prop_assert!(e.mul(&inv).is_identity());
            prop_assert!(inv.mul(&e).is_identity());
        }
    }

    #[test]
    fn parity(x in small(), y in small(), rho in small(), beta in small(), q in small(), n in 0usize..=8) {
        let mx = -x.clone();
        prop_assert_eq!(qhermite_eval(n, &mx, &q), sign(n) * qhermite_eval(n, &x, &q));
        prop_assert_eq!(chebyshev_u(n, &mx), sign(n) * chebyshev_u(n, &x));
        if let (Ok(neg), Ok(pos)) = (rogers_eval(n, &mx, &beta, &q), rogers_eval(n, &x, &beta, &q)) {
            prop_assert_eq!(neg, sign(n) * pos);
        }
        let here = AscParams::new(y.clone(), rho.clone(), q.clone());
        let there = AscParams::new(-y, rho, q);
        prop_assert_eq!(asc_eval(n, &mx, &there), sign(n) * asc_eval(n, &x, &here));
    }

    #[test]
    fn kernel_relations(x in small(), a in small()) {
        let one_minus = &int(1) - &a;
        prop_assert_eq!(kernel_w(&x, &x, &a), &one_minus * &one_minus * kernel_l(&x, &a));
        prop_assert_eq!(kernel_l(&int(1), &a), &one_minus * &one_minus);
    }
}
