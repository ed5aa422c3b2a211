#![allow(clippy::approx_constant)]

use elab_core::exact::{self, ratio};
use elab_core::limits::{compound_exact, compound_x, exponent_bridge};
use elab_core::loginv::{ln, quadrature_log};
use elab_core::odesolve::{euler_final, euler_path_exact};
use elab_core::powcore::{exp_base, int_pow, nth_root, power, PosReal, DEFAULT_DEPTH};
use elab_core::series::{factorial_partial_sum, tail_bound, taylor_cos, taylor_exp, taylor_sin};
use elab_core::slopes::{diff_quotient, slope_enclosure};
use proptest::prelude::*;

fn pr(v: f64) -> PosReal {
    PosReal::new(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nth_root_inverts_int_pow(x in 0.1f64..100.0, n in 1u32..=20) {
        let y = int_pow(pr(x), n as u64).unwrap();
        let back = nth_root(y, n, 1e-12).unwrap().get();
        prop_assert!((back - x).abs() <= 1e-10 * x);
    }

    #[test]
    fn exp_base_encloses_and_orders(a in 1.01f64..10.0, x in -5.0f64..5.0, dx in 1e-3f64..1.0, d in 20u32..=40) {
        let (lo, hi) = (exp_base(pr(a), x, d).unwrap(), exp_base(pr(a), x + dx, d).unwrap());
        prop_assert!(lo.lo() <= hi.lo() && lo.hi() <= hi.hi());
        prop_assert!(lo.contains(power(pr(a), x).unwrap()) || lo.width() == 0.0);
    }

    #[test]
    fn slope_enclosure_contains_ln(a in 1.001f64..1000.0, k in 5u32..=40) {
        prop_assert!(slope_enclosure(pr(a), k).unwrap().interval.contains(ln(a).unwrap()));
    }

    #[test]
    fn forward_quotient_exceeds_backward(a in 1.05f64..10.0, h in 1e-3f64..1.0) {
        prop_assert!(diff_quotient(pr(a), -h).unwrap() < diff_quotient(pr(a), h).unwrap());
    }

    #[test]
    fn euler_exact_equals_compound_exact(p in -20i64..=20, q in 1i64..=7, n in 1u64..=200) {
        let x = ratio(p, q);
        prop_assume!(p + (n as i64) * q > 0);
        let path = euler_path_exact(&x, n).unwrap();
        prop_assert_eq!(path.last().unwrap(), &compound_exact(&x, n).unwrap());
    }

    #[test]
    fn euler_final_matches_compound_x(x in -3.0f64..3.0, n in 10u64..5000) {
        prop_assert_eq!(euler_final(x, n).unwrap(), compound_x(x, n).unwrap());
    }

    #[test]
    fn bridge_sides_agree(x in -5.0f64..5.0, n in 10u64..1_000_000_000) {
        let b = exponent_bridge(x, n).unwrap();
        prop_assert!((b.lhs - b.rhs).abs() <= 16.0 * f64::EPSILON * b.lhs.abs());
    }

    #[test]
    fn log_inverts_exp(v in -20.0f64..20.0) {
        let y = taylor_exp(v, 1e-17).unwrap().partial_sum;
        prop_assert!((ln(y).unwrap() - v).abs() <= 1e-11);
    }

    #[test]
    fn pythagorean(x in -10.0f64..10.0) {
        let (s, c) = (taylor_sin(x, 1e-17).unwrap(), taylor_cos(x, 1e-17).unwrap());
        prop_assert!((s * s + c * c - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn partial_sums_within_tail(m in 1u64..=25) {
        let exact = exact::to_f64(&exact::factorial_partial_sum(60));
        let s = factorial_partial_sum(m).unwrap();
        prop_assert!((exact - s).abs() <= tail_bound(m) + 4.0 * f64::EPSILON);
    }

    #[test]
    fn quadrature_is_odd_in_log(x in 1.1f64..20.0) {
        let (up, down) = (quadrature_log(pr(x), 2000).unwrap(), quadrature_log(pr(1.0 / x), 2000).unwrap());
        prop_assert!((up + down).abs() <= 1e-5 * up);
    }

    #[test]
    fn midpoint_homomorphism(a in 0.2f64..10.0, p in -5.0f64..5.0, q in -5.0f64..5.0) {
        let mid = |x: f64| exp_base(pr(a), x, DEFAULT_DEPTH).unwrap().midpoint();
        prop_assert!((mid(p + q) - mid(p) * mid(q)).abs() <= 1e-9 * mid(p + q));
    }
}
