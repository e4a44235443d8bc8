mod common;

use proptest::prelude::*;

use pqbbh_core::pq::{ln_pq_binomial, DIRECT_PRODUCT_LIMIT};
use pqbbh_core::{euler_expansion, pochhammer_ell, pq_binomial, pq_integer, PqParams};

fn params() -> impl Strategy<Value = PqParams> {
    prop_oneof![
        1 => Just(PqParams::classical()),
        1 => (0.05f64..=1.0).prop_map(|p| PqParams::limit(p).unwrap()),
        6 => (0.05f64..=1.0, 0.01f64..0.999).prop_map(|(p, r)| PqParams::new(p, p * r).unwrap()),
    ]
}

proptest! {
    #[test]
    fn integer_matches_geometric_sum(pr in params(), n in 0u32..200) {
        let want = common::geo_integer(n, pr.p(), pr.q());
        let got = pq_integer(n, &pr);
        prop_assert!(common::rel_err(got, want) <= 1e-13, "{got} vs {want}");
    }

    #[test]
    fn integer_is_bounded_by_n(pr in params(), n in 0u32..400) {
        let v = pq_integer(n, &pr);
        prop_assert!(v >= 0.0);
        prop_assert!(v <= n as f64 * (1.0 + 1e-15));
    }

    #[test]
    fn q_reduction(q in 0.01f64..0.999, n in 0u32..120) {
        let want = (1.0 - q.powi(n as i32)) / (1.0 - q);
        prop_assert!(common::rel_err(pq_integer(n, &PqParams::new(1.0, q).unwrap()), want) <= 1e-14);
    }

    #[test]
    fn shift_and_split_relations(pr in params(), n in 1u32..=120, k_frac in 0.0f64..=1.0) {
        let (p, q) = (pr.p(), pr.q());
        let k = (k_frac * n as f64).round() as u32;
        let b = |m: u32| pq_integer(m, &pr);
        let shift = q.powi(k as i32) * b(n - k + 1) - (b(n + 1) - p.powi((n - k + 1) as i32) * b(k));
        prop_assert!(shift.abs() <= 1e-12);
        if k >= 1 {
            prop_assert!((b(k) - p.powi(k as i32 - 1) - q * b(k - 1)).abs() <= 1e-12);
            prop_assert!((b(k) * b(k) - q * b(k) * b(k - 1) - p.powi(k as i32 - 1) * b(k)).abs() <= 1e-12);
        }
        if k < n {
            prop_assert!((b(k + 1) * b(n - k + 1) - p * q * b(k) * b(n - k) - b(n + 1)).abs() <= 1e-12);
        }
    }

    #[test]
    fn binomial_matches_pascal(p in 0.5f64..=1.0, r in 0.3f64..=1.0, n in 0u32..40) {
        let pr = PqParams::with_limit(p, p * r).unwrap();
        let row = common::pascal(n, pr.p(), pr.q()).pop().unwrap();
        for k in 0..=n {
            let got = pq_binomial(n, k, &pr).unwrap();
            prop_assert!(common::rel_err(got, row[k as usize]) <= 1e-12, "k = {k}: {got} vs {}", row[k as usize]);
        }
    }

    #[test]
    fn binomial_symmetry_in_log_space(pr in params(), n in 0u32..400) {
        for k in 0..=n {
            let a = ln_pq_binomial(n, k, &pr).unwrap();
            let b = ln_pq_binomial(n, n - k, &pr).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn log_switch_is_continuous(pr in params()) {
        // Both sides of the direct/log boundary agree with the Pascal-free product.
        let n = DIRECT_PRODUCT_LIMIT + 1;
        let k = 3;
        let direct: f64 = (1..=k).map(|i| pq_integer(n - k + i, &pr).ln() - pq_integer(i, &pr).ln()).sum();
        let got = ln_pq_binomial(n, k, &pr).unwrap();
        prop_assert!((got - direct).abs() <= 1e-11 * (1.0 + direct.abs()));
    }

    #[test]
    fn euler_expansion_matches_product(pr in params(), n in 0u32..=50, x in 0.0f64..100.0) {
        let want: f64 = (0..n).map(|s| pr.p().powi(s as i32) + pr.q().powi(s as i32) * x).product();
        prop_assume!(want.is_normal());
        prop_assert!(common::rel_err(pochhammer_ell(n, x, &pr), want) <= 1e-13);
        prop_assert!(common::rel_err(euler_expansion(n, x, &pr).unwrap(), want) <= 1e-11);
    }
}
