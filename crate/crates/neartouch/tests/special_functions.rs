use neartouch::harness::verify::expansion_order;
use neartouch::specfun::{
    bessel_jy_array, hankel_derivative_defect, recurrence_defect, wronskian_defect,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn wronskian_holds(log_x in (1e-3f64).ln()..(50f64).ln(), n in 0usize..=64) {
        let d = wronskian_defect(n, log_x.exp()).unwrap();
        prop_assert!(d <= 1e-10, "defect {d:e}");
    }

    #[test]
    fn recurrence_holds_for_both_kinds(log_x in (1e-3f64).ln()..(50f64).ln(), n in 1usize..=64) {
        let (dj, dy) = recurrence_defect(n, log_x.exp()).unwrap();
        prop_assert!(dj <= 1e-9 && dy <= 1e-9, "J {dj:e}, Y {dy:e}");
    }

    #[test]
    fn hankel_derivative_matches_differences(x in 0.5f64..50.0, n in 1usize..=10) {
        let d = hankel_derivative_defect(n, x, 2e-6 * x).unwrap();
        prop_assert!(d <= 1e-7, "defect {d:e}");
    }

    #[test]
    fn first_kind_is_bounded(x in 1e-3f64..50.0) {
        let (j, _) = bessel_jy_array(64, x).unwrap();
        prop_assert!(j.iter().all(|v| v.abs() <= 1.0));
    }
}

#[test]
fn expansion_converges_at_the_stated_order() {
    for terms in 0..=3 {
        let order = expansion_order(terms).unwrap();
        let want = (2 * terms + 2) as f64;
        assert!(order >= want - 0.05, "J = {terms}: order {order}");
    }
}
