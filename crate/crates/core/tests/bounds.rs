use ddc_core::bdc::{frak_l1_iud, frak_l1_markov1, l2_iud, li_iud, prop1_bounds, sup_l2_markov1};
use ddc_core::optimize::ScalarSearch;
use ddc_core::sticky::{constant_d, sticky_lower_bound, sticky_markov1_rate, sup_sticky_markov1};
use ddc_core::{ChannelParams, SeriesSpec};
use proptest::prelude::*;

#[test]
fn markov1_gains_are_nonnegative_and_small() {
    let s = SeriesSpec::default();
    let search = ScalarSearch::default();
    for p in [0.01, 0.05, 0.1, 0.2] {
        let iud = l2_iud(p, &s).unwrap().value;
        let (m1, _) = sup_l2_markov1(p, &s, &search).unwrap();
        let gain = m1.value - iud;
        assert!((0.0..0.01).contains(&gain), "L2 p={p} gain={gain}");
        let gain =
            frak_l1_markov1(p, 512, &search).unwrap().value - frak_l1_iud(p, 512).unwrap().value;
        assert!((0.0..0.01).contains(&gain), "frakL1 p={p} gain={gain}");
    }
}

#[test]
fn ladder_through_li() {
    let s = SeriesSpec::with_tol(1e-12);
    for p in [0.02, 0.1, 0.25] {
        let l: Vec<_> = (1..=3).map(|i| li_iud(p, i, &s).unwrap()).collect();
        for w in l.windows(2) {
            assert!(w[1].value + 1e-12 >= w[0].value, "p={p}");
        }
    }
}

#[test]
fn curves_are_bounded_and_continuous() {
    let s = SeriesSpec::default();
    let grid: Vec<f64> = (1..=99).map(|k| k as f64 / 100.0).collect();
    let l2: Vec<f64> = grid
        .iter()
        .map(|&p| l2_iud(p, &s).unwrap().clamped())
        .collect();
    let l1: Vec<f64> = grid
        .iter()
        .map(|&p| frak_l1_iud(p, 512).unwrap().value.max(0.0))
        .collect();
    for curve in [&l2, &l1] {
        assert!(curve.iter().all(|v| (0.0..=1.0).contains(v)));
        // steepest slope is at the small-p end, where it is about |log2 p|
        assert!(curve.windows(2).all(|w| (w[1] - w[0]).abs() < 0.1));
    }
    for (k, &p) in grid.iter().enumerate() {
        assert!(l2[k] <= prop1_bounds(&ChannelParams::bdc(p).unwrap()).upper);
    }
}

#[test]
fn sticky_small_p_remainder() {
    let search = ScalarSearch::default();
    let s = SeriesSpec::default();
    for p in [1e-3f64, 1e-2] {
        let expansion = 1.0 + p * p.log2() + constant_d() * p;
        let (v, _) = sup_sticky_markov1(p, &s, &search).unwrap();
        assert!(
            (v.value - expansion).abs() <= 25.0 * p * p,
            "p={p} {}",
            v.value
        );
        let lb = sticky_lower_bound(p, 512, &search).unwrap();
        assert!(lb.value <= v.value + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sticky_rate_in_unit_interval(p in 0.0f64..0.95, alpha in 0.05f64..0.95) {
        let v = sticky_markov1_rate(p, alpha, &SeriesSpec::default()).unwrap();
        prop_assert!(v.value >= -1e-12 && v.value <= 1.0 + 1e-12);
    }

    #[test]
    fn l2_between_weak_bound_and_upper(p in 0.0f64..0.99) {
        let v = l2_iud(p, &SeriesSpec::default()).unwrap();
        let weak = li_iud(p, 1, &SeriesSpec::default()).unwrap().value;
        prop_assert!(v.value + 1e-12 >= weak);
        prop_assert!(v.clamped() <= 1.0 - p + 1e-12);
    }
}
