use proptest::prelude::*;

use stcmac::geometry::Coverage;
use stcmac::simulator::{brute_force_resolve, collision_window_resolve, simulate_trace, SimConfig};
use stcmac::stmodel::{cfr_set, dir_intervals, segments, Interval, ScenarioConfig};
use stcmac::{analyze, WeightingMode};

fn coverage() -> impl Strategy<Value = Coverage> {
    (1.0f64..2000.0, prop_oneof![Just(1.0), 1.0f64..2.0]).prop_map(|(r, a)| Coverage::from_alpha(r, a).unwrap())
}

fn mode() -> impl Strategy<Value = WeightingMode> {
    prop_oneof![Just(WeightingMode::LinkPdf), Just(WeightingMode::Radial)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cfr_of_one_is_dir_of_swapped(cov in coverage(), v in 1.0f64..2000.0, fa in 0.02f64..2.0, fb in 0.02f64..2.0, u in 0.0f64..=1.0) {
        let tau = cov.radius() / v;
        let (a, b) = (fa * tau, fb * tau);
        let one = ScenarioConfig::new(a, 0.0, v, cov, 0.0, 2).unwrap().with_guard(b);
        let two = ScenarioConfig::new(b, 0.0, v, cov, 0.0, 2).unwrap().with_guard(a);
        let d = u * one.range();
        let cfr = cfr_set(&one, d).unwrap();
        let mut dir: Vec<Interval> = dir_intervals(&two, d).unwrap().into_iter().filter_map(|(_, iv)| iv).collect();
        dir.sort_by(|p, q| p.lo.total_cmp(&q.lo));
        let tol = 4e-12 * one.range();
        prop_assert_eq!(cfr.len(), dir.len());
        for (p, q) in cfr.iter().zip(&dir) {
            prop_assert!((p.lo - q.lo).abs() <= tol && (p.hi - q.hi).abs() <= tol);
        }
    }

    #[test]
    fn success_prob_is_a_probability(cov in coverage(), tf in 0.05f64..1.5, beta in 0.0f64..2.0, lambda in 0.0f64..2.0, n in 1u32..30, m in mode()) {
        let cfg = ScenarioConfig::new(tf * cov.radius(), beta, 1.0, cov, lambda / cov.radius(), n).unwrap();
        let r = analyze(&cfg, m).unwrap();
        prop_assert!((0.0..=1.0).contains(&r.success_prob));
        let total: f64 = r.segments.iter().map(|s| s.p_k).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        prop_assert_eq!(r.segments.len(), segments(&cfg).len());
        for s in &r.segments {
            prop_assert!(s.p_z_total >= 0.0 && s.p_o_total >= 0.0 && s.p_o_total <= s.p_z_total + 1e-12);
        }
    }

    #[test]
    fn more_traffic_never_helps(tf in 0.05f64..1.5, beta in 0.0f64..2.0, lambda in 0.01f64..1.0, n in 2u32..20, m in mode()) {
        let cfg = ScenarioConfig::normalized(tf, beta, 1.0).unwrap().with_arrival_rate(lambda).with_nodes(n);
        let base = analyze(&cfg, m).unwrap().success_prob;
        prop_assert!(analyze(&cfg.with_arrival_rate(1.5 * lambda), m).unwrap().success_prob <= base + 1e-12);
        prop_assert!(analyze(&cfg.with_nodes(n + 1), m).unwrap().success_prob <= base + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn windowed_resolution_is_lossless(seed in any::<u64>(), n in 2u32..=5, tf in 0.1f64..1.5, beta in 0.0f64..1.5, alpha in prop_oneof![Just(1.0), Just(1.5)], lambda in 0.1f64..1.5) {
        let cfg = ScenarioConfig::new(tf, beta, 1500.0, Coverage::from_alpha(1500.0, alpha).unwrap(), lambda, n).unwrap();
        let trace = simulate_trace(&SimConfig::new(cfg, 200, seed).with_warmup(0), 0);
        prop_assert_eq!(collision_window_resolve(&trace, &cfg), brute_force_resolve(&trace, &cfg));
    }
}
