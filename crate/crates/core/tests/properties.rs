use proptest::prelude::*;

use hypersum::branching::{sibuya_pmf, sibuya_survival, ScaledSibuya};
use hypersum::hypersum::{convergence_check, sum_closed, sum_direct, SumOptions, SumParams};
use hypersum::mc_sim::{simulate_total_progeny, SimConfig};
use hypersum::special_fn::{hyp2f1_series, HypParams};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hyp2f1_symmetric_in_a_and_b(
        a in -3.0..5.0f64,
        b in -3.0..5.0f64,
        c in 0.3..6.0f64,
        x in -0.9..0.9f64,
    ) {
        let p = HypParams::new(a, b, c, x).unwrap();
        let f = hyp2f1_series(&p, 1e-16, 100_000).unwrap().value;
        let g = hyp2f1_series(&p.swapped(), 1e-16, 100_000).unwrap().value;
        prop_assert!((f - g).abs() <= 1e-13 * f.abs().max(1.0));
    }

    #[test]
    fn convergence_region_grows_with_eta(
        eta in 0.001..3.0f64,
        step in 0.0..2.0f64,
        c in 0.3..5.0f64,
        x in -1.0..=1.0f64,
    ) {
        let lo = convergence_check(&SumParams::new(eta, c, x).unwrap());
        let hi = convergence_check(&SumParams::new(eta + step, c, x).unwrap());
        prop_assert!(!lo.convergent || hi.convergent);
    }

    #[test]
    fn direct_matches_closed_well_inside(
        c in 0.6..5.0f64,
        x in 0.0..0.9f64,
        margin in 0.1..2.0f64,
    ) {
        let p = SumParams::new(x.sqrt() + margin, c, x).unwrap();
        let d = sum_direct(&p, &SumOptions::default()).unwrap().value;
        let s = sum_closed(&p).unwrap().value;
        prop_assert!((d - s).abs() <= 1e-11 * s.abs().max(1.0));
    }

    #[test]
    fn sibuya_survival_matches_pmf(alpha in 0.05..0.95f64, lambda in 0.05..1.0f64, k in 1u64..200) {
        let d = ScaledSibuya::new(alpha, lambda).unwrap();
        let head: f64 = (0..=k).map(|j| sibuya_pmf(&d, j)).sum();
        prop_assert!((1.0 - head - sibuya_survival(&d, k)).abs() < 1e-12);
    }

    #[test]
    fn simulation_conserves_replicates(seed in any::<u64>(), n in 1u64..400, workers in 1usize..5) {
        let d = ScaledSibuya::new(0.5, 0.5).unwrap();
        let mut cfg = SimConfig::new(seed, n);
        cfg.workers = workers;
        cfg.progeny_cap = 200;
        let counts = simulate_total_progeny(&d, &cfg).unwrap();
        let tallied: u64 = counts.counts.values().sum();
        prop_assert_eq!(tallied + counts.censored, n);
        prop_assert!(counts.counts.keys().all(|l| *l >= 1 && *l < 200));
    }
}
