//! Property tests for the statistics and index rules.

use proptest::prelude::*;

use reboot_core::armstats::{prss, pseudo_residuals, ArmStats, History};
use reboot_core::policies::{giro_index, phe_index, reboot_index_with_weights};
use reboot_core::rng::seeded_stream;

fn stats_of(rewards: &[f64]) -> ArmStats {
    let mut st = ArmStats::new();
    for &r in rewards {
        st.update(r).unwrap();
    }
    st
}

fn two_pass_rss(rewards: &[f64]) -> f64 {
    let mean = rewards.iter().sum::<f64>() / rewards.len() as f64;
    rewards.iter().map(|r| (r - mean) * (r - mean)).sum()
}

proptest! {
    #[test]
    fn incremental_rss_matches_two_pass(
        shift in -100.0f64..100.0,
        rewards in prop::collection::vec(-5.0f64..5.0, 1..50)
    ) {
        let shifted: Vec<f64> = rewards.iter().map(|r| r + shift).collect();
        let st = stats_of(&shifted);
        let oracle = two_pass_rss(&shifted);
        let got = st.rss().unwrap();
        prop_assert!(got >= 0.0);
        prop_assert!(
            (got - oracle).abs() <= 1e-10 * oracle.max(1.0),
            "incremental {got} vs two-pass {oracle}"
        );
    }

    #[test]
    fn constant_streams_have_vanishing_rss(c in -1e3f64..1e3, len in 1usize..60) {
        let st = stats_of(&vec![c; len]);
        let rss = st.rss().unwrap();
        prop_assert!(rss >= 0.0);
        prop_assert!(rss <= 1e-9 * (1.0 + c * c * len as f64));
    }

    #[test]
    fn prss_is_the_sum_of_squared_pseudo_residuals(
        s in 1u64..500,
        sigma_a in 1e-3f64..10.0
    ) {
        let (p, m) = pseudo_residuals(s, sigma_a).unwrap();
        let formula = prss(s, sigma_a).unwrap();
        prop_assert!((p * p + m * m - formula).abs() <= 1e-12 * formula);
        prop_assert_eq!(p + m, 0.0);
    }

    #[test]
    fn zero_weights_always_recover_the_mean(
        rewards in prop::collection::vec(-10.0f64..10.0, 1..30),
        sigma_a in 0.1f64..5.0
    ) {
        let h = History::from_rewards(&rewards).unwrap();
        let zeros = vec![0.0; rewards.len() + 2];
        let idx = reboot_index_with_weights(&h, sigma_a, &zeros).unwrap();
        let mean = h.mean().unwrap();
        prop_assert!((idx - mean).abs() <= 1e-12 * mean.abs().max(1.0));
    }

    #[test]
    fn giro_resample_mean_respects_convexity(
        rewards in prop::collection::vec(-5.0f64..5.0, 1..20),
        a in 1u32..3,
        seed in 0u64..1000
    ) {
        let h = History::from_rewards(&rewards).unwrap();
        let mut rng = seeded_stream(seed, 0);
        let idx = giro_index(&h, a, &mut rng).unwrap();
        let lo = rewards.iter().copied().fold(0.0f64, f64::min);
        let hi = rewards.iter().copied().fold(1.0f64, f64::max);
        prop_assert!(idx >= lo && idx <= hi, "index {idx} outside [{lo}, {hi}]");
    }

    #[test]
    fn phe_pseudo_mass_is_clamped_to_its_binomial_support(
        rewards in prop::collection::vec(0.0f64..1.0, 1..30),
        a in 0.5f64..4.0,
        seed in 0u64..1000
    ) {
        let st = stats_of(&rewards);
        let s = st.pulls() as f64;
        let m = (a * s).ceil();
        let mut rng = seeded_stream(seed, 1);
        let idx = phe_index(&st, a, &mut rng).unwrap();
        let u = idx * (s + m) - st.sum();
        prop_assert!(u >= -1e-9 && u <= m + 1e-9, "U = {u} outside [0, {m}]");
    }
}
