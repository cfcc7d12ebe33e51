//! Acceptance suite: one test per criterion, each asserting its stated
//! tolerance and runtime budget and printing a PASS line.
//!
//! Run with:  cargo test -p bernmix-cli --test acceptance -- --nocapture

use std::process::Command;
use std::time::{Duration, Instant};

use bernmix::beta_exact::{self, BetaParams};
use bernmix::dynamics::{
    cid_check, discrepancy_experiment, growing_horizon_experiment, initial_state,
    order_dependence_check, slope_log_gap_vs_n, step_scheme, stopping_boundary_witness,
    stopping_value_gap, ExperimentSpec, KSpec, OrderCheck, Scheme,
};
use bernmix::geometry::log_score_regret;
use bernmix::hierarchy::{check_complete_monotonicity, injectivity_roundtrip, RunSequence};
use bernmix::measures::{posterior, two_point_with_mean, MixingMeasure, PosteriorState};
use bernmix::predictive::{pattern_monte_carlo, predictive_range, run_prob, Pattern};
use bernmix::rng::SplitMix64;
use bernmix::scalar::{rat, Rational, Scalar};
use bernmix::verify::random_rational_measure;

fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

fn jeffreys_posterior(n: u64, s: u64) -> MixingMeasure<Rational> {
    posterior(&PosteriorState::new(MixingMeasure::jeffreys(), n, s).unwrap()).unwrap()
}

fn report(id: u32, name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "criterion {id} exceeded its {budget:?} budget: {elapsed:?}"
    );
    println!("ACCEPTANCE {id:2} {name}: PASS ({elapsed:.2?})");
}

#[test]
fn acceptance_01_comparison_table_exact() {
    let start = Instant::now();
    // exact rationals behind the table
    let rows = beta_exact::comparison_table(5, 2, 4).unwrap();
    assert_eq!(rows[0].bayes, q(3, 8)); // zero tolerance
    assert_eq!(rows[0].plugin, q(49, 144));
    assert_eq!(rows[1].bayes, q(33, 128));
    assert_eq!(rows[2].bayes, q(143, 768));

    // CLI output after exact computation and round-half-even display.
    // (343/1728 = 0.1984953…: half-even gives 0.198 in the k=3 plug-in cell;
    // the 23.0% relative gap pins the same exact value.)
    let out = Command::new(env!("CARGO_BIN_EXE_bernmix"))
        .args([
            "table3", "--n", "5", "--s", "2", "--kmax", "4", "--format", "csv",
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("k,plugin,bayes,relative_gap"));
    assert_eq!(lines.next(), Some("2,0.340,0.375,9.3%"));
    assert_eq!(lines.next(), Some("3,0.198,0.258,23.0%"));
    assert_eq!(lines.next(), Some("4,0.116,0.186,37.8%"));
    report(1, "exact comparison table", start, Duration::from_secs(1));
}

#[test]
fn acceptance_02_variance_identity_all_counts() {
    let start = Instant::now();
    for n in 0..=50u64 {
        for s in 0..=n {
            let lhs = beta_exact::hill_run_prob(n, s, 2).unwrap()
                - (q(1, 1) - beta_exact::hill_one_step(n, s).unwrap()).powu(2);
            let rhs = beta_exact::beta_posterior_variance(BetaParams::jeffreys(), n, s).unwrap();
            assert_eq!(lhs, rhs, "n={n} s={s}");
        }
    }
    let v = beta_exact::beta_posterior_variance(BetaParams::jeffreys(), 5, 2).unwrap();
    assert_eq!(v, q(35, 1008));
    assert!((v.to_f64() - 0.0347).abs() < 1e-4);
    report(
        2,
        "variance identity, n <= 50",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn acceptance_03_log_score_regret_values() {
    let start = Instant::now();
    let p2 = beta_exact::hill_run_prob(5, 2, 2).unwrap().to_f64();
    let q2 = q(7, 12).powu(2).to_f64();
    let r2 = log_score_regret(p2, q2).unwrap();
    assert!((r2 - 0.0026).abs() <= 2e-4, "k=2 regret {r2}");

    let p4 = beta_exact::hill_run_prob(5, 2, 4).unwrap().to_f64();
    let q4 = q(7, 12).powu(4).to_f64();
    let r4 = log_score_regret(p4, q4).unwrap();
    assert!((r4 - 0.021).abs() <= 2e-3, "k=4 regret {r4}");
    report(3, "log-score regret values", start, Duration::from_secs(1));
}

#[test]
fn acceptance_04_prior_pair_two_step() {
    let start = Instant::now();
    let b22 = MixingMeasure::beta(q(2, 1), q(2, 1)).unwrap();
    assert_eq!(run_prob(&b22, 2), q(3, 10));
    let b11 = MixingMeasure::beta(q(1, 1), q(1, 1)).unwrap();
    assert_eq!(run_prob(&b11, 2), q(1, 3));
    report(4, "prior pair two-step runs", start, Duration::from_secs(1));
}

#[test]
fn acceptance_05_range_endpoints_attained() {
    let start = Instant::now();
    let (lo, hi) = predictive_range(&q(1, 2), 2).unwrap();
    assert_eq!((lo.clone(), hi.clone()), (q(1, 4), q(1, 2)));
    let degenerate = MixingMeasure::point_mass(q(1, 2)).unwrap();
    assert_eq!(run_prob(&degenerate, 2), lo);
    let endpoint = two_point_with_mean(q(0, 1), q(1, 1), q(1, 2)).unwrap();
    assert_eq!(run_prob(&endpoint, 2), hi);
    report(
        5,
        "predictive range endpoints",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn acceptance_06_mean_matched_fourfold_failure() {
    let start = Instant::now();
    let spread = two_point_with_mean(q(1, 100), q(19, 100), q(1, 10)).unwrap();
    assert_eq!(spread.mean(), q(1, 10));
    let all_fail = bernmix::predictive::pattern_prob(&spread, &Pattern::ones(4).unwrap());
    let v = all_fail.to_f64();
    assert!((v - 6.6e-4).abs() <= 5e-5, "value {v}");
    assert!(all_fail > q(6, 10000), "factor {}", v / 1e-4);
    report(
        6,
        "mean-matched four-fold probability",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn acceptance_07_roundtrip_and_monotonicity_suite() {
    let start = Instant::now();
    let mut rng = SplitMix64::stream(0xAC7, 0);
    let zero = q(0, 1);
    for trial in 0..200u32 {
        let measure = random_rational_measure(&mut rng, 5);
        let k = 2 + (rng.next_u64() % 15) as u32; // K <= 16
        let rep = injectivity_roundtrip(&measure, k).unwrap();
        assert!(rep.exact_mode);
        assert!(
            rep.max_abs_error.is_zero(),
            "trial {trial}: nonzero error on {measure:?}"
        );
        let runs = RunSequence::of_measure(&measure, k).unwrap();
        let verdict = check_complete_monotonicity(runs.values(), k, &zero).unwrap();
        assert!(verdict.passed(), "trial {trial}: {measure:?}");
    }
    report(
        7,
        "200-measure roundtrip suite",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn acceptance_08_asymptotic_rate_and_threshold() {
    let start = Instant::now();
    let fixed = ExperimentSpec {
        prior: MixingMeasure::<f64>::jeffreys(),
        theta0_list: vec![0.3, 0.5, 0.7],
        n_grid: vec![50, 100, 200, 500, 1000, 2000],
        k_spec: KSpec::Fixed(vec![2]),
        replications: 200,
        master_seed: 8080,
    };
    let rows = discrepancy_experiment(&fixed).unwrap();
    for theta0 in [0.3, 0.5, 0.7] {
        let slope = slope_log_gap_vs_n(&rows, theta0, 2).unwrap();
        assert!(
            (slope + 1.0).abs() <= 0.15,
            "slope {slope} at theta0={theta0}"
        );
    }

    // At k_n = round(sqrt(n)) the distortion levels off rather than decaying:
    // compared on the relative gap, since both run probabilities themselves
    // vanish geometrically in k.
    let growing = ExperimentSpec {
        prior: MixingMeasure::<f64>::jeffreys(),
        theta0_list: vec![0.5],
        n_grid: vec![100, 1000, 10000],
        k_spec: KSpec::GrowingSqrt { c: 1.0 },
        replications: 200,
        master_seed: 8081,
    };
    let rows = growing_horizon_experiment(&growing).unwrap();
    let at_100 = rows.iter().find(|r| r.n == 100).unwrap();
    let at_10k = rows.iter().find(|r| r.n == 10000).unwrap();
    assert_eq!(at_10k.k, 100);
    assert!(
        at_10k.mean_rel_gap > 0.5 * at_100.mean_rel_gap,
        "stabilization failed: {} -> {}",
        at_100.mean_rel_gap,
        at_10k.mean_rel_gap
    );
    report(
        8,
        "1/n rate and sqrt-n threshold",
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn acceptance_09_counterexample_enumeration_and_cid() {
    let start = Instant::now();
    // exhaustive boundedness over all 2^n paths, n <= 12
    let scheme: Scheme<f64> = Scheme::Counterexample;
    for len in 1u32..=12 {
        for bits in 0..(1u64 << len) {
            let mut state = initial_state(&scheme);
            for i in 0..len {
                state = step_scheme(&scheme, &state, bits >> i & 1 == 1).unwrap();
                assert!(
                    (0.25..=0.75).contains(&state.theta),
                    "θ={} outside [1/4, 3/4]",
                    state.theta
                );
            }
        }
    }
    // order witness with the exact values
    let exact: Scheme<Rational> = Scheme::Counterexample;
    match order_dependence_check(&exact).unwrap() {
        OrderCheck::Witness {
            theta_a, theta_b, ..
        } => {
            let pair = [theta_a, theta_b];
            assert!(pair.contains(&q(9, 16)) && pair.contains(&q(7, 16)));
        }
        OrderCheck::ExchangeConsistent => panic!("expected an order witness"),
    }
    // look-ahead laws within 3 binomial SEs at 1e5 replications
    let report_cid = cid_check(&scheme, 3, 4, 100_000, 18).unwrap();
    assert!(
        report_cid.pass,
        "cid deviations reached {:.2} sigmas",
        report_cid.max_sigmas
    );
    report(
        9,
        "counterexample enumeration + cid",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn acceptance_10_stopping_distortion() {
    let start = Instant::now();
    let post = jeffreys_posterior(5, 2);
    let (v, v_tilde, gap) = stopping_value_gap(&post, 6).unwrap();
    assert_eq!(v, q(3, 8));
    assert_eq!(v_tilde, q(49, 144));
    assert_eq!(gap, post.variance()); // exactly the posterior variance
    assert_eq!(gap, q(35, 1008));

    let w = stopping_boundary_witness(&post, 4).unwrap();
    assert!(
        (w.threshold.to_f64() - 0.228).abs() < 1e-3,
        "r = {}",
        w.threshold
    );
    assert_eq!(w.tau_bayes, 3);
    assert_eq!(w.tau_plugin, Some(2));
    report(
        10,
        "stopping-value distortion",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn acceptance_11_monte_carlo_cross_validation() {
    let start = Instant::now();
    let mut rng = SplitMix64::stream(1105, 0);
    for case in 0..20u32 {
        let measure: MixingMeasure<f64> = match case % 3 {
            0 => MixingMeasure::beta(
                0.5 + (rng.next_u64() % 40) as f64 / 10.0,
                0.5 + (rng.next_u64() % 40) as f64 / 10.0,
            )
            .unwrap(),
            1 => MixingMeasure::point_mass((rng.next_u64() % 99 + 1) as f64 / 100.0).unwrap(),
            _ => {
                let x1 = (rng.next_u64() % 45 + 5) as f64 / 100.0;
                let x2 = (rng.next_u64() % 45 + 50) as f64 / 100.0;
                let w = (rng.next_u64() % 81 + 10) as f64 / 100.0;
                MixingMeasure::discrete(vec![(x1, w), (x2, 1.0 - w)]).unwrap()
            }
        };
        let len = 1 + (rng.next_u64() % 6) as u32;
        let bits: Vec<bool> = (0..len).map(|_| rng.next_u64() % 2 == 1).collect();
        let pattern = Pattern::new(bits).unwrap();
        let check = pattern_monte_carlo(&measure, &pattern, 100_000, rng.next_u64());
        assert!(
            check.within(3.0),
            "case {case} ({measure:?}, {pattern}): exact {} vs estimate {} (se {})",
            check.exact,
            check.estimate,
            check.std_error
        );
    }
    report(
        11,
        "Monte Carlo cross-validation",
        start,
        Duration::from_secs(60),
    );
}
