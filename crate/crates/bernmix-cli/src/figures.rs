//! CSV data behind the four figures. The first three are exact sweeps with
//! no Monte Carlo content; `asymptotic` is seeded simulation and embeds the
//! seed in a comment line.

use anyhow::{bail, Result};
use bernmix::dynamics::{
    discrepancy_experiment, growing_horizon_experiment, ExperimentSpec, KSpec,
};
use bernmix::geometry::regret_sweep;
use bernmix::measures::MixingMeasure;
use bernmix::predictive::{predictive_range, run_prob};
use bernmix::scalar::{fmt_sig, rat, Rational, Scalar};

use crate::output::Table;
use crate::parse::rational_measure_to_f64;

fn sig(x: f64) -> String {
    fmt_sig(x, 12)
}

/// `m,k,c,bayes,lo,hi`: the k-step run probability of Beta(cm, c(1−m))
/// posteriors against the attainable range `[(1−m)^k, 1−m]` at fixed mean m.
pub fn moment_insufficiency(k_list: &[u32], c_list: &[u64]) -> Result<Table> {
    let mut table = Table::new(vec!["m", "k", "c", "bayes", "lo", "hi"]);
    for m_idx in 1..20u64 {
        let m = rat(m_idx as i64, 20);
        for &k in k_list {
            let (lo, hi) = predictive_range(&m, k)?;
            for &c in c_list {
                let c_rat = Rational::from_int(c as i64);
                let beta = MixingMeasure::beta(
                    c_rat.clone() * m.clone(),
                    c_rat.clone() * (<Rational as Scalar>::one() - m.clone()),
                )?;
                let bayes = run_prob(&beta, k);
                table.push_row(vec![
                    sig(m.to_f64()),
                    k.to_string(),
                    c.to_string(),
                    sig(bayes.to_f64()),
                    sig(lo.to_f64()),
                    sig(hi.to_f64()),
                ]);
            }
        }
    }
    Ok(table)
}

/// `n,s_over_n,k,p_bayes,p_plugin,kl_regret,brier_regret,variance` under the
/// Jeffreys prior at S_n/n ≈ 0.4.
pub fn scoring_regret() -> Result<Table> {
    let prior = MixingMeasure::<Rational>::jeffreys();
    let rows = regret_sweep(&prior, &[5, 10, 20, 50, 100], 0.4, &[2, 3, 4, 5, 6, 7, 8])?;
    let mut table = Table::new(vec![
        "n",
        "s_over_n",
        "k",
        "p_bayes",
        "p_plugin",
        "kl_regret",
        "brier_regret",
        "variance",
    ]);
    for r in rows {
        table.push_row(vec![
            r.n.to_string(),
            sig(r.s as f64 / r.n as f64),
            r.k.to_string(),
            sig(r.p_bayes),
            sig(r.p_plugin),
            sig(r.kl_regret),
            sig(r.brier_regret),
            sig(r.variance),
        ]);
    }
    Ok(table)
}

/// `n,s,k,plugin,bayes,abs_gap,rel_gap,variance`, exact Jeffreys values.
pub fn bayes_plugin_gap() -> Result<Table> {
    use bernmix::measures::{posterior, PosteriorState};
    let mut table = Table::new(vec![
        "n", "s", "k", "plugin", "bayes", "abs_gap", "rel_gap", "variance",
    ]);
    for n in [5u64, 10, 20, 50, 100] {
        let s = (0.4 * n as f64).round() as u64;
        let post = posterior(&PosteriorState::new(
            MixingMeasure::<Rational>::jeffreys(),
            n,
            s,
        )?)?;
        let (mean, variance) = post.mean_variance();
        let miss = <Rational as Scalar>::one() - mean;
        for k in 2..=8u32 {
            let bayes = run_prob(&post, k);
            let plugin = miss.powu(k);
            let gap = bayes.clone() - plugin.clone();
            let rel = gap.clone() / bayes.clone();
            table.push_row(vec![
                n.to_string(),
                s.to_string(),
                k.to_string(),
                sig(plugin.to_f64()),
                sig(bayes.to_f64()),
                sig(gap.to_f64()),
                sig(rel.to_f64()),
                sig(variance.to_f64()),
            ]);
        }
    }
    Ok(table)
}

/// Simulated reconciliation data. Fixed-horizon block: the absolute gap
/// decays like 1/n at k ∈ {2,4,8}. Growing-horizon block: at k_n ≈ c√n the
/// relative gap levels off. Columns
/// `block,theta0,n,k,c,mean_gap,mean_rel_gap,se`; the seed rides in a
/// comment line.
pub fn asymptotic(seed: u64, replications: u64) -> Result<Table> {
    let mut table = Table::new(vec![
        "block",
        "theta0",
        "n",
        "k",
        "c",
        "mean_gap",
        "mean_rel_gap",
        "se",
    ]);
    table.comment(format!("seed={seed}"));
    table.comment(format!("replications={replications}"));
    let prior = rational_measure_to_f64(&MixingMeasure::<Rational>::jeffreys());

    let fixed = ExperimentSpec {
        prior: prior.clone(),
        theta0_list: vec![0.3, 0.5, 0.7],
        n_grid: vec![50, 100, 200, 500, 1000, 2000],
        k_spec: KSpec::Fixed(vec![2, 4, 8]),
        replications,
        master_seed: seed,
    };
    for r in discrepancy_experiment(&fixed)? {
        table.push_row(vec![
            "fixed".to_string(),
            sig(r.theta0),
            r.n.to_string(),
            r.k.to_string(),
            String::new(),
            sig(r.mean_gap),
            sig(r.mean_rel_gap),
            sig(r.se),
        ]);
    }

    for c in [0.5f64, 1.0, 2.0] {
        let growing = ExperimentSpec {
            prior: prior.clone(),
            theta0_list: vec![0.5],
            n_grid: vec![100, 400, 1600, 6400, 10000],
            k_spec: KSpec::GrowingSqrt { c },
            replications,
            master_seed: seed,
        };
        for r in growing_horizon_experiment(&growing)? {
            table.push_row(vec![
                "growing".to_string(),
                sig(r.theta0),
                r.n.to_string(),
                r.k.to_string(),
                sig(c),
                sig(r.mean_gap),
                sig(r.mean_rel_gap),
                sig(r.se),
            ]);
        }
    }
    Ok(table)
}

pub fn by_id(id: &str, seed: Option<u64>, replications: u64) -> Result<Table> {
    match id {
        "moment-insuff" => moment_insufficiency(&[2, 4, 8], &[1, 2, 5, 20, 100]),
        "scoring-regret" => scoring_regret(),
        "bayes-plugin-gap" => bayes_plugin_gap(),
        "asymptotic" => {
            let Some(seed) = seed else {
                bail!("figure asymptotic is simulation-based and requires --seed");
            };
            asymptotic(seed, replications)
        }
        other => Err(bernmix::Error::UnknownFigure(other.to_string()).into()),
    }
}
