//! Command-line interface: every operation of the library behind one binary.
//! Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.

mod figures;
mod output;
mod parse;

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use bernmix::beta_exact;
use bernmix::dynamics::{
    cid_check, discrepancy_experiment, growing_horizon_experiment, initial_state,
    order_dependence_check, step_scheme, stopping_boundary_witness, stopping_value_gap,
    ExperimentSpec, KSpec, OrderCheck,
};
use bernmix::geometry::regret_sweep;
use bernmix::hierarchy::{
    check_complete_monotonicity, default_cm_tolerance, injectivity_roundtrip, moments_from_runs,
    runs_from_moments, CmVerdict, RunSequence,
};
use bernmix::measures::{posterior, MixingMeasure, MomentSequence, PosteriorState};
use bernmix::predictive::{
    gap_report, nonid_witness, pattern_prob, predictive_range, run_prob, Functional, Pattern,
};
use bernmix::rng::SplitMix64;
use bernmix::scalar::{fmt_sig, parse_rational, Rational, Scalar};

use output::{emit, Format, Table};

#[derive(Parser)]
#[command(
    name = "bernmix",
    version,
    about = "Predictive moments of exchangeable Bernoulli sequences: exact Beta/Jeffreys predictives, run/moment transforms, plug-in vs Bayes gaps, scoring regrets, martingale schemes"
)]
struct Cli {
    /// Output format (default: table for single results, csv for sweeps)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact plug-in vs Bayes k-step run probabilities under the Jeffreys prior
    Table3 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        kmax: u32,
        /// Print full rationals (e.g. 3/8) instead of rounded decimals
        #[arg(long)]
        exact: bool,
    },
    /// k-step predictive probabilities and plug-in comparisons
    #[command(subcommand)]
    Predict(PredictCmd),
    /// Run/moment transforms and the complete-monotonicity screen
    #[command(subcommand)]
    Hierarchy(HierarchyCmd),
    /// Scoring-rule regrets of the plug-in predictive
    #[command(subcommand)]
    Regret(RegretCmd),
    /// Martingale-scheme simulation and diagnostics
    #[command(subcommand)]
    Simulate(SimulateCmd),
    /// Seeded gap sweeps over simulated data
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Stopping-value distortion of the mean-only plug-in
    #[command(subcommand)]
    Stopping(StoppingCmd),
    /// Emit the data behind a named figure as CSV
    Figure {
        /// One of: moment-insuff, scoring-regret, bayes-plugin-gap, asymptotic
        id: String,
        /// Master seed (required by the simulation-based `asymptotic` figure)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200)]
        reps: u64,
    },
    /// Run the full property suite; nonzero exit iff any check fails
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct PosteriorArgs {
    /// Prior: jeffreys | uniform | beta:a,b | point:m | discrete:x1,w1;x2,w2;...
    #[arg(long)]
    prior: String,
    /// Observation count (with --s, the prior is updated to its posterior)
    #[arg(long, requires = "s")]
    n: Option<u64>,
    /// Success count
    #[arg(long, requires = "n")]
    s: Option<u64>,
}

impl PosteriorArgs {
    fn measure(&self) -> Result<MixingMeasure<Rational>> {
        let prior = parse::parse_prior(&self.prior)?;
        match (self.n, self.s) {
            (Some(n), Some(s)) => Ok(posterior(&PosteriorState::new(prior, n, s)?)?),
            _ => Ok(prior),
        }
    }
}

#[derive(Subcommand)]
enum PredictCmd {
    /// Probability that the next observations trace the given 0/1 pattern
    Pattern {
        #[command(flatten)]
        posterior: PosteriorArgs,
        /// Bit pattern, e.g. 0010
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        exact: bool,
    },
    /// k-step run probability (next k observations all zero)
    Run {
        #[command(flatten)]
        posterior: PosteriorArgs,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        exact: bool,
    },
    /// Bayes vs plug-in run probability with the second-order bound
    Gap {
        #[command(flatten)]
        posterior: PosteriorArgs,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        exact: bool,
    },
    /// Attainable range of the k-step run probability at fixed mean
    Range {
        #[arg(long)]
        m: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        exact: bool,
    },
    /// Two mean-matched measures separated by a non-affine functional
    Witness {
        #[arg(long)]
        m: String,
        /// power:k | indicator:t | entropy
        #[arg(long)]
        functional: String,
        /// Bracket a,b with a < m < b
        #[arg(long)]
        bracket: String,
    },
}

#[derive(Subcommand)]
enum HierarchyCmd {
    /// Convert between moment and run sequences (triangular binomial transform)
    Invert {
        /// What the input sequence is
        #[arg(long, value_enum)]
        from: SeqKind,
        /// Inline sequence, e.g. 1,0.5,0.3
        #[arg(long)]
        values: Option<String>,
        /// CSV file with index,value rows
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        exact: bool,
    },
    /// Necessary-condition screen: (−1)^m Δ^m μ_k ≥ −tol
    CheckCm {
        #[arg(long)]
        values: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        max_order: Option<u32>,
        /// Tolerance (default 0 — inputs are parsed exactly)
        #[arg(long)]
        tol: Option<String>,
    },
    /// moments → runs → moments reconstruction error for a measure
    Roundtrip {
        #[arg(long)]
        prior: String,
        #[arg(long = "K")]
        k: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum SeqKind {
    Moments,
    Runs,
}

#[derive(Subcommand)]
enum RegretCmd {
    /// Log-score and Brier regrets over (n, k) with s = round(frac·n)
    Sweep {
        #[arg(long, default_value = "jeffreys")]
        prior: String,
        #[arg(long)]
        n_list: String,
        #[arg(long)]
        k_list: String,
        #[arg(long, default_value_t = 0.4)]
        s_frac: f64,
    },
}

#[derive(Subcommand)]
enum SimulateCmd {
    /// Simulate scheme paths, or run order/look-ahead diagnostics
    Scheme {
        /// counterexample | learning-rate:c=C,theta0=T | power:alpha=A,theta0=T | bayes-mean:PRIOR
        #[arg(long)]
        scheme: String,
        #[arg(long, default_value_t = 20)]
        steps: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        paths: u64,
        /// Instead of simulating, search paths of length ≤ 4 for an
        /// order-dependence witness
        #[arg(long)]
        order_check: bool,
        /// Monte Carlo check that all look-ahead laws equal Bernoulli(θ_n)
        #[arg(long)]
        cid_check: bool,
        /// Conditioning time for --cid-check
        #[arg(long, default_value_t = 3)]
        at_n: u64,
        /// Look-ahead horizon for --cid-check
        #[arg(long, default_value_t = 4)]
        horizon: u32,
        /// Replications for --cid-check
        #[arg(long, default_value_t = 100_000)]
        reps: u64,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Mean Bayes−plugin gap at fixed horizons over simulated Bernoulli data
    Gap {
        #[arg(long, default_value = "jeffreys")]
        prior: String,
        #[arg(long)]
        theta0_list: String,
        #[arg(long)]
        n_list: String,
        #[arg(long)]
        k_list: String,
        #[arg(long, default_value_t = 200)]
        reps: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Same sweep with the horizon growing like k_n = max(2, round(c·√n))
    Horizon {
        #[arg(long, default_value = "jeffreys")]
        prior: String,
        #[arg(long)]
        theta0_list: String,
        #[arg(long)]
        n_list: String,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 200)]
        reps: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum StoppingCmd {
    /// Continuation values V, Ṽ and their gap (= posterior variance)
    Gap {
        #[command(flatten)]
        posterior: PosteriorArgs,
        #[arg(long = "K")]
        k: u32,
        #[arg(long)]
        exact: bool,
    },
    /// Threshold separating the Bayes and plug-in horizon rules
    Witness {
        #[command(flatten)]
        posterior: PosteriorArgs,
        #[arg(long = "K")]
        k: u32,
        #[arg(long)]
        exact: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn val(r: &Rational, exact: bool) -> String {
    if exact {
        format!("{r}")
    } else {
        fmt_sig(r.to_f64(), 12)
    }
}

fn sig(x: f64) -> String {
    fmt_sig(x, 12)
}

fn run(cli: Cli) -> Result<()> {
    let (table, default_format) = build(cli.command)?;
    let Some(table) = table else {
        return Ok(()); // verb printed its own output (verify)
    };
    let format = cli.format.unwrap_or(default_format);
    emit(&table.render(format), &cli.output)
}

fn build(cmd: Cmd) -> Result<(Option<Table>, Format)> {
    match cmd {
        Cmd::Table3 { n, s, kmax, exact } => {
            let rows = beta_exact::comparison_table(n, s, kmax)?;
            let mut table = Table::new(vec!["k", "plugin", "bayes", "relative_gap"]);
            for row in rows {
                let (plugin, bayes, gap) = if exact {
                    (
                        row.plugin.to_string(),
                        row.bayes.to_string(),
                        row.relative_gap.to_string(),
                    )
                } else {
                    row.rendered()
                };
                table.push_row(vec![row.k.to_string(), plugin, bayes, gap]);
            }
            Ok((Some(table), Format::Table))
        }

        Cmd::Predict(cmd) => predict(cmd),
        Cmd::Hierarchy(cmd) => hierarchy(cmd),

        Cmd::Regret(RegretCmd::Sweep {
            prior,
            n_list,
            k_list,
            s_frac,
        }) => {
            let prior = parse::parse_prior(&prior)?;
            let rows = regret_sweep(
                &prior,
                &parse::parse_u64_list(&n_list)?,
                s_frac,
                &parse::parse_u32_list(&k_list)?,
            )?;
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
                    sig(if r.n == 0 {
                        0.0
                    } else {
                        r.s as f64 / r.n as f64
                    }),
                    r.k.to_string(),
                    sig(r.p_bayes),
                    sig(r.p_plugin),
                    sig(r.kl_regret),
                    sig(r.brier_regret),
                    sig(r.variance),
                ]);
            }
            Ok((Some(table), Format::Csv))
        }

        Cmd::Simulate(cmd) => simulate(cmd),
        Cmd::Experiment(cmd) => experiment(cmd),
        Cmd::Stopping(cmd) => stopping(cmd),

        Cmd::Figure { id, seed, reps } => {
            let table = figures::by_id(&id, seed, reps)?;
            Ok((Some(table), Format::Csv))
        }

        Cmd::Verify { seed } => {
            let outcomes = bernmix::verify::run_all(seed);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            for o in &outcomes {
                println!(
                    "{} {} — {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                );
            }
            println!(
                "{} passed, {} failed ({} checks)",
                outcomes.len() - failed,
                failed,
                outcomes.len()
            );
            if failed > 0 {
                bail!("{failed} of {} property checks failed", outcomes.len());
            }
            Ok((None, Format::Table))
        }
    }
}

fn predict(cmd: PredictCmd) -> Result<(Option<Table>, Format)> {
    match cmd {
        PredictCmd::Pattern {
            posterior,
            pattern,
            exact,
        } => {
            let measure = posterior.measure()?;
            let pattern = Pattern::parse(&pattern)?;
            let p = pattern_prob(&measure, &pattern);
            let mut table = Table::new(vec!["pattern", "k", "s", "probability"]);
            table.push_row(vec![
                pattern.to_string(),
                pattern.len().to_string(),
                pattern.ones_count().to_string(),
                val(&p, exact),
            ]);
            Ok((Some(table), Format::Table))
        }
        PredictCmd::Run {
            posterior,
            k,
            exact,
        } => {
            let measure = posterior.measure()?;
            if k < 1 {
                bail!("run probability needs k >= 1");
            }
            let p = run_prob(&measure, k);
            let mut table = Table::new(vec!["k", "probability"]);
            table.push_row(vec![k.to_string(), val(&p, exact)]);
            Ok((Some(table), Format::Table))
        }
        PredictCmd::Gap {
            posterior,
            k,
            exact,
        } => {
            let measure = posterior.measure()?;
            let g = gap_report(&measure, k)?;
            let mut table = Table::new(vec![
                "k",
                "bayes",
                "plugin",
                "gap",
                "upper_bound",
                "variance",
            ]);
            table.push_row(vec![
                k.to_string(),
                val(&g.bayes, exact),
                val(&g.plugin, exact),
                val(&g.gap, exact),
                val(&g.upper_bound, exact),
                val(&g.variance, exact),
            ]);
            Ok((Some(table), Format::Table))
        }
        PredictCmd::Range { m, k, exact } => {
            let m = parse_rational(&m)?;
            let (lo, hi) = predictive_range(&m, k)?;
            let mut table = Table::new(vec!["m", "k", "lo", "hi"]);
            table.push_row(vec![
                val(&m, exact),
                k.to_string(),
                val(&lo, exact),
                val(&hi, exact),
            ]);
            Ok((Some(table), Format::Table))
        }
        PredictCmd::Witness {
            m,
            functional,
            bracket,
        } => {
            let m = parse_rational(&m)?;
            let f = parse_functional(&functional)?;
            let parts = parse::parse_rational_list(&bracket)?;
            if parts.len() != 2 {
                bail!("bracket must be two values a,b");
            }
            let report = nonid_witness(&m, &f, (parts[0].clone(), parts[1].clone()))?;
            let lambda = match &report.spread {
                MixingMeasure::Discrete { atoms } => atoms[0].1.clone(),
                _ => unreachable!("two-point witness is discrete"),
            };
            let mut table = Table::new(vec![
                "functional",
                "m",
                "a",
                "b",
                "lambda",
                "value_degenerate",
                "value_spread",
            ]);
            table.push_row(vec![
                functional,
                sig(m.to_f64()),
                sig(parts[0].to_f64()),
                sig(parts[1].to_f64()),
                sig(lambda.to_f64()),
                sig(report.value_degenerate),
                sig(report.value_spread),
            ]);
            Ok((Some(table), Format::Table))
        }
    }
}

fn parse_functional(s: &str) -> Result<Functional<Rational>> {
    let lower = s.trim().to_ascii_lowercase();
    if lower == "entropy" {
        return Ok(Functional::Entropy);
    }
    let (kind, arg) = lower.split_once(':').ok_or_else(|| {
        anyhow!("cannot parse functional {s:?}: expected power:k, indicator:t, or entropy")
    })?;
    match kind {
        "power" => Ok(Functional::Power(arg.parse().context("power exponent")?)),
        "indicator" => Ok(Functional::Indicator(parse_rational(arg)?)),
        other => bail!("unknown functional {other:?}"),
    }
}

fn sequence_from(values: Option<String>, input: Option<PathBuf>) -> Result<Vec<Rational>> {
    match (values, input) {
        (Some(v), None) => parse::parse_rational_list(&v),
        (None, Some(path)) => {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let mut out = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (idx, value) = line
                    .split_once(',')
                    .ok_or_else(|| anyhow!("expected index,value rows, got {line:?}"))?;
                if idx.trim() == "index" {
                    continue; // header row
                }
                let i: usize = idx.trim().parse().context("sequence index")?;
                if i != out.len() {
                    bail!(
                        "sequence indices must run 0,1,2,… (saw {i} at position {})",
                        out.len()
                    );
                }
                out.push(parse_rational(value)?);
            }
            if out.is_empty() {
                bail!("no sequence rows in {}", path.display());
            }
            Ok(out)
        }
        _ => bail!("provide exactly one of --values or --input"),
    }
}

fn hierarchy(cmd: HierarchyCmd) -> Result<(Option<Table>, Format)> {
    match cmd {
        HierarchyCmd::Invert {
            from,
            values,
            input,
            exact,
        } => {
            let seq = sequence_from(values, input)?;
            let (label, out): (&str, Vec<Rational>) = match from {
                SeqKind::Moments => {
                    let m = MomentSequence::new(seq)?;
                    ("run", runs_from_moments(&m)?.values().to_vec())
                }
                SeqKind::Runs => {
                    let r = RunSequence::new(seq)?;
                    ("moment", moments_from_runs(&r)?.values().to_vec())
                }
            };
            let mut table = Table::new(vec!["index", "value"]);
            table.comment(format!("{label} sequence"));
            for (i, v) in out.iter().enumerate() {
                table.push_row(vec![i.to_string(), val(v, exact)]);
            }
            Ok((Some(table), Format::Csv))
        }
        HierarchyCmd::CheckCm {
            values,
            input,
            max_order,
            tol,
        } => {
            let seq = sequence_from(values, input)?;
            let max_order = max_order.unwrap_or((seq.len() - 1).max(1) as u32);
            let tol = match tol {
                Some(t) => parse_rational(&t)?,
                None => default_cm_tolerance::<Rational>(seq.len()),
            };
            let verdict = check_complete_monotonicity(&seq, max_order, &tol)?;
            let mut table = Table::new(vec!["verdict", "order", "index", "signed_difference"]);
            match verdict {
                CmVerdict::Pass => table.push_row(vec!["pass", "", "", ""]),
                CmVerdict::Fail {
                    order,
                    index,
                    signed_difference,
                } => table.push_row(vec![
                    "fail".to_string(),
                    order.to_string(),
                    index.to_string(),
                    sig(signed_difference.to_f64()),
                ]),
            }
            Ok((Some(table), Format::Table))
        }
        HierarchyCmd::Roundtrip { prior, k } => {
            let measure = parse::parse_prior(&prior)?;
            let report = injectivity_roundtrip(&measure, k)?;
            let mut table = Table::new(vec!["K", "max_abs_error", "exact_mode"]);
            table.push_row(vec![
                k.to_string(),
                sig(report.max_abs_error.to_f64()),
                report.exact_mode.to_string(),
            ]);
            Ok((Some(table), Format::Table))
        }
    }
}

fn simulate(cmd: SimulateCmd) -> Result<(Option<Table>, Format)> {
    let SimulateCmd::Scheme {
        scheme,
        steps,
        seed,
        paths,
        order_check,
        cid_check: do_cid,
        at_n,
        horizon,
        reps,
    } = cmd;
    let scheme = parse::parse_scheme(&scheme)?;
    if order_check {
        let mut table = Table::new(vec![
            "verdict", "len", "s", "path_a", "path_b", "theta_a", "theta_b",
        ]);
        match order_dependence_check(&scheme)? {
            OrderCheck::ExchangeConsistent => {
                table.push_row(vec!["exchange-consistent", "", "", "", "", "", ""]);
            }
            OrderCheck::Witness {
                path_a,
                path_b,
                theta_a,
                theta_b,
            } => {
                let fmt_path = |p: &[bool]| -> String {
                    p.iter().map(|b| if *b { '1' } else { '0' }).collect()
                };
                let s = path_a.iter().filter(|b| **b).count();
                table.push_row(vec![
                    "order-dependent".to_string(),
                    path_a.len().to_string(),
                    s.to_string(),
                    fmt_path(&path_a),
                    fmt_path(&path_b),
                    sig(theta_a),
                    sig(theta_b),
                ]);
            }
        }
        return Ok((Some(table), Format::Table));
    }
    if do_cid {
        let report = cid_check(&scheme, at_n, horizon, reps, seed)?;
        let mut table = Table::new(vec!["j", "estimate", "theta_n", "std_error", "deviation"]);
        table.comment(format!("seed={seed}"));
        table.comment(format!(
            "prefix={}",
            report
                .prefix
                .iter()
                .map(|b| if *b { '1' } else { '0' })
                .collect::<String>()
        ));
        table.comment(format!(
            "verdict={} (max {:.2} sigmas)",
            if report.pass { "pass" } else { "fail" },
            report.max_sigmas
        ));
        for (j, estimate, se, dev) in report.rows {
            table.push_row(vec![
                j.to_string(),
                sig(estimate),
                sig(report.theta_n),
                sig(se),
                sig(dev),
            ]);
        }
        return Ok((Some(table), Format::Table));
    }
    // plain path simulation under the scheme's driving law
    let mut table = Table::new(vec!["path", "step", "x", "theta"]);
    table.comment(format!("seed={seed}"));
    for p in 0..paths {
        let mut rng = SplitMix64::stream(seed, p);
        let mut state = initial_state(&scheme);
        table.push_row(vec![
            p.to_string(),
            "0".to_string(),
            String::new(),
            sig(state.theta),
        ]);
        for step in 1..=steps {
            let x = rng.bernoulli(scheme.driving_prob(&state));
            state = step_scheme(&scheme, &state, x)?;
            table.push_row(vec![
                p.to_string(),
                step.to_string(),
                if x { "1" } else { "0" }.to_string(),
                sig(state.theta),
            ]);
        }
    }
    Ok((Some(table), Format::Csv))
}

fn experiment(cmd: ExperimentCmd) -> Result<(Option<Table>, Format)> {
    match cmd {
        ExperimentCmd::Gap {
            prior,
            theta0_list,
            n_list,
            k_list,
            reps,
            seed,
        } => {
            let spec = ExperimentSpec {
                prior: parse::rational_measure_to_f64(&parse::parse_prior(&prior)?),
                theta0_list: parse::parse_f64_list(&theta0_list)?,
                n_grid: parse::parse_u64_list(&n_list)?,
                k_spec: KSpec::Fixed(parse::parse_u32_list(&k_list)?),
                replications: reps,
                master_seed: seed,
            };
            let rows = discrepancy_experiment(&spec)?;
            let mut table = Table::new(vec!["theta0", "n", "k", "mean_gap", "mean_rel_gap", "se"]);
            table.comment(format!("seed={seed}"));
            for r in rows {
                table.push_row(vec![
                    sig(r.theta0),
                    r.n.to_string(),
                    r.k.to_string(),
                    sig(r.mean_gap),
                    sig(r.mean_rel_gap),
                    sig(r.se),
                ]);
            }
            Ok((Some(table), Format::Csv))
        }
        ExperimentCmd::Horizon {
            prior,
            theta0_list,
            n_list,
            c,
            reps,
            seed,
        } => {
            let spec = ExperimentSpec {
                prior: parse::rational_measure_to_f64(&parse::parse_prior(&prior)?),
                theta0_list: parse::parse_f64_list(&theta0_list)?,
                n_grid: parse::parse_u64_list(&n_list)?,
                k_spec: KSpec::GrowingSqrt { c },
                replications: reps,
                master_seed: seed,
            };
            let rows = growing_horizon_experiment(&spec)?;
            let mut table = Table::new(vec![
                "theta0",
                "n",
                "k",
                "c",
                "mean_gap",
                "mean_rel_gap",
                "se",
            ]);
            table.comment(format!("seed={seed}"));
            for r in rows {
                table.push_row(vec![
                    sig(r.theta0),
                    r.n.to_string(),
                    r.k.to_string(),
                    sig(c),
                    sig(r.mean_gap),
                    sig(r.mean_rel_gap),
                    sig(r.se),
                ]);
            }
            Ok((Some(table), Format::Csv))
        }
    }
}

fn stopping(cmd: StoppingCmd) -> Result<(Option<Table>, Format)> {
    match cmd {
        StoppingCmd::Gap {
            posterior,
            k,
            exact,
        } => {
            let measure = posterior.measure()?;
            let (v, v_tilde, gap) = stopping_value_gap(&measure, k)?;
            let mut table = Table::new(vec!["K", "value_bayes", "value_plugin", "gap"]);
            table.push_row(vec![
                k.to_string(),
                val(&v, exact),
                val(&v_tilde, exact),
                val(&gap, exact),
            ]);
            Ok((Some(table), Format::Table))
        }
        StoppingCmd::Witness {
            posterior,
            k,
            exact,
        } => {
            let measure = posterior.measure()?;
            let w = stopping_boundary_witness(&measure, k)?;
            let mut table = Table::new(vec!["K", "tau0", "threshold", "tau_bayes", "tau_plugin"]);
            table.push_row(vec![
                k.to_string(),
                w.tau0.to_string(),
                val(&w.threshold, exact),
                w.tau_bayes.to_string(),
                w.tau_plugin.map_or(String::from("none"), |t| t.to_string()),
            ]);
            Ok((Some(table), Format::Table))
        }
    }
}
