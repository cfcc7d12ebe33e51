//! Bernoulli KL geometry and strictly-proper scoring-rule regrets.
//!
//! The Bernoulli likelihood is an exponential of the KL rate:
//! `θ^{S_n}(1−θ)^{n−S_n} = exp{−n·KL(L_n‖θ) + n·H(L_n)}` with `L_n = S_n/n`,
//! so the posterior density is proportional to `exp{−n·KL(L_n‖θ)}` times the
//! prior. Near its minimiser the rate is quadratic with curvature equal to
//! the Fisher information `1/(L(1−L))`.
//!
//! All logarithms are natural; regrets are reported in nats. Endpoint
//! conventions: `0·log 0 = 0`, and KL is `+∞` when absolute continuity
//! fails — grid code receives the infinity as a value, never as an error.

use crate::measures::MixingMeasure;
use crate::predictive;
use crate::scalar::{Rational, Scalar};
use crate::{Error, Result};

/// Binary KL divergence `p log(p/q) + (1−p) log((1−p)/(1−q))`.
///
/// Strict variant: rejects inputs outside `[0,1]` and the non-absolutely-
/// continuous corner cases `q ∈ {0,1}` with `p ≠ q`. Use
/// [`bernoulli_kl_extended`] in grid sweeps where `+∞` is the right answer.
pub fn bernoulli_kl(p: f64, q: f64) -> Result<f64> {
    check_unit("p", p)?;
    check_unit("q", q)?;
    if (q == 0.0 && p != 0.0) || (q == 1.0 && p != 1.0) {
        return Err(Error::Domain(format!(
            "KL(p={p} || q={q}) diverges: absolute continuity fails"
        )));
    }
    Ok(bernoulli_kl_extended(p, q))
}

/// Total version of [`bernoulli_kl`] on `[0,1]²`: returns `+∞` when the
/// divergence is infinite. `0·log 0 = 0` at the endpoints of `p`.
pub fn bernoulli_kl_extended(p: f64, q: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&q));
    if p == q {
        return 0.0;
    }
    let term = |num: f64, den: f64| -> f64 {
        if num == 0.0 {
            0.0
        } else if den == 0.0 {
            f64::INFINITY
        } else {
            num * (num / den).ln()
        }
    };
    let v = term(p, q) + term(1.0 - p, 1.0 - q);
    // guard against -0.0 and tiny negative roundoff at p ≈ q
    if v <= 0.0 {
        0.0
    } else {
        v
    }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) || x.is_nan() {
        return Err(Error::Domain(format!("{name}={x} outside [0,1]")));
    }
    Ok(())
}

/// Fisher information of the Bernoulli family: `1/(θ(1−θ))`, minimised (=4)
/// at θ = 1/2.
pub fn fisher_info(theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!(
            "Fisher information needs θ in (0,1), got {theta}"
        )));
    }
    Ok(1.0 / (theta * (1.0 - theta)))
}

/// Exact KL, its quadratic (Fisher) approximation `(θ−L)²·I(L)/2`, and the
/// remainder `exact − approx` (cubic in `θ−L`).
pub fn kl_quadratic_error(l: f64, theta: f64) -> Result<(f64, f64, f64)> {
    if !(l > 0.0 && l < 1.0) || !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!(
            "quadratic comparison needs both points in (0,1), got L={l}, θ={theta}"
        )));
    }
    let exact = bernoulli_kl(l, theta)?;
    let delta = theta - l;
    let approx = 0.5 * delta * delta * fisher_info(l)?;
    Ok((exact, approx, exact - approx))
}

/// KL profile around an empirical mean: rate and quadratic approximation on
/// a θ grid.
#[derive(Clone, Debug)]
pub struct KlProfile {
    pub center: f64,
    /// (θ, rate, quadratic_approx) triples.
    pub grid: Vec<(f64, f64, f64)>,
}

pub fn kl_profile(center: f64, thetas: &[f64]) -> Result<KlProfile> {
    if !(center > 0.0 && center < 1.0) {
        return Err(Error::Domain(format!(
            "profile center must lie in (0,1), got {center}"
        )));
    }
    let info = fisher_info(center)?;
    let grid = thetas
        .iter()
        .map(|&t| {
            check_unit("θ", t)?;
            let rate = bernoulli_kl_extended(center, t);
            let d = t - center;
            Ok((t, rate, 0.5 * d * d * info))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KlProfile { center, grid })
}

/// Log-score regret of reporting `p_plugin` when `p_bayes` is the true
/// predictive probability of a binary event: the KL divergence between
/// Bernoulli(p_bayes) and Bernoulli(p_plugin), in nats.
pub fn log_score_regret(p_bayes: f64, p_plugin: f64) -> Result<f64> {
    for (name, p) in [("p_bayes", p_bayes), ("p_plugin", p_plugin)] {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("{name}={p} outside (0,1)")));
        }
    }
    bernoulli_kl(p_bayes, p_plugin)
}

/// Brier-score regret `(p_bayes − p_plugin)²`.
pub fn brier_regret(p_bayes: f64, p_plugin: f64) -> f64 {
    let d = p_bayes - p_plugin;
    d * d
}

/// Posterior reconstructed from the Sanov rate: values proportional to
/// `exp{−n·KL(L‖θ)}` times the prior density (grid) or weights (atoms).
#[derive(Clone, Debug)]
pub enum SanovPosterior {
    /// Density values over the supplied grid, normalized by the trapezoid
    /// rule to integrate to one.
    Density { grid: Vec<f64>, values: Vec<f64> },
    /// Reweighted atoms, weights summing to one.
    Atoms {
        locations: Vec<f64>,
        weights: Vec<f64>,
    },
}

impl SanovPosterior {
    /// Mean of the represented measure (trapezoid quadrature on densities).
    pub fn mean(&self) -> f64 {
        match self {
            SanovPosterior::Atoms { locations, weights } => {
                locations.iter().zip(weights).map(|(x, w)| x * w).sum()
            }
            SanovPosterior::Density { grid, values } => trapezoid(
                grid,
                &grid
                    .iter()
                    .zip(values)
                    .map(|(t, v)| t * v)
                    .collect::<Vec<_>>(),
            ),
        }
    }
}

fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (y[0] + y[1]) * (x[1] - x[0]))
        .sum()
}

/// Posterior after `n` observations with empirical mean `L = S_n/n`, shaped
/// by the Sanov rate. `n·L` must be an integer count (within 1e-9). With
/// `n = 0` this returns the prior itself. Beta priors need a strictly
/// interior, strictly increasing grid with at least two points.
pub fn sanov_posterior_density(
    prior: &MixingMeasure<f64>,
    n: u64,
    l: f64,
    grid: &[f64],
) -> Result<SanovPosterior> {
    check_unit("L", l)?;
    let count = n as f64 * l;
    if (count - count.round()).abs() > 1e-9 {
        return Err(Error::Domain(format!(
            "n·L = {count} is not an integer success count"
        )));
    }
    let weight_at = |theta: f64| -> f64 {
        if n == 0 {
            1.0
        } else {
            let rate = bernoulli_kl_extended(l, theta);
            if rate.is_infinite() {
                0.0
            } else {
                (-(n as f64) * rate).exp()
            }
        }
    };
    match prior {
        MixingMeasure::PointMass { location } => Ok(SanovPosterior::Atoms {
            locations: vec![*location],
            weights: vec![1.0],
        }),
        MixingMeasure::Discrete { atoms } => {
            let locations: Vec<f64> = atoms.iter().map(|(x, _)| *x).collect();
            let raw: Vec<f64> = atoms.iter().map(|(x, w)| w * weight_at(*x)).collect();
            let total: f64 = raw.iter().sum();
            if total <= 0.0 {
                return Err(Error::DegeneratePosterior);
            }
            Ok(SanovPosterior::Atoms {
                locations,
                weights: raw.into_iter().map(|w| w / total).collect(),
            })
        }
        MixingMeasure::Beta { alpha, beta } => {
            if grid.len() < 2 {
                return Err(Error::Domain("density grid needs at least 2 points".into()));
            }
            if grid.windows(2).any(|w| w[0] >= w[1])
                || grid[0] <= 0.0
                || *grid.last().unwrap() >= 1.0
            {
                return Err(Error::Domain(
                    "density grid must be strictly increasing inside (0,1)".into(),
                ));
            }
            // Unnormalized prior kernel θ^{α−1}(1−θ)^{β−1}; the trapezoid
            // normalization absorbs the Beta function.
            let raw: Vec<f64> = grid
                .iter()
                .map(|&t| t.powf(alpha - 1.0) * (1.0 - t).powf(beta - 1.0) * weight_at(t))
                .collect();
            let z = trapezoid(grid, &raw);
            if !z.is_finite() || z <= 0.0 {
                return Err(Error::DegeneratePosterior);
            }
            Ok(SanovPosterior::Density {
                grid: grid.to_vec(),
                values: raw.into_iter().map(|v| v / z).collect(),
            })
        }
    }
}

/// One row of the scoring-regret sweep: exact predictives under a rational
/// Beta prior, regrets in double precision.
#[derive(Clone, Debug)]
pub struct RegretRow {
    pub n: u64,
    pub s: u64,
    pub k: u32,
    pub p_bayes: f64,
    pub p_plugin: f64,
    pub kl_regret: f64,
    pub brier_regret: f64,
    pub variance: f64,
}

/// Sweep the log-score and Brier regrets over `(n, k)` with `s = round(frac·n)`.
/// Predictive probabilities come from the exact rational route and are
/// converted to doubles only for the transcendental regret evaluation.
pub fn regret_sweep(
    prior: &MixingMeasure<Rational>,
    n_list: &[u64],
    s_frac: f64,
    k_list: &[u32],
) -> Result<Vec<RegretRow>> {
    if !(0.0..=1.0).contains(&s_frac) {
        return Err(Error::Domain(format!("s fraction {s_frac} outside [0,1]")));
    }
    let mut rows = Vec::new();
    for &n in n_list {
        let s = (s_frac * n as f64).round() as u64;
        let state = crate::measures::PosteriorState::new(prior.clone(), n, s)?;
        let post = crate::measures::posterior(&state)?;
        let (mean, variance) = post.mean_variance();
        let plugin_base = <Rational as Scalar>::one() - mean;
        for &k in k_list {
            if k < 2 {
                return Err(Error::Domain("regret sweep needs k >= 2".into()));
            }
            let p_bayes = predictive::run_prob(&post, k).to_f64();
            let p_plugin = plugin_base.powu(k).to_f64();
            rows.push(RegretRow {
                n,
                s,
                k,
                p_bayes,
                p_plugin,
                kl_regret: log_score_regret(p_bayes, p_plugin)?,
                brier_regret: brier_regret(p_bayes, p_plugin),
                variance: variance.to_f64(),
            });
        }
    }
    Ok(rows)
}
