//! Parsers for the command-line mini-grammars: priors, schemes, and
//! comma-separated lists. All numeric values are read as exact rationals
//! (decimal strings, integers, exponent notation, or `p/q`).

use anyhow::{anyhow, bail, Context, Result};
use bernmix::dynamics::{GammaSpec, Scheme};
use bernmix::measures::MixingMeasure;
use bernmix::scalar::{parse_rational, Rational, Scalar};

/// Prior grammar: `jeffreys`, `uniform`, `beta:a,b`, `point:m`,
/// `discrete:x1,w1;x2,w2;...`.
pub fn parse_prior(s: &str) -> Result<MixingMeasure<Rational>> {
    let lower = s.trim().to_ascii_lowercase();
    match lower.as_str() {
        "jeffreys" => return Ok(MixingMeasure::jeffreys()),
        "uniform" => return Ok(MixingMeasure::uniform()),
        _ => {}
    }
    let (kind, rest) = lower
        .split_once(':')
        .ok_or_else(|| anyhow!("cannot parse prior {s:?}: expected jeffreys, uniform, beta:a,b, point:m, or discrete:x1,w1;..."))?;
    match kind {
        "beta" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 2 {
                bail!("beta prior needs two parameters, got {rest:?}");
            }
            let alpha = parse_rational(parts[0]).context("alpha")?;
            let beta = parse_rational(parts[1]).context("beta")?;
            Ok(MixingMeasure::beta(alpha, beta)?)
        }
        "point" => {
            let loc = parse_rational(rest).context("location")?;
            Ok(MixingMeasure::point_mass(loc)?)
        }
        "discrete" => {
            let mut atoms = Vec::new();
            for pair in rest.split(';') {
                let (x, w) = pair
                    .split_once(',')
                    .ok_or_else(|| anyhow!("discrete atom {pair:?} needs location,weight"))?;
                atoms.push((parse_rational(x)?, parse_rational(w)?));
            }
            Ok(MixingMeasure::discrete(atoms)?)
        }
        other => bail!("unknown prior family {other:?}"),
    }
}

/// Scheme grammar: `counterexample`, `learning-rate:c=C,theta0=T`,
/// `power:alpha=A,theta0=T`, `bayes-mean:<prior>`.
pub fn parse_scheme(s: &str) -> Result<Scheme<f64>> {
    let lower = s.trim().to_ascii_lowercase();
    if lower == "counterexample" {
        return Ok(Scheme::Counterexample);
    }
    let (kind, rest) = lower
        .split_once(':')
        .ok_or_else(|| anyhow!("cannot parse scheme {s:?}"))?;
    match kind {
        "bayes-mean" => {
            let prior = parse_prior(rest)?;
            Ok(Scheme::BayesMean {
                prior: rational_measure_to_f64(&prior),
            })
        }
        "learning-rate" | "power" => {
            let mut c = None;
            let mut alpha = None;
            let mut theta0 = None;
            for kv in rest.split(',') {
                let (key, value) = kv
                    .split_once('=')
                    .ok_or_else(|| anyhow!("expected key=value, got {kv:?}"))?;
                let value: f64 = value.parse().with_context(|| format!("value of {key}"))?;
                match key {
                    "c" => c = Some(value),
                    "alpha" => alpha = Some(value),
                    "theta0" => theta0 = Some(value),
                    other => bail!("unknown scheme field {other:?}"),
                }
            }
            let theta0 = theta0.ok_or_else(|| anyhow!("scheme needs theta0=..."))?;
            if !(0.0..=1.0).contains(&theta0) {
                bail!("theta0 must lie in [0,1]");
            }
            let gamma = if kind == "learning-rate" {
                GammaSpec::OneOverNPlusC {
                    c: c.ok_or_else(|| anyhow!("learning-rate scheme needs c=..."))?,
                }
            } else {
                GammaSpec::Power {
                    alpha: alpha.ok_or_else(|| anyhow!("power scheme needs alpha=..."))?,
                }
            };
            Ok(Scheme::LearningRate { gamma, theta0 })
        }
        other => bail!("unknown scheme {other:?}"),
    }
}

pub fn rational_measure_to_f64(m: &MixingMeasure<Rational>) -> MixingMeasure<f64> {
    match m {
        MixingMeasure::PointMass { location } => MixingMeasure::PointMass {
            location: location.to_f64(),
        },
        MixingMeasure::Beta { alpha, beta } => MixingMeasure::Beta {
            alpha: alpha.to_f64(),
            beta: beta.to_f64(),
        },
        MixingMeasure::Discrete { atoms } => MixingMeasure::Discrete {
            atoms: atoms
                .iter()
                .map(|(x, w)| (x.to_f64(), w.to_f64()))
                .collect(),
        },
    }
}

pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|part| parse_rational(part).map_err(Into::into))
        .collect()
}

pub fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|part| part.trim().parse::<u64>().context("integer list"))
        .collect()
}

pub fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|part| part.trim().parse::<u32>().context("integer list"))
        .collect()
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|part| part.trim().parse::<f64>().context("number list"))
        .collect()
}
