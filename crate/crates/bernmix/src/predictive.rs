//! k-step predictive probabilities and their plug-in counterparts.
//!
//! For an exchangeable Bernoulli sequence with posterior mixing measure Π,
//! the probability that the next `k` observations trace a given bit pattern
//! with `s` ones is `E[θ^s (1−θ)^{k−s}]` under Π. The all-zeros case is the
//! `k`-step run probability `E[(1−θ)^k]`.
//!
//! The plug-in predictive replaces Π by a point mass at its mean; for `k ≥ 2`
//! it strictly underestimates the run probability whenever Π has positive
//! variance, by an amount between 0 and `k(k−1)/2 · Var(θ)`.

use crate::measures::MixingMeasure;
use crate::rng::SplitMix64;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Hard cap for pattern enumeration (2^k terms).
pub const MAX_ENUMERATION_LEN: u32 = 30;

/// A finite 0/1 pattern for the next `k` observations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    bits: Vec<bool>,
}

impl Pattern {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidPattern("pattern must be non-empty".into()));
        }
        Ok(Self { bits })
    }

    /// Parse from a string of `0`/`1` characters.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidPattern(format!(
                    "unexpected character {other:?} in pattern {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    pub fn zeros(k: u32) -> Result<Self> {
        Self::new(vec![false; k as usize])
    }

    pub fn ones(k: u32) -> Result<Self> {
        Self::new(vec![true; k as usize])
    }

    pub fn len(&self) -> u32 {
        self.bits.len() as u32
    }

    /// Always false: the constructor rejects empty patterns.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of ones.
    pub fn ones_count(&self) -> u32 {
        self.bits.iter().filter(|b| **b).count() as u32
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            write!(f, "{}", if *b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// `E[θ^s (1−θ)^{k−s}]` under the measure, where `s` counts the ones of the
/// pattern. Over all 2^k patterns of a fixed length these sum to one.
pub fn pattern_prob<T: Scalar>(posterior: &MixingMeasure<T>, pattern: &Pattern) -> T {
    block_prob(posterior, pattern.ones_count(), pattern.len())
}

/// `E[θ^s (1−θ)^{k−s}]` by success count; every pattern with the same count
/// has the same probability (exchangeability).
pub fn block_prob<T: Scalar>(posterior: &MixingMeasure<T>, s: u32, k: u32) -> T {
    debug_assert!(s <= k);
    match posterior {
        MixingMeasure::PointMass { location } => {
            location.powu(s) * (T::one() - location.clone()).powu(k - s)
        }
        MixingMeasure::Discrete { atoms } => atoms
            .iter()
            .map(|(x, w)| w.clone() * x.powu(s) * (T::one() - x.clone()).powu(k - s))
            .fold(T::zero(), |acc, t| acc + t),
        // (α)_s (β)_{k−s} / (α+β)_k — the rising-factorial formula, taken as
        // a product of bounded ratios so the double path cannot overflow at
        // large parameters or horizons.
        MixingMeasure::Beta { alpha, beta } => {
            let total = alpha.clone() + beta.clone();
            let mut acc = T::one();
            for i in 0..s {
                let i = T::from_int(i as i64);
                acc = acc * ((alpha.clone() + i.clone()) / (total.clone() + i));
            }
            let shift = T::from_int(s as i64);
            for j in 0..(k - s) {
                let j = T::from_int(j as i64);
                acc = acc * ((beta.clone() + j.clone()) / (total.clone() + shift.clone() + j));
            }
            acc
        }
    }
}

/// k-step run probability `E[(1−θ)^k]` (the all-zeros pattern).
pub fn run_prob<T: Scalar>(posterior: &MixingMeasure<T>, k: u32) -> T {
    block_prob(posterior, 0, k)
}

/// Sum of pattern probabilities over all 2^k patterns of length `k`;
/// equals one for every probability measure.
pub fn pattern_total<T: Scalar>(posterior: &MixingMeasure<T>, k: u32) -> Result<T> {
    if k == 0 || k > MAX_ENUMERATION_LEN {
        return Err(Error::InvalidPattern(format!(
            "enumeration length must be in 1..={MAX_ENUMERATION_LEN}, got {k}"
        )));
    }
    let table = crate::hierarchy::BinomialTable::new(k)?;
    let mut acc = T::zero();
    for s in 0..=k {
        let count = T::from_int(table.choose(k, s));
        acc = acc + count * block_prob(posterior, s, k);
    }
    Ok(acc)
}

/// Bayes vs plug-in comparison for the k-step run probability.
#[derive(Clone, Debug, PartialEq)]
pub struct GapReport<T: Scalar> {
    pub k: u32,
    /// `E[(1−θ)^k]` under the posterior.
    pub bayes: T,
    /// `(1 − mean)^k`.
    pub plugin: T,
    /// `bayes − plugin`; zero iff the posterior is degenerate (for k ≥ 2).
    pub gap: T,
    /// Second-order bound `k(k−1)/2 · Var(θ)`.
    pub upper_bound: T,
    pub variance: T,
}

/// Compare Bayes and plug-in run probabilities at horizon `k ≥ 2`.
pub fn gap_report<T: Scalar>(posterior: &MixingMeasure<T>, k: u32) -> Result<GapReport<T>> {
    if k < 2 {
        return Err(Error::Domain(format!("gap report needs k >= 2, got {k}")));
    }
    let (mean, variance) = posterior.mean_variance();
    let bayes = run_prob(posterior, k);
    let plugin = (T::one() - mean).powu(k);
    let gap = bayes.clone() - plugin.clone();
    let half_kk1 = T::from_ratio((k as i64) * (k as i64 - 1), 2);
    let upper_bound = half_kk1 * variance.clone();
    if T::EXACT {
        debug_assert!(gap >= T::zero() && gap <= upper_bound);
    } else {
        debug_assert!(
            gap.to_f64() >= -1e-12 && gap.to_f64() <= upper_bound.to_f64() + 1e-12,
            "gap {gap:?} outside [0, {upper_bound:?}]"
        );
    }
    Ok(GapReport {
        k,
        bayes,
        plugin,
        gap,
        upper_bound,
        variance,
    })
}

/// Range of the k-step run probability over all posteriors with mean `m`:
/// from `(1−m)^k` (point mass at `m`) to `1−m` (mass split between 0 and 1).
/// Both endpoints are attained by the named measures; interior values are
/// reachable through Beta families, though no constructive inverse from an
/// interior value back to a measure is provided here.
pub fn predictive_range<T: Scalar>(m: &T, k: u32) -> Result<(T, T)> {
    if *m <= T::zero() || *m >= T::one() {
        return Err(Error::Domain(format!(
            "mean must lie strictly in (0,1), got {m}"
        )));
    }
    if k < 2 {
        return Err(Error::Domain(format!("range needs k >= 2, got {k}")));
    }
    let hi = T::one() - m.clone();
    let lo = hi.powu(k);
    Ok((lo, hi))
}

/// Functional whose posterior expectation is probed by [`nonid_witness`].
#[derive(Clone, Debug, PartialEq)]
pub enum Functional<T: Scalar> {
    /// `θ^k`, strictly convex for `k ≥ 2` (the all-ones block probability).
    Power(u32),
    /// `1[θ ≤ t]` — the posterior CDF at `t`.
    Indicator(T),
    /// Bernoulli entropy `−θ ln θ − (1−θ) ln(1−θ)` (nats), strictly concave.
    Entropy,
}

impl<T: Scalar> Functional<T> {
    fn eval(&self, theta: &T) -> f64 {
        match self {
            Functional::Power(k) => theta.powu(*k).to_f64(),
            Functional::Indicator(t) => {
                if *theta <= *t {
                    1.0
                } else {
                    0.0
                }
            }
            Functional::Entropy => binary_entropy(theta.to_f64()),
        }
    }
}

fn binary_entropy(p: f64) -> f64 {
    let side = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.ln() };
    side(p) + side(1.0 - p)
}

fn expect_atomic<T: Scalar>(measure: &MixingMeasure<T>, f: &Functional<T>) -> f64 {
    match measure {
        MixingMeasure::PointMass { location } => f.eval(location),
        MixingMeasure::Discrete { atoms } => {
            atoms.iter().map(|(x, w)| w.to_f64() * f.eval(x)).sum()
        }
        MixingMeasure::Beta { .. } => unreachable!("witness measures are atomic"),
    }
}

/// Two measures with the same mean that a non-affine functional separates.
#[derive(Clone, Debug)]
pub struct WitnessReport<T: Scalar> {
    /// δ_m — the plug-in posterior.
    pub degenerate: MixingMeasure<T>,
    /// Two-point measure on the bracket with the same mean.
    pub spread: MixingMeasure<T>,
    pub value_degenerate: f64,
    pub value_spread: f64,
}

/// Build the point mass δ_m and the bracket two-point measure with mean `m`,
/// and evaluate `E[f]` under both. For strictly convex `f` the spread value
/// is strictly larger; for strictly concave `f`, strictly smaller. Either
/// way the two values differ, so the mean alone does not determine `E[f]`.
pub fn nonid_witness<T: Scalar>(
    m: &T,
    functional: &Functional<T>,
    bracket: (T, T),
) -> Result<WitnessReport<T>> {
    if let Functional::Power(k) = functional {
        if *k < 2 {
            return Err(Error::Domain("power witness needs k >= 2".into()));
        }
    }
    if *m <= T::zero() || *m >= T::one() {
        return Err(Error::Domain(format!(
            "mean must lie strictly in (0,1), got {m}"
        )));
    }
    let (a, b) = bracket;
    let degenerate = MixingMeasure::point_mass(m.clone())?;
    let spread = crate::measures::two_point_with_mean(a, b, m.clone())?;
    let value_degenerate = expect_atomic(&degenerate, functional);
    let value_spread = expect_atomic(&spread, functional);
    Ok(WitnessReport {
        degenerate,
        spread,
        value_degenerate,
        value_spread,
    })
}

/// Monte Carlo check of a pattern probability by block simulation.
#[derive(Clone, Debug)]
pub struct McPatternCheck {
    pub exact: f64,
    pub estimate: f64,
    /// Binomial standard error at the exact probability.
    pub std_error: f64,
    pub replications: u64,
}

impl McPatternCheck {
    pub fn deviation(&self) -> f64 {
        (self.estimate - self.exact).abs()
    }
    pub fn within(&self, sigmas: f64) -> bool {
        self.deviation() <= sigmas * self.std_error
    }
}

/// Simulate `replications` conditionally i.i.d. Bernoulli blocks (draw θ from
/// the posterior, then the block) and compare the pattern frequency with
/// [`pattern_prob`]. Replicate `r` uses RNG stream `(seed, r)`.
pub fn pattern_monte_carlo<T: Scalar>(
    posterior: &MixingMeasure<T>,
    pattern: &Pattern,
    replications: u64,
    seed: u64,
) -> McPatternCheck {
    let exact = pattern_prob(posterior, pattern).to_f64();
    let mut hits = 0u64;
    for r in 0..replications {
        let mut rng = SplitMix64::stream(seed, r);
        let theta = posterior.sample_theta(&mut rng);
        let matched = pattern
            .bits()
            .iter()
            .all(|bit| rng.bernoulli(theta) == *bit);
        if matched {
            hits += 1;
        }
    }
    let estimate = hits as f64 / replications as f64;
    let std_error = (exact * (1.0 - exact) / replications as f64).sqrt();
    McPatternCheck {
        exact,
        estimate,
        std_error,
        replications,
    }
}
