//! Predictive schemes built on a mean process θ_n. Each scheme prescribes a
//! deterministic update of θ from the incoming bit and a driving law under
//! which θ is a martingale (see [`Scheme::driving_prob`]); the one-step
//! predictive law is Bernoulli(θ_n) in every case.
//!
//! Three variants:
//! - `Counterexample`: θ_n = 1/2 + Σ_{i≤n} c_i (2X_i − 1) with c_i = 2^{−(i+2)}.
//!   A bounded martingale confined to [1/4, 3/4] that depends on the order of
//!   observations, so it is not a posterior mean under any exchangeable law —
//!   yet its look-ahead laws all match Bernoulli(θ_n).
//! - `LearningRate`: θ_m = θ_{m−1} + γ_m (X_m − θ_{m−1}). With γ_m = 1/(m+c)
//!   this reproduces the Beta(cθ₀, c(1−θ₀)) posterior mean exactly.
//! - `BayesMean`: the posterior mean under a mixing-measure prior.

use crate::measures::{posterior, MixingMeasure, PosteriorState};
use crate::rng::SplitMix64;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Learning-rate sequence for the stochastic-approximation scheme; the
/// update producing observation count `m` uses `γ_m`.
#[derive(Clone, Debug, PartialEq)]
pub enum GammaSpec<T: Scalar> {
    /// `γ_m = 1/(m + c)`. The scheme then equals a conjugate posterior mean
    /// and the limit law of θ is a known Beta.
    OneOverNPlusC { c: T },
    /// `γ_m = m^{−α}` (embedded exactly from the double value). Note
    /// `γ_1 = 1` for every α: the first observation replaces θ₀ outright,
    /// matching the α = 1 case, which is the running sample mean
    /// (`OneOverNPlusC` with `c = 0`). For α ≠ 1 the limit law of θ is
    /// generally not available in closed form, so simulated paths under
    /// this rate are exploratory output only.
    Power { alpha: f64 },
}

impl<T: Scalar> GammaSpec<T> {
    fn gamma_at(&self, m: u64) -> T {
        match self {
            GammaSpec::OneOverNPlusC { c } => T::one() / (T::from_int(m as i64) + c.clone()),
            GammaSpec::Power { alpha } => T::from_f64((m as f64).powf(-alpha)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scheme<T: Scalar> {
    Counterexample,
    LearningRate { gamma: GammaSpec<T>, theta0: T },
    BayesMean { prior: MixingMeasure<T> },
}

/// Running state: current mean θ, number of observations, success count.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeState<T: Scalar> {
    pub theta: T,
    pub n: u64,
    pub s: u64,
}

/// Signed dyadic coefficient c_i = 2^{−(i+2)} of the bounded-martingale
/// construction (exact as a double for every i that matters at desk scale).
pub fn counterexample_coeff<T: Scalar>(i: u64) -> T {
    T::from_f64(0.5f64.powi((i + 2) as i32))
}

impl<T: Scalar> Scheme<T> {
    /// Law of the next observation under which θ is a martingale. The
    /// bounded-martingale construction is driven by a fair coin (its θ is a
    /// signed sum of the centred increments 2X−1); the learning-rate and
    /// posterior-mean schemes are martingales under their own predictive law
    /// `X_{n+1} | F_n ~ Bernoulli(θ_n)`.
    pub fn driving_prob(&self, state: &SchemeState<T>) -> T {
        match self {
            Scheme::Counterexample => T::from_ratio(1, 2),
            _ => state.theta.clone(),
        }
    }
}

pub fn initial_state<T: Scalar>(scheme: &Scheme<T>) -> SchemeState<T> {
    let theta = match scheme {
        Scheme::Counterexample => T::from_ratio(1, 2),
        Scheme::LearningRate { theta0, .. } => theta0.clone(),
        Scheme::BayesMean { prior } => prior.mean(),
    };
    SchemeState { theta, n: 0, s: 0 }
}

/// Advance the scheme by one observation.
pub fn step_scheme<T: Scalar>(
    scheme: &Scheme<T>,
    state: &SchemeState<T>,
    x: bool,
) -> Result<SchemeState<T>> {
    let m = state.n + 1;
    let s = state.s + u64::from(x);
    let theta = match scheme {
        Scheme::Counterexample => {
            let sign = if x { T::one() } else { -T::one() };
            state.theta.clone() + counterexample_coeff::<T>(m) * sign
        }
        Scheme::LearningRate { gamma, .. } => {
            let g = gamma.gamma_at(m);
            let xv = if x { T::one() } else { T::zero() };
            state.theta.clone() + g * (xv - state.theta.clone())
        }
        Scheme::BayesMean { prior } => {
            posterior(&PosteriorState::new(prior.clone(), m, s)?)?.mean()
        }
    };
    Ok(SchemeState { theta, n: m, s })
}

/// θ after feeding the whole path from the initial state.
pub fn theta_on_path<T: Scalar>(scheme: &Scheme<T>, path: &[bool]) -> Result<T> {
    let mut state = initial_state(scheme);
    for &x in path {
        state = step_scheme(scheme, &state, x)?;
    }
    Ok(state.theta)
}

/// Outcome of the order-dependence enumeration.
#[derive(Clone, Debug, PartialEq)]
pub enum OrderCheck<T: Scalar> {
    /// θ_n is a function of (n, S_n) on every enumerated path.
    ExchangeConsistent,
    /// Two paths with equal length and success count but different θ.
    Witness {
        path_a: Vec<bool>,
        path_b: Vec<bool>,
        theta_a: T,
        theta_b: T,
    },
}

/// Enumerate all paths of length ≤ 4 and look for a pair with equal `S_n`
/// but different θ_n. Exact comparison in rational mode, 1e-12 in doubles.
pub fn order_dependence_check<T: Scalar>(scheme: &Scheme<T>) -> Result<OrderCheck<T>> {
    let tol = if T::EXACT {
        T::zero()
    } else {
        T::from_ratio(1, 1_000_000_000_000)
    };
    for len in 1u32..=4 {
        // first path seen for each success count
        let mut seen: Vec<Option<(Vec<bool>, T)>> = vec![None; len as usize + 1];
        for bits in 0..(1u32 << len) {
            let path: Vec<bool> = (0..len).map(|i| bits >> i & 1 == 1).collect();
            let s = path.iter().filter(|b| **b).count();
            let theta = theta_on_path(scheme, &path)?;
            match &seen[s] {
                None => seen[s] = Some((path, theta)),
                Some((prev_path, prev_theta)) => {
                    if (theta.clone() - prev_theta.clone()).abs() > tol {
                        return Ok(OrderCheck::Witness {
                            path_a: prev_path.clone(),
                            path_b: path,
                            theta_a: prev_theta.clone(),
                            theta_b: theta,
                        });
                    }
                }
            }
        }
    }
    Ok(OrderCheck::ExchangeConsistent)
}

/// Monte Carlo check that `E[X_{n+j} | F_n] = θ_n` for every look-ahead
/// `j ≤ horizon`.
#[derive(Clone, Debug)]
pub struct CidReport {
    /// θ_n at the conditioning state (reached by a seeded prefix path).
    pub theta_n: f64,
    pub prefix: Vec<bool>,
    /// Per-j `(estimate, std_error, deviation)`.
    pub rows: Vec<(u32, f64, f64, f64)>,
    pub max_sigmas: f64,
    pub pass: bool,
}

/// Simulate `replications` continuations of a fixed length-`n` prefix and
/// compare the frequency of `X_{n+j} = 1` with θ_n, for each `j ≤ horizon`.
/// Pass iff every deviation is within 3 binomial standard errors.
pub fn cid_check(
    scheme: &Scheme<f64>,
    n: u64,
    horizon: u32,
    replications: u64,
    seed: u64,
) -> Result<CidReport> {
    if replications < 1_000 {
        return Err(Error::InvalidSpec(format!(
            "cid check needs at least 1000 replications, got {replications}"
        )));
    }
    if horizon == 0 {
        return Err(Error::InvalidSpec("cid check needs horizon >= 1".into()));
    }
    // Fixed prefix from a dedicated stream; replicates use streams 1..=R.
    let mut prefix_rng = SplitMix64::stream(seed, 0);
    let mut state = initial_state(scheme);
    let mut prefix = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let x = prefix_rng.bernoulli(state.theta);
        prefix.push(x);
        state = step_scheme(scheme, &state, x)?;
    }
    let theta_n = state.theta;

    let mut ones = vec![0u64; horizon as usize];
    for r in 0..replications {
        let mut rng = SplitMix64::stream(seed, r + 1);
        let mut cur = state.clone();
        for slot in ones.iter_mut() {
            let x = rng.bernoulli(cur.theta);
            if x {
                *slot += 1;
            }
            cur = step_scheme(scheme, &cur, x)?;
        }
    }
    let se = (theta_n * (1.0 - theta_n) / replications as f64)
        .sqrt()
        .max(f64::EPSILON);
    let mut rows = Vec::with_capacity(horizon as usize);
    let mut max_sigmas = 0.0f64;
    for (idx, count) in ones.iter().enumerate() {
        let estimate = *count as f64 / replications as f64;
        let deviation = (estimate - theta_n).abs();
        max_sigmas = max_sigmas.max(deviation / se);
        rows.push((idx as u32 + 1, estimate, se, deviation));
    }
    Ok(CidReport {
        theta_n,
        prefix,
        rows,
        max_sigmas,
        pass: max_sigmas <= 3.0,
    })
}
