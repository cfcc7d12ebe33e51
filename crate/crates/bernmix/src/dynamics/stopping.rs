//! Stopping-value distortion: the optimal multi-step continuation value under
//! the full posterior versus its mean-only plug-in.
//!
//! With `V = sup_{2≤τ≤K} E[(1−θ)^τ]` and `Ṽ = sup_{2≤τ≤K} (1−m)^τ`, both
//! suprema sit at τ = 2 because the integrand decreases in τ on `[0,1]`, so
//! `V − Ṽ` equals the posterior variance exactly. The same wedge shifts
//! threshold rules: there are thresholds the Bayes value clears at horizon
//! τ₀ that the plug-in value already fails at τ₀.

use crate::measures::MixingMeasure;
use crate::predictive::run_prob;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// `(V, Ṽ, V − Ṽ)` over horizons `2..=k_max`; the gap equals the posterior
/// variance.
pub fn stopping_value_gap<T: Scalar>(
    posterior: &MixingMeasure<T>,
    k_max: u32,
) -> Result<(T, T, T)> {
    if k_max < 2 {
        return Err(Error::Domain(format!(
            "stopping value needs K >= 2, got {k_max}"
        )));
    }
    let mean = posterior.mean();
    let miss = T::one() - mean;
    let mut value_bayes = run_prob(posterior, 2);
    let mut value_plugin = miss.powu(2);
    for tau in 3..=k_max {
        let b = run_prob(posterior, tau);
        if b > value_bayes {
            value_bayes = b;
        }
        let p = miss.powu(tau);
        if p > value_plugin {
            value_plugin = p;
        }
    }
    let gap = value_bayes.clone() - value_plugin.clone();
    Ok((value_bayes, value_plugin, gap))
}

/// A threshold separating the Bayes and plug-in horizon rules.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryWitness<T: Scalar> {
    /// Midpoint of `((1−m)^{τ₀}, E[(1−θ)^{τ₀}])`.
    pub threshold: T,
    pub tau0: u32,
    /// `max{τ ∈ [2,K] : E[(1−θ)^τ] ≥ r}` — at least τ₀.
    pub tau_bayes: u32,
    /// `max{τ ∈ [2,K] : (1−m)^τ ≥ r}`; `None` when no horizon qualifies.
    pub tau_plugin: Option<u32>,
}

/// Find a threshold `r` with `τ*(r) ≥ τ₀ > τ̃*(r)`, taking `τ₀ = K−1` and
/// `r` midway between the plug-in and Bayes values there. Fails with
/// `NoWitness` for a degenerate posterior (the two rules then coincide).
pub fn stopping_boundary_witness<T: Scalar>(
    posterior: &MixingMeasure<T>,
    k_max: u32,
) -> Result<BoundaryWitness<T>> {
    if k_max < 3 {
        return Err(Error::Domain(format!(
            "boundary witness needs K >= 3, got {k_max}"
        )));
    }
    let (mean, variance) = posterior.mean_variance();
    if variance.is_zero() {
        return Err(Error::NoWitness);
    }
    let tau0 = k_max - 1;
    let miss = T::one() - mean;
    let plugin_tau0 = miss.powu(tau0);
    let bayes_tau0 = run_prob(posterior, tau0);
    debug_assert!(bayes_tau0 > plugin_tau0);
    let threshold = (plugin_tau0 + bayes_tau0) / T::from_int(2);

    let feasible_max = |value_at: &dyn Fn(u32) -> T| -> Option<u32> {
        (2..=k_max).filter(|tau| value_at(*tau) >= threshold).max()
    };
    let tau_bayes = feasible_max(&|tau| run_prob(posterior, tau))
        .expect("τ₀ is feasible for the Bayes value by construction");
    let tau_plugin = feasible_max(&|tau| miss.powu(tau));
    debug_assert!(tau_bayes >= tau0);
    debug_assert!(tau_plugin.is_none_or(|t| t < tau0));
    Ok(BoundaryWitness {
        threshold,
        tau0,
        tau_bayes,
        tau_plugin,
    })
}
