//! Exact rational arithmetic for Beta posteriors with half-integer
//! parameters.
//!
//! Parameters are stored doubled (`alpha2 = 2α`, `beta2 = 2β`), so the
//! Jeffreys prior Beta(1/2, 1/2) and all of its posteriors are integer pairs
//! and every predictive quantity is a ratio of integers. No floating point
//! enters anywhere in this module; decimals are produced only at the display
//! boundary by exact round-half-even conversion.
//!
//! Under Beta(a, b) updated by `(n, s)`:
//! one-step predictive `(a+s)/(a+b+n)`, k-step run probability
//! `(b+n−s)_k / (a+b+n)_k`, and j-th posterior moment `(a+s)_j / (a+b+n)_j`
//! with `(x)_k = x(x+1)···(x+k−1)` the rising factorial.

use crate::scalar::{decimal_string, percent_string, Rational, Scalar};
use crate::{Error, Result};

/// Beta parameters as doubled integers: represents Beta(alpha2/2, beta2/2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BetaParams {
    pub alpha2: u64,
    pub beta2: u64,
}

impl BetaParams {
    pub fn new(alpha2: u64, beta2: u64) -> Result<Self> {
        if alpha2 == 0 || beta2 == 0 {
            return Err(Error::InvalidMeasure(
                "doubled Beta parameters must be at least 1".into(),
            ));
        }
        Ok(Self { alpha2, beta2 })
    }

    /// Jeffreys prior Beta(1/2, 1/2).
    pub fn jeffreys() -> Self {
        Self {
            alpha2: 1,
            beta2: 1,
        }
    }

    /// Uniform prior Beta(1, 1).
    pub fn uniform() -> Self {
        Self {
            alpha2: 2,
            beta2: 2,
        }
    }

    pub fn alpha(&self) -> Rational {
        Rational::from_ratio(self.alpha2 as i64, 2)
    }

    pub fn beta(&self) -> Rational {
        Rational::from_ratio(self.beta2 as i64, 2)
    }
}

fn check_counts(n: u64, s: u64) -> Result<()> {
    if s > n {
        return Err(Error::InvalidCounts { n, s });
    }
    Ok(())
}

/// Rising factorial `(x)_k = x(x+1)···(x+k−1)`; the empty product is 1.
/// Generic over the scalar so the double-precision paths share the formula.
pub fn rising<T: Scalar>(x: &T, k: u32) -> T {
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * (x.clone() + T::from_int(i as i64));
    }
    acc
}

/// Rising factorial on exact rationals.
pub fn rising_factorial(x: &Rational, k: u32) -> Rational {
    rising(x, k)
}

/// Hill one-step predictive under the Jeffreys prior:
/// `P(X_{n+1}=1 | n, s) = (s + 1/2)/(n + 1) = (2s+1)/(2n+2)`.
pub fn hill_one_step(n: u64, s: u64) -> Result<Rational> {
    check_counts(n, s)?;
    Ok(Rational::from_ratio(2 * s as i64 + 1, 2 * n as i64 + 2))
}

/// Jeffreys k-step run probability `(b_n)_k / (N_n)_k` with
/// `b_n = n − s + 1/2` and `N_n = n + 1`. Strictly inside `(0,1)` for `k ≥ 1`.
pub fn hill_run_prob(n: u64, s: u64, k: u32) -> Result<Rational> {
    check_counts(n, s)?;
    if k == 0 {
        return Ok(<Rational as Scalar>::one());
    }
    let b = Rational::from_ratio(2 * (n - s) as i64 + 1, 2);
    let total = Rational::from_int(n as i64 + 1);
    Ok(rising(&b, k) / rising(&total, k))
}

/// j-th posterior moment under `params` updated by `(n, s)`:
/// `(a_n)_j / (N_n)_j` with `a_n = α + s`, `N_n = α + β + n`.
pub fn beta_moment(params: BetaParams, n: u64, s: u64, j: u32) -> Result<Rational> {
    check_counts(n, s)?;
    let a = Rational::from_ratio((params.alpha2 + 2 * s) as i64, 2);
    let total = Rational::from_ratio((params.alpha2 + params.beta2 + 2 * n) as i64, 2);
    Ok(rising(&a, j) / rising(&total, j))
}

/// Exact posterior variance `a_n b_n / (N_n² (N_n + 1))`.
pub fn beta_posterior_variance(params: BetaParams, n: u64, s: u64) -> Result<Rational> {
    check_counts(n, s)?;
    let a = Rational::from_ratio((params.alpha2 + 2 * s) as i64, 2);
    let b = Rational::from_ratio((params.beta2 + 2 * (n - s)) as i64, 2);
    let total = a.clone() + b.clone();
    Ok(a * b / (total.clone() * total.clone() * (total + <Rational as Scalar>::one())))
}

/// One row of the plug-in vs Bayes run-probability comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub k: u32,
    /// `(1 − one-step predictive)^k`
    pub plugin: Rational,
    /// `(b_n)_k / (N_n)_k`
    pub bayes: Rational,
    /// `(bayes − plugin) / bayes`
    pub relative_gap: Rational,
}

impl TableRow {
    /// Display rendering: probabilities to 3 decimals, gap as percent with
    /// one decimal, all by exact round-half-even conversion.
    pub fn rendered(&self) -> (String, String, String) {
        (
            decimal_string(&self.plugin, 3),
            decimal_string(&self.bayes, 3),
            percent_string(&self.relative_gap),
        )
    }
}

/// Jeffreys plug-in vs Bayes comparison rows for `k = 2..=k_max`.
pub fn comparison_table(n: u64, s: u64, k_max: u32) -> Result<Vec<TableRow>> {
    check_counts(n, s)?;
    if k_max < 2 {
        return Err(Error::InvalidSequence(
            "comparison table needs k_max >= 2".into(),
        ));
    }
    let one_step = hill_one_step(n, s)?;
    let miss = <Rational as Scalar>::one() - one_step;
    (2..=k_max)
        .map(|k| {
            let plugin = miss.powu(k);
            let bayes = hill_run_prob(n, s, k)?;
            let relative_gap = (bayes.clone() - plugin.clone()) / bayes.clone();
            Ok(TableRow {
                k,
                plugin,
                bayes,
                relative_gap,
            })
        })
        .collect()
}
