//! Mixing measures on `[0,1]` and exchangeable posterior updating.
//!
//! A mixing measure is the de Finetti prior (or posterior) of an exchangeable
//! Bernoulli sequence. Three families are supported: point masses, finite
//! discrete measures, and Beta laws. The pair `(n, S_n)` is sufficient, so a
//! [`PosteriorState`] is just `(prior, n, s)` and updating is independent of
//! the observation order.

use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::{Error, Result};

/// A probability measure on `[0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum MixingMeasure<T: Scalar> {
    /// Degenerate measure δ_location.
    PointMass { location: T },
    /// Finitely many atoms with positive weights summing to one.
    /// Atoms are kept sorted by location; exact duplicates are merged at
    /// construction (near-duplicates are kept distinct).
    Discrete { atoms: Vec<(T, T)> },
    /// Beta(α, β) with strictly positive parameters.
    Beta { alpha: T, beta: T },
}

impl<T: Scalar> MixingMeasure<T> {
    pub fn point_mass(location: T) -> Result<Self> {
        if !in_unit_interval(&location) {
            return Err(Error::InvalidMeasure(format!(
                "point mass location {location} outside [0,1]"
            )));
        }
        Ok(Self::PointMass { location })
    }

    pub fn beta(alpha: T, beta: T) -> Result<Self> {
        if alpha <= T::zero() || beta <= T::zero() {
            return Err(Error::InvalidMeasure(format!(
                "Beta parameters must be positive, got ({alpha}, {beta})"
            )));
        }
        if !alpha.to_f64().is_finite() || !beta.to_f64().is_finite() {
            return Err(Error::InvalidMeasure("non-finite Beta parameter".into()));
        }
        Ok(Self::Beta { alpha, beta })
    }

    /// Jeffreys prior Beta(1/2, 1/2).
    pub fn jeffreys() -> Self {
        Self::Beta {
            alpha: T::from_ratio(1, 2),
            beta: T::from_ratio(1, 2),
        }
    }

    /// Uniform prior Beta(1, 1).
    pub fn uniform() -> Self {
        Self::Beta {
            alpha: T::one(),
            beta: T::one(),
        }
    }

    /// Build a discrete measure. Weights must be positive and sum to one
    /// within 1e-12; the stored weights are renormalized to an exact unit
    /// total. Exact duplicate locations are merged.
    pub fn discrete(atoms: Vec<(T, T)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("discrete measure needs atoms".into()));
        }
        let mut total = T::zero();
        for (x, w) in &atoms {
            if !in_unit_interval(x) {
                return Err(Error::InvalidMeasure(format!(
                    "atom location {x} outside [0,1]"
                )));
            }
            if *w <= T::zero() || !w.to_f64().is_finite() {
                return Err(Error::InvalidMeasure(format!(
                    "atom weight {w} not positive"
                )));
            }
            total = total + w.clone();
        }
        if (total.to_f64() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMeasure(format!(
                "atom weights sum to {total}, expected 1"
            )));
        }
        let mut atoms: Vec<(T, T)> = atoms
            .into_iter()
            .map(|(x, w)| (x, w / total.clone()))
            .collect();
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite locations"));
        let mut merged: Vec<(T, T)> = Vec::with_capacity(atoms.len());
        for (x, w) in atoms {
            match merged.last_mut() {
                Some((px, pw)) if *px == x => *pw = pw.clone() + w,
                _ => merged.push((x, w)),
            }
        }
        Ok(Self::Discrete { atoms: merged })
    }

    /// j-th raw moment ∫ θ^j dΠ. Total on valid measures; `j = 0` is exactly 1.
    pub fn moment(&self, j: u32) -> T {
        if j == 0 {
            return T::one();
        }
        match self {
            Self::PointMass { location } => location.powu(j),
            Self::Discrete { atoms } => atoms
                .iter()
                .map(|(x, w)| w.clone() * x.powu(j))
                .fold(T::zero(), |acc, t| acc + t),
            // Product form of the Beta moment: ∏_{i<j} (α+i)/(α+β+i).
            // Exact for rational parameters; no Gamma functions involved.
            Self::Beta { alpha, beta } => {
                let total = alpha.clone() + beta.clone();
                let mut acc = T::one();
                for i in 0..j {
                    let i = T::from_int(i as i64);
                    acc = acc * ((alpha.clone() + i.clone()) / (total.clone() + i));
                }
                acc
            }
        }
    }

    /// Mean and variance `(μ₁, μ₂ − μ₁²)`.
    pub fn mean_variance(&self) -> (T, T) {
        let m1 = self.moment(1);
        let m2 = self.moment(2);
        let mut var = m2 - m1.clone() * m1.clone();
        if !T::EXACT && var < T::zero() {
            debug_assert!(var.to_f64() > -1e-12, "variance {var:?} below roundoff");
            var = T::zero();
        }
        (m1, var)
    }

    pub fn mean(&self) -> T {
        self.moment(1)
    }

    pub fn variance(&self) -> T {
        self.mean_variance().1
    }

    /// Draw θ from the measure (double precision; used by Monte Carlo code).
    pub fn sample_theta<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            Self::PointMass { location } => location.to_f64(),
            Self::Discrete { atoms } => {
                let u: f64 = rng.gen::<f64>();
                let mut acc = 0.0;
                for (x, w) in atoms {
                    acc += w.to_f64();
                    if u < acc {
                        return x.to_f64();
                    }
                }
                atoms.last().expect("non-empty").0.to_f64()
            }
            Self::Beta { alpha, beta } => {
                let d = rand_distr::Beta::new(alpha.to_f64(), beta.to_f64())
                    .expect("positive Beta parameters");
                d.sample(rng)
            }
        }
    }
}

fn in_unit_interval<T: Scalar>(x: &T) -> bool {
    x.to_f64().is_finite() && *x >= T::zero() && *x <= T::one()
}

/// Sufficient-statistic view of the data: prior plus `(n, S_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PosteriorState<T: Scalar> {
    pub prior: MixingMeasure<T>,
    pub n: u64,
    pub s: u64,
}

impl<T: Scalar> PosteriorState<T> {
    pub fn new(prior: MixingMeasure<T>, n: u64, s: u64) -> Result<Self> {
        if s > n {
            return Err(Error::InvalidCounts { n, s });
        }
        Ok(Self { prior, n, s })
    }
}

/// Posterior measure given `(n, s)` successes.
///
/// Beta(a,b) maps to Beta(a+s, b+n−s); a discrete prior is reweighted by the
/// likelihood `θ^s (1−θ)^{n−s}` and renormalized, dropping atoms whose
/// likelihood is exactly zero; a point mass is fixed. The variant family is
/// preserved.
pub fn posterior<T: Scalar>(state: &PosteriorState<T>) -> Result<MixingMeasure<T>> {
    let n = state.n;
    let s = state.s;
    match &state.prior {
        MixingMeasure::PointMass { location } => Ok(MixingMeasure::PointMass {
            location: location.clone(),
        }),
        MixingMeasure::Beta { alpha, beta } => Ok(MixingMeasure::Beta {
            alpha: alpha.clone() + T::from_int(s as i64),
            beta: beta.clone() + T::from_int((n - s) as i64),
        }),
        MixingMeasure::Discrete { atoms } => {
            let mut reweighted: Vec<(T, T)> = Vec::with_capacity(atoms.len());
            let mut total = T::zero();
            for (x, w) in atoms {
                let lik = x.powu(s as u32) * (T::one() - x.clone()).powu((n - s) as u32);
                if lik.is_zero() {
                    continue;
                }
                let rw = w.clone() * lik;
                total = total + rw.clone();
                reweighted.push((x.clone(), rw));
            }
            if reweighted.is_empty() || total.is_zero() {
                return Err(Error::DegeneratePosterior);
            }
            let atoms = reweighted
                .into_iter()
                .map(|(x, w)| (x, w / total.clone()))
                .collect();
            Ok(MixingMeasure::Discrete { atoms })
        }
    }
}

/// Two-point measure `λδ_a + (1−λ)δ_b` with `λ = (b−m)/(b−a)`, whose mean is
/// exactly `m`. Requires `0 ≤ a < m < b ≤ 1`.
pub fn two_point_with_mean<T: Scalar>(a: T, b: T, m: T) -> Result<MixingMeasure<T>> {
    let ok = T::zero() <= a && a < m && m < b && b <= T::one();
    if !ok {
        return Err(Error::InvalidBracket {
            a: a.to_string(),
            m: m.to_string(),
            b: b.to_string(),
        });
    }
    let lambda = (b.clone() - m) / (b.clone() - a.clone());
    let atoms = vec![(a, lambda.clone()), (b, T::one() - lambda)];
    MixingMeasure::discrete(atoms)
}

/// Moment sequence `(μ_0, …, μ_K)` of a measure on `[0,1]`: starts at one,
/// stays in `[0,1]`, non-increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence<T: Scalar> {
    values: Vec<T>,
}

impl<T: Scalar> MomentSequence<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        validate_monotone_unit_sequence(&values, "moment")?;
        Ok(Self { values })
    }

    /// Moments `0..=max_order` of a mixing measure.
    pub fn of_measure(measure: &MixingMeasure<T>, max_order: u32) -> Self {
        let values = (0..=max_order).map(|j| measure.moment(j)).collect();
        Self { values }
    }

    pub(crate) fn from_raw(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Highest moment order K.
    pub fn max_order(&self) -> u32 {
        (self.values.len() - 1) as u32
    }
}

pub(crate) fn validate_monotone_unit_sequence<T: Scalar>(values: &[T], kind: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidSequence(format!("{kind} sequence is empty")));
    }
    if values[0] != T::one() {
        return Err(Error::InvalidSequence(format!(
            "{kind} sequence must start at 1, got {}",
            values[0]
        )));
    }
    // Exact mode compares rationals directly; double mode allows roundoff.
    let slack = if T::EXACT {
        T::zero()
    } else {
        T::from_ratio(1, 1_000_000_000_000)
    };
    for (i, v) in values.iter().enumerate() {
        if !v.to_f64().is_finite()
            || *v < T::zero() - slack.clone()
            || *v > T::one() + slack.clone()
        {
            return Err(Error::InvalidSequence(format!(
                "{kind} value {v} at index {i} outside [0,1]"
            )));
        }
        if i > 0 && *v > values[i - 1].clone() + slack.clone() {
            return Err(Error::InvalidSequence(format!(
                "{kind} sequence increases at index {i}: {} -> {v}",
                values[i - 1]
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Serialization: {"type": "beta"|"discrete"|"point", ...} with parameters as
// decimal strings (or p/q when the exact value has no finite decimal form).
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum WireMeasure {
    Beta { alpha: String, beta: String },
    Discrete { atoms: Vec<WireAtom> },
    Point { location: String },
}

#[derive(Serialize, Deserialize)]
struct WireAtom {
    location: String,
    weight: String,
}

impl<T: Scalar> MixingMeasure<T> {
    pub fn to_json(&self) -> String {
        let wire = match self {
            Self::Beta { alpha, beta } => WireMeasure::Beta {
                alpha: alpha.wire(),
                beta: beta.wire(),
            },
            Self::Discrete { atoms } => WireMeasure::Discrete {
                atoms: atoms
                    .iter()
                    .map(|(x, w)| WireAtom {
                        location: x.wire(),
                        weight: w.wire(),
                    })
                    .collect(),
            },
            Self::PointMass { location } => WireMeasure::Point {
                location: location.wire(),
            },
        };
        serde_json::to_string(&wire).expect("wire measure serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let wire: WireMeasure =
            serde_json::from_str(s).map_err(|e| Error::InvalidMeasure(e.to_string()))?;
        match wire {
            WireMeasure::Beta { alpha, beta } => {
                Self::beta(T::parse_wire(&alpha)?, T::parse_wire(&beta)?)
            }
            WireMeasure::Point { location } => Self::point_mass(T::parse_wire(&location)?),
            WireMeasure::Discrete { atoms } => {
                let atoms = atoms
                    .into_iter()
                    .map(|a| Ok((T::parse_wire(&a.location)?, T::parse_wire(&a.weight)?)))
                    .collect::<Result<Vec<_>>>()?;
                Self::discrete(atoms)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    #[test]
    fn beta_moments_match_product_formula() {
        // E[θ²] under Beta(2,2) = a(a+1)/((a+b)(a+b+1)) = 6/20
        let m = MixingMeasure::beta(q(2, 1), q(2, 1)).unwrap();
        assert_eq!(m.moment(2), q(3, 10));
        assert_eq!(m.moment(0), q(1, 1));
    }

    #[test]
    fn point_mass_moment() {
        let m = MixingMeasure::point_mass(0.4f64).unwrap();
        assert!((m.moment(3) - 0.064).abs() < 1e-15);
    }

    #[test]
    fn discrete_moment_weighted_sum() {
        // Oracle: 0.5·0.2² + 0.5·0.8² = 0.34, computed by hand.
        let m = MixingMeasure::discrete(vec![(q(1, 5), q(1, 2)), (q(4, 5), q(1, 2))]).unwrap();
        assert_eq!(m.moment(2), q(17, 50));
        assert_eq!(q(17, 50).to_f64(), 0.34);
    }

    #[test]
    fn mean_variance_known_cases() {
        let b22 = MixingMeasure::beta(q(2, 1), q(2, 1)).unwrap();
        assert_eq!(b22.mean_variance(), (q(1, 2), q(1, 20)));
        let b11 = MixingMeasure::beta(q(1, 1), q(1, 1)).unwrap();
        assert_eq!(b11.mean_variance(), (q(1, 2), q(1, 12)));
        let pm = MixingMeasure::point_mass(q(7, 10)).unwrap();
        assert_eq!(pm.mean_variance(), (q(7, 10), q(0, 1)));
    }

    #[test]
    fn posterior_beta_conjugacy() {
        let state = PosteriorState::new(MixingMeasure::<Rational>::jeffreys(), 5, 2).unwrap();
        let post = posterior(&state).unwrap();
        assert_eq!(
            post,
            MixingMeasure::Beta {
                alpha: q(5, 2),
                beta: q(7, 2)
            }
        );
    }

    #[test]
    fn posterior_point_mass_fixed() {
        let pm = MixingMeasure::point_mass(q(3, 10)).unwrap();
        let state = PosteriorState::new(pm.clone(), 10, 4).unwrap();
        assert_eq!(posterior(&state).unwrap(), pm);
    }

    #[test]
    fn posterior_discrete_reweighting() {
        // weights ∝ (0.5·0.2, 0.5·0.8) -> (0.2, 0.8)
        let m = MixingMeasure::discrete(vec![(q(1, 5), q(1, 2)), (q(4, 5), q(1, 2))]).unwrap();
        let state = PosteriorState::new(m, 1, 1).unwrap();
        let post = posterior(&state).unwrap();
        assert_eq!(
            post,
            MixingMeasure::Discrete {
                atoms: vec![(q(1, 5), q(1, 5)), (q(4, 5), q(4, 5))]
            }
        );
    }

    #[test]
    fn posterior_drops_zero_likelihood_atoms() {
        let m = MixingMeasure::discrete(vec![(q(0, 1), q(1, 2)), (q(1, 2), q(1, 2))]).unwrap();
        let state = PosteriorState::new(m, 2, 1).unwrap();
        // θ=0 has zero likelihood for s=1; remaining atom carries all mass.
        let post = posterior(&state).unwrap();
        assert_eq!(
            post,
            MixingMeasure::Discrete {
                atoms: vec![(q(1, 2), q(1, 1))]
            }
        );
    }

    #[test]
    fn posterior_degenerate_when_all_atoms_killed() {
        let m = MixingMeasure::discrete(vec![(q(0, 1), q(1, 1))]).unwrap();
        let state = PosteriorState::new(m, 1, 1).unwrap();
        assert_eq!(posterior(&state), Err(Error::DegeneratePosterior));
    }

    #[test]
    fn posterior_preserves_family_and_sufficiency() {
        let priors: Vec<MixingMeasure<Rational>> = vec![
            MixingMeasure::jeffreys(),
            MixingMeasure::point_mass(q(1, 4)).unwrap(),
            MixingMeasure::discrete(vec![(q(1, 10), q(1, 4)), (q(9, 10), q(3, 4))]).unwrap(),
        ];
        for prior in priors {
            let a = posterior(&PosteriorState::new(prior.clone(), 6, 2).unwrap()).unwrap();
            let b = posterior(&PosteriorState::new(prior.clone(), 6, 2).unwrap()).unwrap();
            assert_eq!(a, b);
            assert_eq!(
                std::mem::discriminant(&a),
                std::mem::discriminant(&prior),
                "posterior changed variant family"
            );
        }
    }

    #[test]
    fn beta_posterior_mean_closed_form() {
        for (n, s) in [(0u64, 0u64), (5, 2), (12, 12), (9, 0)] {
            let prior = MixingMeasure::beta(q(2, 1), q(3, 1)).unwrap();
            let post = posterior(&PosteriorState::new(prior, n, s).unwrap()).unwrap();
            let expect =
                (q(2, 1) + Rational::from_int(s as i64)) / (q(5, 1) + Rational::from_int(n as i64));
            assert_eq!(post.mean(), expect);
        }
    }

    #[test]
    fn two_point_examples() {
        let m = two_point_with_mean(q(0, 1), q(1, 1), q(3, 10)).unwrap();
        assert_eq!(
            m,
            MixingMeasure::Discrete {
                atoms: vec![(q(0, 1), q(7, 10)), (q(1, 1), q(3, 10))]
            }
        );
        let m = two_point_with_mean(q(1, 100), q(19, 100), q(1, 10)).unwrap();
        assert_eq!(
            m,
            MixingMeasure::Discrete {
                atoms: vec![(q(1, 100), q(1, 2)), (q(19, 100), q(1, 2))]
            }
        );
        assert_eq!(m.mean(), q(1, 10));
        let m = two_point_with_mean(q(2, 5), q(3, 5), q(1, 2)).unwrap();
        assert_eq!(m.mean(), q(1, 2));

        assert!(matches!(
            two_point_with_mean(q(1, 2), q(1, 4), q(3, 4)),
            Err(Error::InvalidBracket { .. })
        ));
    }

    #[test]
    fn moments_non_increasing() {
        let measures: Vec<MixingMeasure<Rational>> = vec![
            MixingMeasure::jeffreys(),
            MixingMeasure::beta(q(5, 2), q(7, 2)).unwrap(),
            MixingMeasure::point_mass(q(2, 3)).unwrap(),
            two_point_with_mean(q(1, 100), q(19, 100), q(1, 10)).unwrap(),
        ];
        for m in measures {
            let seq = MomentSequence::of_measure(&m, 12);
            MomentSequence::new(seq.values().to_vec()).expect("valid moment sequence");
        }
    }

    #[test]
    fn duplicate_atoms_merged() {
        let m = MixingMeasure::discrete(vec![
            (q(1, 2), q(1, 4)),
            (q(1, 2), q(1, 4)),
            (q(3, 4), q(1, 2)),
        ])
        .unwrap();
        assert_eq!(
            m,
            MixingMeasure::Discrete {
                atoms: vec![(q(1, 2), q(1, 2)), (q(3, 4), q(1, 2))]
            }
        );
    }

    #[test]
    fn constructor_rejections() {
        assert!(MixingMeasure::point_mass(1.5f64).is_err());
        assert!(MixingMeasure::beta(0.0f64, 1.0).is_err());
        assert!(MixingMeasure::<f64>::discrete(vec![]).is_err());
        assert!(MixingMeasure::discrete(vec![(0.5f64, 0.7), (0.6, 0.7)]).is_err());
        assert!(MixingMeasure::discrete(vec![(0.5f64, -0.5), (0.6, 1.5)]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let cases: Vec<MixingMeasure<Rational>> = vec![
            MixingMeasure::beta(q(5, 2), q(7, 2)).unwrap(),
            MixingMeasure::beta(q(1, 3), q(2, 3)).unwrap(),
            MixingMeasure::point_mass(q(3, 10)).unwrap(),
            MixingMeasure::discrete(vec![(q(1, 5), q(1, 2)), (q(4, 5), q(1, 2))]).unwrap(),
        ];
        for m in cases {
            let json = m.to_json();
            let back = MixingMeasure::<Rational>::from_json(&json).unwrap();
            assert_eq!(back, m, "json: {json}");
        }
        let json = r#"{"type":"beta","alpha":"2.5","beta":"3.5"}"#;
        let m = MixingMeasure::<Rational>::from_json(json).unwrap();
        assert_eq!(
            m,
            MixingMeasure::Beta {
                alpha: q(5, 2),
                beta: q(7, 2)
            }
        );
    }

    #[test]
    fn json_round_trip_double_mode() {
        let cases: Vec<MixingMeasure<f64>> = vec![
            MixingMeasure::beta(2.5, std::f64::consts::PI).unwrap(),
            MixingMeasure::point_mass(0.1).unwrap(),
            MixingMeasure::discrete(vec![(0.2, 0.5), (0.8, 0.5)]).unwrap(),
        ];
        for m in cases {
            let back = MixingMeasure::<f64>::from_json(&m.to_json()).unwrap();
            assert_eq!(back, m);
        }
        // a decimal-string measure reads identically in either mode
        let json = r#"{"type":"point","location":"0.3"}"#;
        let exact = MixingMeasure::<Rational>::from_json(json).unwrap();
        let double = MixingMeasure::<f64>::from_json(json).unwrap();
        assert_eq!(exact.mean().to_f64(), double.mean());
    }

    #[test]
    fn sample_theta_respects_support() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::stream(9, 0);
        let disc = MixingMeasure::discrete(vec![(0.2f64, 0.5), (0.8, 0.5)]).unwrap();
        for _ in 0..100 {
            let t = disc.sample_theta(&mut rng);
            assert!(t == 0.2 || t == 0.8);
        }
        let beta = MixingMeasure::beta(2.0f64, 3.0).unwrap();
        let n = 20_000;
        let mean: f64 = (0..n).map(|_| beta.sample_theta(&mut rng)).sum::<f64>() / n as f64;
        assert!((mean - 0.4).abs() < 0.01, "Beta(2,3) sample mean {mean}");
    }
}
