//! Seeded sampling, Monte Carlo experiments for the normality,
//! coverage and atypicality claims, and exhaustive AEP enumeration.
//!
//! Replicate i of an experiment runs on the SplitMix64 substream seeded
//! at seed XOR i; when an experiment spans several sequence lengths the
//! replicates are numbered consecutively across the length list, so
//! every (length, replicate) pair draws from its own substream.

use serde::Serialize;

use crate::coding::ExtensionDistribution;
use crate::error::{Error, Result};
use crate::estimate::{
    atypicality_alpha, normalized_fluctuation_statistic, typicality_interval, SequenceCounts,
};
use crate::rng::SplitMix64;
use crate::source::Distribution;
use crate::stats::{std_normal_cdf, TailProbability};

/// Draw an i.i.d. sequence by inverse-CDF lookup on the cumulative pmf.
pub fn sample_sequence(d: &Distribution, length: usize, seed: u64) -> Vec<usize> {
    let cum = cumulative(d);
    let mut rng = SplitMix64::new(seed);
    (0..length)
        .map(|_| {
            let u = rng.next_f64();
            cum.partition_point(|&c| c <= u)
        })
        .collect()
}

/// Cumulative pmf with the tail pinned to exactly 1 from the last
/// positive-mass symbol on, so u in [0, 1) always lands on a symbol of
/// positive probability.
fn cumulative(d: &Distribution) -> Vec<f64> {
    let mut cum = Vec::with_capacity(d.alphabet_size());
    let mut acc = 0.0f64;
    for &p in d.probs() {
        acc += p;
        cum.push(acc);
    }
    let last_positive = d
        .probs()
        .iter()
        .rposition(|&p| p > 0.0)
        .expect("a valid pmf has positive mass");
    for c in cum.iter_mut().skip(last_positive) {
        *c = 1.0;
    }
    cum
}

/// One Monte Carlo comparison of an observed quantity with its
/// theoretical counterpart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: &'static str,
    pub probs: Vec<f64>,
    pub length: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    pub replicates: u64,
    pub seed: u64,
    pub observed: f64,
    pub theoretical: f64,
    pub std_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_dev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_distance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fluct_stat_mean: Option<f64>,
}

fn require_replicates(replicates: u64, minimum: u64) -> Result<()> {
    if replicates < minimum {
        return Err(Error::LengthTooShort {
            length: replicates,
            minimum,
        });
    }
    Ok(())
}

fn require_fluctuating(d: &Distribution) -> Result<f64> {
    let f = d.fluctuation()?;
    if f == 0.0 {
        return Err(Error::DegenerateSource);
    }
    Ok(f)
}

fn binomial_std_error(rate: f64, replicates: u64) -> f64 {
    (rate * (1.0 - rate) / replicates as f64).sqrt()
}

/// Empirical atypicality rate against the normal-theory value
/// 2 (1 - Phi(eps sqrt(L) / F)), one report per requested length.
pub fn atypical_rate_experiment(
    d: &Distribution,
    epsilon: f64,
    lengths: &[u64],
    replicates: u64,
    seed: u64,
) -> Result<Vec<ExperimentReport>> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::NonPositive {
            name: "epsilon",
            value: epsilon,
        });
    }
    let f = require_fluctuating(d)?;
    require_replicates(replicates, 1)?;
    let h = d.entropy();
    let k = d.alphabet_size();
    let mut reports = Vec::with_capacity(lengths.len());
    let mut replicate_index = 0u64;
    for &length in lengths {
        if length == 0 {
            return Err(Error::LengthTooShort {
                length,
                minimum: 1,
            });
        }
        let mut atypical = 0u64;
        for _ in 0..replicates {
            let sequence = sample_sequence(d, length as usize, seed ^ replicate_index);
            replicate_index += 1;
            let estimate = SequenceCounts::from_sequence(&sequence, k)?.plug_in_estimates()?;
            if (estimate.h_hat - h).abs() > epsilon {
                atypical += 1;
            }
        }
        let observed = atypical as f64 / replicates as f64;
        reports.push(ExperimentReport {
            experiment: "atypical_rate",
            probs: d.probs().to_vec(),
            length,
            epsilon: Some(epsilon),
            alpha: None,
            replicates,
            seed,
            observed,
            theoretical: atypicality_alpha(epsilon, f, length)?,
            std_error: binomial_std_error(observed, replicates),
            std_dev: None,
            ks_distance: None,
            fluct_stat_mean: None,
        });
    }
    Ok(reports)
}

/// Empirical coverage of the two-sided typicality interval against
/// the nominal level 1 - alpha.
pub fn ci_coverage_experiment(
    d: &Distribution,
    length: u64,
    alpha: TailProbability,
    replicates: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    require_fluctuating(d)?;
    if length < 2 {
        return Err(Error::LengthTooShort { length, minimum: 2 });
    }
    require_replicates(replicates, 1)?;
    let h = d.entropy();
    let k = d.alphabet_size();
    let mut covered = 0u64;
    for i in 0..replicates {
        let sequence = sample_sequence(d, length as usize, seed ^ i);
        let estimate = SequenceCounts::from_sequence(&sequence, k)?.plug_in_estimates()?;
        if typicality_interval(&estimate, alpha)?.contains(h) {
            covered += 1;
        }
    }
    let observed = covered as f64 / replicates as f64;
    Ok(ExperimentReport {
        experiment: "ci_coverage",
        probs: d.probs().to_vec(),
        length,
        epsilon: None,
        alpha: Some(alpha.value()),
        replicates,
        seed,
        observed,
        theoretical: 1.0 - alpha.value(),
        std_error: binomial_std_error(observed, replicates),
        std_dev: None,
        ks_distance: None,
        fluct_stat_mean: None,
    })
}

/// Moments and a Kolmogorov-Smirnov-style distance of the standardized
/// statistic (Ĥ - H) sqrt(L) / F against the standard normal, plus the
/// Monte Carlo mean of the normalized fluctuation statistic.
pub fn sampling_distribution_check(
    d: &Distribution,
    length: u64,
    replicates: u64,
    seed: u64,
) -> Result<ExperimentReport> {
    let f = require_fluctuating(d)?;
    if length < 2 {
        return Err(Error::LengthTooShort { length, minimum: 2 });
    }
    require_replicates(replicates, 2)?;
    let h = d.entropy();
    let k = d.alphabet_size();
    let f_sq = f * f;
    let scale = (length as f64).sqrt() / f;

    let mut zs = Vec::with_capacity(replicates as usize);
    let mut fluct_sum = 0.0f64;
    for i in 0..replicates {
        let sequence = sample_sequence(d, length as usize, seed ^ i);
        let estimate = SequenceCounts::from_sequence(&sequence, k)?.plug_in_estimates()?;
        zs.push((estimate.h_hat - h) * scale);
        fluct_sum +=
            normalized_fluctuation_statistic(estimate.f_hat * estimate.f_hat, f_sq, length)?;
    }

    let n = replicates as f64;
    let mean = zs.iter().sum::<f64>() / n;
    let variance = zs.iter().map(|z| (z - mean) * (z - mean)).sum::<f64>() / (n - 1.0);
    zs.sort_by(f64::total_cmp);
    let mut ks = 0.0f64;
    for (i, &z) in zs.iter().enumerate() {
        let phi = std_normal_cdf(z)?;
        let above = (i + 1) as f64 / n - phi;
        let below = phi - i as f64 / n;
        ks = ks.max(above).max(below);
    }

    Ok(ExperimentReport {
        experiment: "sampling_distribution",
        probs: d.probs().to_vec(),
        length,
        epsilon: None,
        alpha: None,
        replicates,
        seed,
        observed: mean,
        theoretical: 0.0,
        std_error: 1.0 / n.sqrt(),
        std_dev: Some(variance.sqrt()),
        ks_distance: Some(ks),
        fluct_stat_mean: Some(fluct_sum / n),
    })
}

/// Exhaustive AEP verification over all K^L sequences.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AepReport {
    pub probs: Vec<f64>,
    pub length: u64,
    pub epsilon: f64,
    pub entropy: f64,
    pub typical_count: u64,
    pub typical_mass: f64,
    pub atypical_mass: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_typical_probability: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_typical_probability: Option<f64>,
    pub bound_low: f64,
    pub bound_high: f64,
    pub bounds_verified: bool,
}

/// Enumerate the L-th extension and split it into the epsilon-typical
/// set and its complement. Membership is decided in the log domain:
/// a sequence of probability P is typical when -(1/L) log2 P lies in
/// [H - eps, H + eps].
pub fn aep_enumeration(d: &Distribution, length: u32, epsilon: f64) -> Result<AepReport> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::NonPositive {
            name: "epsilon",
            value: epsilon,
        });
    }
    let extension = ExtensionDistribution::new(d, length)?;
    let h = d.entropy();
    let l = length as f64;

    let mut typical_count = 0u64;
    let mut typical_mass = 0.0f64;
    let mut typical_comp = 0.0f64;
    let mut atypical_mass = 0.0f64;
    let mut atypical_comp = 0.0f64;
    let mut min_typical = f64::INFINITY;
    let mut max_typical = 0.0f64;
    for &p in extension.distribution().probs() {
        let typical = p > 0.0 && ((-p.log2()) / l - h).abs() <= epsilon;
        if typical {
            typical_count += 1;
            let t = typical_mass + p;
            typical_comp += if typical_mass.abs() >= p {
                (typical_mass - t) + p
            } else {
                (p - t) + typical_mass
            };
            typical_mass = t;
            min_typical = min_typical.min(p);
            max_typical = max_typical.max(p);
        } else {
            let t = atypical_mass + p;
            atypical_comp += if atypical_mass.abs() >= p {
                (atypical_mass - t) + p
            } else {
                (p - t) + atypical_mass
            };
            atypical_mass = t;
        }
    }
    typical_mass += typical_comp;
    atypical_mass += atypical_comp;

    let bound_low = (-(l * (h + epsilon))).exp2();
    let bound_high = (-(l * (h - epsilon))).exp2();
    let (min_typical_probability, max_typical_probability) = if typical_count > 0 {
        (Some(min_typical), Some(max_typical))
    } else {
        (None, None)
    };
    let bounds_verified = typical_count == 0
        || (min_typical >= bound_low && max_typical <= bound_high);

    Ok(AepReport {
        probs: d.probs().to_vec(),
        length: length as u64,
        epsilon,
        entropy: h,
        typical_count,
        typical_mass,
        atypical_mass,
        min_typical_probability,
        max_typical_probability,
        bound_low,
        bound_high,
        bounds_verified,
    })
}
