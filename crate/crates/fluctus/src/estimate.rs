//! Plug-in estimation from observed sequences and the short-sequence
//! interval machinery: entropy bounds (known-F normal form and the
//! t-based practical bound), coding efficiency, the typicality interval
//! and the atypicality significance level.

use crate::error::{Error, Result};
use crate::source::Distribution;
use crate::stats::{std_normal_quantile, std_normal_upper_tail, student_t_quantile};
use crate::stats::{DegreesOfFreedom, TailProbability};

/// Occurrence counts m_k over a declared alphabet of size K.
///
/// K is always declared by the caller, never inferred, since short
/// sequences routinely miss symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceCounts {
    counts: Vec<u64>,
    length: u64,
}

impl SequenceCounts {
    pub fn from_counts(counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let length = counts.iter().sum();
        if length == 0 {
            return Err(Error::EmptySequence);
        }
        Ok(Self { counts, length })
    }

    pub fn from_sequence(symbols: &[usize], alphabet_size: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::EmptyDistribution);
        }
        if symbols.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut counts = vec![0u64; alphabet_size];
        for &symbol in symbols {
            if symbol >= alphabet_size {
                return Err(Error::SymbolOutOfRange {
                    symbol,
                    alphabet_size,
                });
            }
            counts[symbol] += 1;
        }
        Ok(Self {
            counts,
            length: symbols.len() as u64,
        })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    /// Empirical distribution p̂_k = m_k / L.
    pub fn empirical(&self) -> Result<Distribution> {
        let l = self.length as f64;
        Distribution::new(self.counts.iter().map(|&m| m as f64 / l).collect())
    }

    /// Plug-in entropy and fluctuation of the empirical distribution.
    pub fn plug_in_estimates(&self) -> Result<EntropyEstimate> {
        let empirical = self.empirical()?;
        Ok(EntropyEstimate {
            h_hat: empirical.entropy(),
            f_hat: empirical.fluctuation()?,
            length: self.length,
            alphabet_size: self.counts.len(),
        })
    }
}

/// Plug-in estimates from a length-L sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyEstimate {
    pub h_hat: f64,
    pub f_hat: f64,
    pub length: u64,
    pub alphabet_size: usize,
}

/// A two-sided interval at significance level alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceInterval {
    pub lower: f64,
    pub upper: f64,
    pub level: TailProbability,
}

impl ConfidenceInterval {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// The t-based upper bound together with the out-of-range flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PracticalEntropy {
    pub value: f64,
    /// True when the bound exceeds log2 K. The value is reported
    /// unchanged: it is a statistical bound, not an entropy.
    pub exceeds_capacity: bool,
}

/// Efficiency pair of a source coder with average length l_bar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodingEfficiency {
    pub eta_classical: f64,
    pub eta_alpha: f64,
}

/// Whether a sample entropy sits inside the epsilon band around a
/// reference entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Typicality {
    Typical,
    Atypical,
}

fn check_length(length: u64, minimum: u64) -> Result<()> {
    if length < minimum {
        return Err(Error::LengthTooShort { length, minimum });
    }
    Ok(())
}

/// Upper confidence bound when the population fluctuation F is known:
/// Ĥ + z_{1-α} F / sqrt(L).
pub fn entropy_upper_bound_known_f(
    h_hat: f64,
    f_known: f64,
    length: u64,
    alpha: TailProbability,
) -> Result<f64> {
    if !f_known.is_finite() || f_known < 0.0 {
        return Err(Error::OutOfDomain {
            value: f_known,
            domain: "[0, inf)",
        });
    }
    check_length(length, 1)?;
    // z_{1-alpha} = -z_alpha keeps the evaluation tail-accurate for
    // extreme alpha.
    let z = -std_normal_quantile(alpha);
    Ok(h_hat + z * f_known / (length as f64).sqrt())
}

/// Practical entropy H_alpha = Ĥ + t_{1-α, L-1} F̂ / sqrt(L).
pub fn practical_entropy(e: &EntropyEstimate, alpha: TailProbability) -> Result<PracticalEntropy> {
    check_length(e.length, 2)?;
    let df = DegreesOfFreedom::new(e.length - 1)?;
    let t = -student_t_quantile(alpha, df)?;
    let value = e.h_hat + t * e.f_hat / (e.length as f64).sqrt();
    Ok(PracticalEntropy {
        value,
        exceeds_capacity: value > (e.alphabet_size as f64).log2(),
    })
}

/// Efficiency pair eta = Ĥ / l_bar, eta_alpha = H_alpha / l_bar.
pub fn coding_efficiency(
    e: &EntropyEstimate,
    alpha: TailProbability,
    l_bar: f64,
) -> Result<CodingEfficiency> {
    if !l_bar.is_finite() || l_bar <= 0.0 {
        return Err(Error::NonPositive {
            name: "l_bar",
            value: l_bar,
        });
    }
    let practical = practical_entropy(e, alpha)?;
    Ok(CodingEfficiency {
        eta_classical: e.h_hat / l_bar,
        eta_alpha: practical.value / l_bar,
    })
}

/// Two-sided typicality interval Ĥ -+ z_{1-α/2} F̂ / sqrt(L).
pub fn typicality_interval(
    e: &EntropyEstimate,
    alpha: TailProbability,
) -> Result<ConfidenceInterval> {
    check_length(e.length, 1)?;
    let z = -std_normal_quantile(TailProbability::new(alpha.value() / 2.0)?);
    let half = z * e.f_hat / (e.length as f64).sqrt();
    Ok(ConfidenceInterval {
        lower: e.h_hat - half,
        upper: e.h_hat + half,
        level: alpha,
    })
}

/// Significance level at which a width-epsilon band around H is a
/// typicality region: alpha = 2 (1 - Phi(eps sqrt(L) / F)).
///
/// Returned as a plain f64: the exact value can round to 0 once
/// eps sqrt(L) / F is large, which an open-interval probability type
/// would reject.
pub fn atypicality_alpha(epsilon: f64, f: f64, length: u64) -> Result<f64> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::NonPositive {
            name: "epsilon",
            value: epsilon,
        });
    }
    if !f.is_finite() || f < 0.0 {
        return Err(Error::OutOfDomain {
            value: f,
            domain: "[0, inf)",
        });
    }
    if f == 0.0 {
        return Err(Error::DegenerateSource);
    }
    check_length(length, 1)?;
    Ok(2.0 * std_normal_upper_tail(epsilon * (length as f64).sqrt() / f))
}

/// Epsilon-band classification of an observed sequence against a
/// reference entropy.
pub fn classify_sequence(
    c: &SequenceCounts,
    reference_h: f64,
    epsilon: f64,
) -> Result<Typicality> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::NonPositive {
            name: "epsilon",
            value: epsilon,
        });
    }
    let e = c.plug_in_estimates()?;
    if (e.h_hat - reference_h).abs() > epsilon {
        Ok(Typicality::Atypical)
    } else {
        Ok(Typicality::Typical)
    }
}

/// The chi-square-targeted statistic (L-1) F̂² / F².
pub fn normalized_fluctuation_statistic(f_hat_sq: f64, f_sq: f64, length: u64) -> Result<f64> {
    if !f_hat_sq.is_finite() || f_hat_sq < 0.0 {
        return Err(Error::OutOfDomain {
            value: f_hat_sq,
            domain: "[0, inf)",
        });
    }
    if !f_sq.is_finite() || f_sq < 0.0 {
        return Err(Error::OutOfDomain {
            value: f_sq,
            domain: "[0, inf)",
        });
    }
    if f_sq == 0.0 {
        return Err(Error::DegenerateSource);
    }
    check_length(length, 2)?;
    Ok((length - 1) as f64 * f_hat_sq / f_sq)
}
