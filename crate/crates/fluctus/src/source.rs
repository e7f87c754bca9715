//! Discrete memoryless sources and their information measures.
//!
//! All information quantities are in shannons (log base 2). Terms with
//! zero probability contribute zero, following the usual 0 log 0 = 0
//! convention.

use crate::error::{Error, Result};

/// Tolerance for mass normalization and degeneracy checks.
pub const PMF_TOLERANCE: f64 = 1e-12;

/// Neumaier compensated summation. Keeps pmf validation and the moment
/// sums accurate enough that the 1e-12 tolerances are meaningful even
/// for large alphabets.
pub(crate) fn compensated_sum<I>(xs: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Self-information -log2(p) of a single outcome, in shannons.
pub fn self_information(p: f64) -> Result<f64> {
    if !p.is_finite() || p <= 0.0 || p > 1.0 {
        return Err(Error::OutOfDomain {
            value: p,
            domain: "(0, 1]",
        });
    }
    Ok(-p.log2())
}

/// Degeneracy classification of a source (Definition-level classes:
/// type I concentrates all mass on one outcome, type II is uniform on
/// its support).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceClass {
    TypeI,
    TypeII { support: usize },
    NonDegenerate,
}

impl SourceClass {
    pub fn is_degenerate(self) -> bool {
        !matches!(self, SourceClass::NonDegenerate)
    }
}

/// A validated probability mass function over a finite alphabet.
///
/// Construction checks that every mass is finite and nonnegative and
/// that the total mass is 1 within [`PMF_TOLERANCE`]. Symbols are the
/// indices `0..alphabet_size()`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidMass { index, value });
            }
        }
        let sum = compensated_sum(probs.iter().copied());
        if (sum - 1.0).abs() > PMF_TOLERANCE {
            return Err(Error::MassNotNormalized {
                sum,
                tolerance: PMF_TOLERANCE,
            });
        }
        Ok(Self { probs })
    }

    /// Uniform distribution on k symbols.
    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyDistribution);
        }
        Ok(Self {
            probs: vec![1.0 / k as f64; k],
        })
    }

    /// Two-symbol source [p, 1 - p].
    pub fn bernoulli(p: f64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfDomain {
                value: p,
                domain: "[0, 1]",
            });
        }
        Ok(Self {
            probs: vec![p, 1.0 - p],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn alphabet_size(&self) -> usize {
        self.probs.len()
    }

    /// Number of symbols with mass above [`PMF_TOLERANCE`].
    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > PMF_TOLERANCE).count()
    }

    /// Shannon entropy H = -sum p log2 p, in shannons.
    pub fn entropy(&self) -> f64 {
        let s = compensated_sum(
            self.probs
                .iter()
                .filter(|&&p| p > 0.0)
                .map(|&p| p * p.log2()),
        );
        (-s).max(0.0)
    }

    /// Variance of the self-information: F^2 = sum p log2^2 p - H^2.
    ///
    /// Rounding can push the value a hair below zero for degenerate
    /// sources; anything within [`PMF_TOLERANCE`] of zero is clamped,
    /// anything further below is reported as an error.
    pub fn fluctuation_squared(&self) -> Result<f64> {
        let second = compensated_sum(
            self.probs
                .iter()
                .filter(|&&p| p > 0.0)
                .map(|&p| p * p.log2() * p.log2()),
        );
        let h = self.entropy();
        let f2 = second - h * h;
        if f2 < -PMF_TOLERANCE {
            return Err(Error::NegativeVariance { value: f2 });
        }
        Ok(f2.max(0.0))
    }

    /// Standard deviation of the self-information, in shannons.
    pub fn fluctuation(&self) -> Result<f64> {
        Ok(self.fluctuation_squared()?.sqrt())
    }

    /// Fluctuation via the expanded form
    /// F = sqrt( sum_k (p_k - p_k^2) log2^2 p_k
    ///          - sum_{i != j} p_i p_j log2 p_i log2 p_j ).
    ///
    /// The cross term is evaluated as a literal double sum, so this is
    /// an independent O(K^2) route kept for cross-checking the O(K)
    /// moment form.
    pub fn fluctuation_expanded(&self) -> Result<f64> {
        let terms: Vec<(f64, f64)> = self
            .probs
            .iter()
            .map(|&p| if p > 0.0 { (p, p.log2()) } else { (0.0, 0.0) })
            .collect();
        let diagonal = compensated_sum(
            terms
                .iter()
                .map(|&(p, l)| (p - p * p) * l * l),
        );
        let mut cross_parts = Vec::with_capacity(terms.len() * terms.len());
        for (i, &(pi, li)) in terms.iter().enumerate() {
            for (j, &(pj, lj)) in terms.iter().enumerate() {
                if i != j {
                    cross_parts.push(pi * li * pj * lj);
                }
            }
        }
        let cross = compensated_sum(cross_parts);
        let f2 = diagonal - cross;
        if f2 < -PMF_TOLERANCE {
            return Err(Error::NegativeVariance { value: f2 });
        }
        Ok(f2.max(0.0).sqrt())
    }

    /// Degeneracy class, using [`PMF_TOLERANCE`] for the comparisons.
    pub fn classify(&self) -> SourceClass {
        let support: Vec<usize> = (0..self.probs.len())
            .filter(|&i| self.probs[i] > PMF_TOLERANCE)
            .collect();
        match support.len() {
            0 => SourceClass::NonDegenerate,
            1 => {
                if (self.probs[support[0]] - 1.0).abs() <= PMF_TOLERANCE {
                    SourceClass::TypeI
                } else {
                    SourceClass::NonDegenerate
                }
            }
            j => {
                let target = 1.0 / j as f64;
                if support
                    .iter()
                    .all(|&i| (self.probs[i] - target).abs() <= PMF_TOLERANCE)
                {
                    SourceClass::TypeII { support: j }
                } else {
                    SourceClass::NonDegenerate
                }
            }
        }
    }

    /// Coefficient of variation 100 F / H, in percent.
    pub fn coefficient_of_variation(&self) -> Result<f64> {
        let h = self.entropy();
        if h <= 0.0 {
            return Err(Error::ZeroEntropy);
        }
        Ok(100.0 * self.fluctuation()? / h)
    }
}
