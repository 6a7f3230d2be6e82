use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-9;

/// Finite distribution over delay offsets `1..=max_offset`.
///
/// `phi(p)` is the probability that a successful influence attempt made at
/// time `t` lands at `t + p`. Monotonicity in `p` is not required.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayDistribution {
    phis: Vec<f64>,
}

impl DelayDistribution {
    pub fn new(phis: Vec<f64>) -> Result<Self> {
        if phis.is_empty() {
            return Err(Error::InvalidParameter(
                "delay distribution needs at least one offset".into(),
            ));
        }
        if let Some(bad) = phis.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "delay probability {bad} is negative or not finite"
            )));
        }
        let total: f64 = phis.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "delay probabilities sum to {total}, expected 1"
            )));
        }
        Ok(DelayDistribution { phis })
    }

    /// All mass on offset 1: the classical next-step cascade.
    pub fn immediate() -> Self {
        DelayDistribution { phis: vec![1.0] }
    }

    /// All mass on a single offset.
    pub fn point(offset: usize) -> Result<Self> {
        if offset == 0 {
            return Err(Error::InvalidParameter("delay offsets start at 1".into()));
        }
        let mut phis = vec![0.0; offset];
        phis[offset - 1] = 1.0;
        Ok(DelayDistribution { phis })
    }

    /// Poisson(`lambda`) mass at k = 0..max_offset-1 placed on offsets
    /// 1..=max_offset and renormalized.
    pub fn truncated_poisson(lambda: f64, max_offset: usize) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "poisson rate must be positive, got {lambda}"
            )));
        }
        if max_offset == 0 {
            return Err(Error::InvalidParameter("max_offset must be at least 1".into()));
        }
        // pmf(k) = e^-λ λ^k / k!, built by the ratio pmf(k) = pmf(k-1) λ / k.
        // The e^-λ factor cancels on renormalization.
        let mut phis = Vec::with_capacity(max_offset);
        let mut term = 1.0;
        phis.push(term);
        for k in 1..max_offset {
            term *= lambda / k as f64;
            phis.push(term);
        }
        let total: f64 = phis.iter().sum();
        phis.iter_mut().for_each(|p| *p /= total);
        Ok(DelayDistribution { phis })
    }

    pub fn max_offset(&self) -> usize {
        self.phis.len()
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    /// Probability of landing exactly `offset` steps later (0 outside the support).
    pub fn phi(&self, offset: usize) -> f64 {
        offset
            .checked_sub(1)
            .and_then(|i| self.phis.get(i))
            .copied()
            .unwrap_or(0.0)
    }

    /// Maps a uniform draw in [0, 1) to an offset by inverse CDF.
    pub fn sample(&self, uniform: f64) -> usize {
        let mut acc = 0.0;
        for (i, p) in self.phis.iter().enumerate() {
            acc += p;
            if uniform < acc {
                return i + 1;
            }
        }
        // rounding left a sliver above the last cumulative value
        self.phis
            .iter()
            .rposition(|p| *p > 0.0)
            .map_or(self.phis.len(), |i| i + 1)
    }
}
