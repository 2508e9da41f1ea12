//! Probability mass functions over a finite alphabet.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-9;

/// A pmf with cached natural logs and support.
#[derive(Debug, Clone, PartialEq)]
pub struct Dist {
    probs: Vec<f64>,
    log_probs: Vec<f64>,
    support: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct DistFile {
    probs: Vec<f64>,
}

impl Dist {
    /// Validates and wraps `probs`. Entries must be finite and nonnegative;
    /// the total must be within `1e-9` of one, after which the vector is
    /// renormalized so it sums to one within rounding.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDist("empty alphabet".into()));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::InvalidDist(format!("entry {i} is {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDist(format!("probabilities sum to {total}")));
        }
        let probs: Vec<f64> = if total == 1.0 {
            probs
        } else {
            probs.iter().map(|p| p / total).collect()
        };
        let log_probs = probs
            .iter()
            .map(|&p| if p > 0.0 { p.ln() } else { f64::NEG_INFINITY })
            .collect();
        let support = probs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > 0.0)
            .map(|(i, _)| i)
            .collect();
        Ok(Dist {
            probs,
            log_probs,
            support,
        })
    }

    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDist("empty alphabet".into()));
        }
        Dist::new(vec![1.0 / k as f64; k])
    }

    pub fn point_mass(k: usize, at: usize) -> Result<Self> {
        if at >= k {
            return Err(Error::SymbolOutOfRange {
                symbol: at,
                size: k,
            });
        }
        let mut probs = vec![0.0; k];
        probs[at] = 1.0;
        Dist::new(probs)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.probs[i]
    }

    pub fn log_probs(&self) -> &[f64] {
        &self.log_probs
    }

    pub fn ln_prob(&self, i: usize) -> f64 {
        self.log_probs[i]
    }

    /// Indices with strictly positive mass, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// The i.i.d. product distribution on words of length `n`, with words
    /// indexed as in [`crate::words::encode`].
    pub fn power(&self, n: u32) -> Result<Dist> {
        let k = self.len();
        let size = k
            .checked_pow(n)
            .ok_or_else(|| Error::Overflow(format!("{k}^{n} words")))?;
        let mut probs = vec![1.0; size];
        for (w, p) in probs.iter_mut().enumerate() {
            let mut rest = w;
            for _ in 0..n {
                *p *= self.probs[rest % k];
                rest /= k;
            }
        }
        Dist::new(probs)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: DistFile = serde_json::from_str(text)?;
        Dist::new(file.probs)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({ "probs": self.probs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(Dist::new(vec![]).is_err());
        assert!(Dist::new(vec![0.5, 0.4]).is_err());
        assert!(Dist::new(vec![1.5, -0.5]).is_err());
        assert!(Dist::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn support_and_logs() {
        let d = Dist::new(vec![0.5, 0.0, 0.5]).unwrap();
        assert_eq!(d.support(), &[0, 2]);
        assert_eq!(d.ln_prob(1), f64::NEG_INFINITY);
        assert!((d.ln_prob(0) - 0.5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn power_indexing() {
        let d = Dist::new(vec![0.25, 0.75]).unwrap();
        let d2 = d.power(2).unwrap();
        // word 1 = (letter0 = 1, letter1 = 0) in little-endian digit order
        assert!((d2.prob(1) - 0.75 * 0.25).abs() < 1e-15);
        assert!((d2.prob(3) - 0.75 * 0.75).abs() < 1e-15);
    }

    #[test]
    fn json() {
        let d = Dist::from_json_str(r#"{"probs": [0.5, 0.25, 0.25]}"#).unwrap();
        assert_eq!(d.len(), 3);
        assert!(Dist::from_json_str(r#"{"p": []}"#).is_err());
    }
}
