//! First and second moments of the number of indistinguishable message
//! groups, the resulting probability bounds, and the rate thresholds.

use serde::Serialize;

use crate::budget::Budget;
use crate::dist::Dist;
use crate::hypergraph::Hypergraph;
use crate::logsum::{ln_binomial, LogSumExp};
use crate::measures::{i_measure, induced_subhypergraph, moment_terms, MomentTerms, Strategy};
use crate::{Error, Result};

/// Moments of `Z`, the number of `(L+1)`-subsets of messages whose images
/// are not an edge, for `M` random codewords of length `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub list_size: usize,
    pub messages: u64,
    pub blocklength: u32,
    pub ez: f64,
    pub ez2: f64,
    pub ln_ez: f64,
    pub ln_ez2: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// `1 - M^{L+1} 2^{-nL·I}`, clamped to `[0, 1]`.
    pub loose_lower_bound: f64,
    /// Single-letter `I_{L+1}`.
    pub i_bits: f64,
    /// Single-letter `θ^{(ℓ)}` for `ℓ = 1..=L`.
    pub theta_bits: Vec<f64>,
}

impl MomentReport {
    /// `ℓ·log2 M - nL·θ^{(ℓ)}` for `ℓ = 1..=L+1`. A sequence of codes can
    /// only succeed with probability bounded away from zero if one of these
    /// stays bounded, so all of them going to infinity is a failure
    /// certificate.
    pub fn theta_exponents(&self) -> Vec<f64> {
        let lm = (self.messages as f64).log2();
        let scale = self.blocklength as f64 * self.list_size as f64;
        self.theta_bits
            .iter()
            .chain(std::iter::once(&self.i_bits))
            .enumerate()
            .map(|(i, &t)| (i + 1) as f64 * lm - scale * t)
            .collect()
    }
}

/// `ln [M! / (ℓ! a! a! (M-ℓ-2a)!)]`, `-inf` when `M < ℓ + 2a`.
fn ln_multinomial(m: u64, ell: u64, a: u64) -> f64 {
    let used = ell + a;
    if m < used + a {
        return f64::NEG_INFINITY;
    }
    ln_binomial(m, ell) + ln_binomial(m - ell, a) + ln_binomial(m - used, a)
}

/// Moment report from single-letter log-sums, raised to blocklength `n`.
pub fn z_moments(terms: &MomentTerms, messages: u64, blocklength: u32) -> Result<MomentReport> {
    if messages == 0 || blocklength == 0 {
        return Err(Error::InvalidArgument("M and n must be at least 1".into()));
    }
    let l = terms.list_size as u64;
    let powered = terms.power(blocklength);
    let k = l + 1;
    let ln_s = powered.ln_nonedge;

    let ln_ez = ln_binomial(messages, k) + ln_s;
    let mut acc = LogSumExp::new();
    acc.push(ln_ez);
    acc.push(ln_multinomial(messages, 0, k) + 2.0 * ln_s);
    for (i, &ln_t) in powered.ln_overlap.iter().enumerate() {
        let ell = i as u64 + 1;
        acc.push(ln_multinomial(messages, ell, k - ell) + ln_t);
    }
    let ln_ez2 = acc.ln();
    let ez = ln_ez.exp();
    let ez2 = ln_ez2.exp();

    let i_bits = terms.i_bits().bits();
    let theta_bits = (1..=terms.list_size)
        .map(|ell| terms.theta_bits(ell).bits())
        .collect();
    let loose = if ln_s == f64::NEG_INFINITY {
        1.0
    } else {
        1.0 - (k as f64 * (messages as f64).ln() + ln_s).exp()
    };
    let mut report = MomentReport {
        list_size: terms.list_size,
        messages,
        blocklength,
        ez,
        ez2,
        ln_ez,
        ln_ez2,
        lower_bound: 0.0,
        upper_bound: 1.0,
        loose_lower_bound: loose.clamp(0.0, 1.0),
        i_bits,
        theta_bits,
    };
    let (lower, upper) = zero_error_prob_bounds(&report);
    report.lower_bound = lower;
    report.upper_bound = upper;
    Ok(report)
}

/// Computes the log-sums for `(graph, dist)` and calls [`z_moments`].
pub fn z_moments_for(
    graph: &Hypergraph,
    dist: &Dist,
    messages: u64,
    list_size: usize,
    blocklength: u32,
    strategy: Strategy,
    budget: &Budget,
) -> Result<MomentReport> {
    let terms = moment_terms(graph, dist, list_size, strategy, budget)?;
    z_moments(&terms, messages, blocklength)
}

/// `(max(0, 1 - E[Z]), min(1, 1 - E[Z]²/E[Z²]))`; both are 1 when `E[Z] = 0`.
pub fn zero_error_prob_bounds(report: &MomentReport) -> (f64, f64) {
    if report.ln_ez == f64::NEG_INFINITY {
        return (1.0, 1.0);
    }
    let lower = (1.0 - report.ez).max(0.0);
    let ratio = (2.0 * report.ln_ez - report.ln_ez2).exp();
    let upper = (1.0 - ratio).clamp(0.0, 1.0);
    (lower.min(upper), upper)
}

/// Rates below `sufficient_bits` are achievable with random codes; rates
/// above `necessary_bits` are not.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateThreshold {
    pub sufficient_bits: f64,
    pub necessary_bits: f64,
    pub i_bits: f64,
    /// The induced hypergraph is complete multipartite, which makes the
    /// sufficient rate tight.
    pub multipartite: bool,
}

pub fn achievable_rate_threshold(
    graph: &Hypergraph,
    dist: &Dist,
    list_size: usize,
    budget: &Budget,
) -> Result<RateThreshold> {
    let i = i_measure(graph, dist, list_size, Strategy::Naive, budget)?;
    let i_bits = i
        .finite()
        .ok_or_else(|| Error::Numeric("I is infinite".into()))?;
    let l = list_size as f64;
    let sufficient = l / (l + 1.0) * i_bits;
    let induced = induced_subhypergraph(graph, dist)?;
    let multipartite = induced.complete_multipartite_decompose(budget)?.is_some();
    Ok(RateThreshold {
        sufficient_bits: sufficient,
        necessary_bits: if multipartite { sufficient } else { l * i_bits },
        i_bits,
        multipartite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{distinguishability_hypergraph, Channel};

    fn identity(k: usize) -> Hypergraph {
        distinguishability_hypergraph(&Channel::identity(k).unwrap())
    }

    fn report(g: &Hypergraph, p: &Dist, m: u64, l: usize, n: u32) -> MomentReport {
        z_moments_for(g, p, m, l, n, Strategy::Naive, &Budget::default()).unwrap()
    }

    #[test]
    fn two_symbol_examples() {
        let g = identity(2);
        let p = Dist::uniform(2).unwrap();
        let r = report(&g, &p, 2, 1, 1);
        assert!((r.ez - 0.5).abs() < 1e-12 && (r.ez2 - 0.5).abs() < 1e-12);
        assert!((r.lower_bound - 0.5).abs() < 1e-12 && (r.upper_bound - 0.5).abs() < 1e-12);
        let r = report(&g, &p, 3, 1, 1);
        assert!((r.ez - 1.5).abs() < 1e-12 && (r.ez2 - 3.0).abs() < 1e-12);
        assert_eq!(r.lower_bound, 0.0);
        assert!((r.upper_bound - 0.25).abs() < 1e-12);
    }

    #[test]
    fn too_few_messages() {
        let g = identity(3);
        let p = Dist::new(vec![0.5, 0.3, 0.2]).unwrap();
        let r = report(&g, &p, 2, 2, 1);
        assert_eq!(r.ez, 0.0);
        assert_eq!(r.ez2, 0.0);
        assert_eq!(zero_error_prob_bounds(&r), (1.0, 1.0));
    }

    #[test]
    fn single_subset_has_equal_moments() {
        let g = identity(3);
        let p = Dist::new(vec![0.5, 0.3, 0.2]).unwrap();
        for l in 1..=3 {
            let r = report(&g, &p, l as u64 + 1, l, 2);
            assert!((r.ez2 - r.ez).abs() <= 1e-15 * r.ez.max(1.0), "L={l}");
        }
    }

    #[test]
    fn variance_nonnegative() {
        let g = Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let p = Dist::new(vec![0.2, 0.5, 0.3]).unwrap();
        for m in 1..40 {
            for n in 1..4 {
                let r = report(&g, &p, m, 1, n);
                assert!(r.ez2 - r.ez * r.ez >= -1e-12);
                assert!(r.lower_bound <= r.upper_bound);
            }
        }
    }

    #[test]
    fn thresholds() {
        let b = Budget::default();
        for k in 2..5 {
            for l in 1..4 {
                let t = achievable_rate_threshold(&identity(k), &Dist::uniform(k).unwrap(), l, &b)
                    .unwrap();
                let want = l as f64 / (l as f64 + 1.0) * (k as f64).log2();
                assert!((t.sufficient_bits - want).abs() < 1e-12);
                assert_eq!(t.sufficient_bits, t.necessary_bits);
            }
        }
        let edgeless = Hypergraph::edgeless(3).unwrap();
        let t = achievable_rate_threshold(&edgeless, &Dist::uniform(3).unwrap(), 2, &b).unwrap();
        assert_eq!((t.sufficient_bits, t.necessary_bits), (0.0, 0.0));

        let path = Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let t = achievable_rate_threshold(&path, &Dist::uniform(3).unwrap(), 1, &b).unwrap();
        let i = (9.0f64 / 5.0).log2();
        assert!(!t.multipartite);
        assert!((t.sufficient_bits - i / 2.0).abs() < 1e-12);
        assert!((t.necessary_bits - i).abs() < 1e-12);
    }

    #[test]
    fn theta_exponents_cover_every_overlap() {
        let r = report(&identity(2), &Dist::uniform(2).unwrap(), 4, 2, 3);
        assert_eq!(r.theta_exponents().len(), 3);
    }
}
