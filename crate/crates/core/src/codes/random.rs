//! Random codebooks: `M` words drawn i.i.d. from `Pⁿ`. Monte Carlo and
//! exact probabilities that the draw is a zero-error list code.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::birthday::product_no_multicollision_prob;
use crate::budget::{checked_pow, Budget};
use crate::channel::{distinguishability_hypergraph, Channel};
use crate::dist::Dist;
use crate::hypergraph::Hypergraph;
use crate::par;
use crate::{Error, Result};

use super::verify_vertices;

const TRIAL_BLOCK: u64 = 256;
const CODEBOOK_BLOCK: u64 = 4096;
/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959963984540054;

/// Letters in support order mapped to parts of the induced hypergraph, when
/// it is complete multipartite.
#[derive(Debug, Clone)]
struct Parts {
    part_of: Vec<usize>,
    masses: Dist,
}

/// The random-coding ensemble for a single-letter hypergraph, input
/// distribution and blocklength.
#[derive(Debug, Clone)]
pub struct Ensemble {
    graph: Hypergraph,
    dist: Dist,
    blocklength: u32,
    support: Vec<usize>,
    sampler: WeightedIndex<f64>,
    parts: Option<Parts>,
}

impl Ensemble {
    pub fn new(graph: Hypergraph, dist: Dist, blocklength: u32, budget: &Budget) -> Result<Self> {
        if blocklength == 0 {
            return Err(Error::InvalidArgument(
                "blocklength must be at least 1".into(),
            ));
        }
        if dist.len() != graph.vertex_count() {
            return Err(Error::InvalidDist(format!(
                "distribution has {} entries, hypergraph has {} vertices",
                dist.len(),
                graph.vertex_count()
            )));
        }
        let support = dist.support().to_vec();
        let weights: Vec<f64> = support.iter().map(|&x| dist.prob(x)).collect();
        let sampler =
            WeightedIndex::new(&weights).map_err(|e| Error::InvalidDist(e.to_string()))?;
        let parts = graph
            .induce(&support)?
            .complete_multipartite_decompose(budget)?
            .map(|d| Parts {
                part_of: d.part_of(),
                masses: Dist::new(d.part_masses(&weights)).expect("part masses of a distribution"),
            });
        Ok(Ensemble {
            graph,
            dist,
            blocklength,
            support,
            sampler,
            parts,
        })
    }

    pub fn from_channel(
        channel: &Channel,
        dist: Dist,
        blocklength: u32,
        budget: &Budget,
    ) -> Result<Self> {
        Ensemble::new(
            distinguishability_hypergraph(channel),
            dist,
            blocklength,
            budget,
        )
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn dist(&self) -> &Dist {
        &self.dist
    }

    pub fn blocklength(&self) -> u32 {
        self.blocklength
    }

    /// Whether the induced hypergraph is complete multipartite, in which case
    /// codebooks are checked by counting part-words.
    pub fn is_multipartite(&self) -> bool {
        self.parts.is_some()
    }

    /// Distribution over parts of the induced hypergraph, if multipartite.
    pub fn part_masses(&self) -> Option<&Dist> {
        self.parts.as_ref().map(|p| &p.masses)
    }

    fn power_graph(&self) -> Result<Hypergraph> {
        checked_pow(self.graph.vertex_count() as u128, self.blocklength)
            .filter(|&v| v <= usize::MAX as u128)
            .ok_or_else(|| {
                Error::Overflow(format!("|X|^{} does not fit an index", self.blocklength))
            })?;
        if self.blocklength == 1 {
            Ok(self.graph.clone())
        } else {
            self.graph.conormal_power(self.blocklength)
        }
    }
}

/// Sorted keys with a run longer than `max_mult`.
fn has_long_run<K: Ord>(keys: &mut [K], max_mult: usize) -> bool {
    keys.sort_unstable();
    keys.windows(max_mult + 1).any(|w| w[0] == w[max_mult])
}

fn binomial_u128(m: u64, k: u64) -> u128 {
    if k > m {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((m - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Monte Carlo estimate with a 95% Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// 95% Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Fraction of `trials` sampled codebooks that are zero-error list codes.
/// Trial `t` draws from ChaCha8 seeded with `seed` on stream `t`, so the
/// result does not depend on the number of worker threads.
pub fn mc_zero_error_probability(
    ens: &Ensemble,
    messages: u64,
    list_size: usize,
    trials: u64,
    seed: u64,
    budget: &Budget,
) -> Result<McEstimate> {
    if trials == 0 || messages == 0 || list_size == 0 {
        return Err(Error::InvalidArgument(
            "trials, M and L must be at least 1".into(),
        ));
    }
    let successes = if messages <= list_size as u64 {
        trials
    } else {
        budget.check("codewords per trial", messages as u128, budget.enumeration)?;
        let m = messages as usize;
        let n = ens.blocklength as usize;
        let counts: Vec<u64> = match &ens.parts {
            Some(parts) => {
                let kp = parts.masses.len() as u128;
                match checked_pow(kp, ens.blocklength) {
                    Some(_) => par::map_blocks(trials, TRIAL_BLOCK, |range| {
                        let mut keys = vec![0u128; m];
                        range
                            .filter(|&t| {
                                let mut rng = trial_rng(seed, t);
                                for key in keys.iter_mut() {
                                    let mut k = 0u128;
                                    for _ in 0..n {
                                        k = k * kp
                                            + parts.part_of[ens.sampler.sample(&mut rng)] as u128;
                                    }
                                    *key = k;
                                }
                                !has_long_run(&mut keys, list_size)
                            })
                            .count() as u64
                    }),
                    None => par::map_blocks(trials, TRIAL_BLOCK, |range| {
                        range
                            .filter(|&t| {
                                let mut rng = trial_rng(seed, t);
                                let mut keys: Vec<Vec<u32>> = (0..m)
                                    .map(|_| {
                                        (0..n)
                                            .map(|_| {
                                                parts.part_of[ens.sampler.sample(&mut rng)] as u32
                                            })
                                            .collect()
                                    })
                                    .collect();
                                !has_long_run(&mut keys, list_size)
                            })
                            .count() as u64
                    }),
                }
            }
            None => {
                let subsets = binomial_u128(messages, list_size as u64 + 1);
                budget.check("subsets per trial", subsets, budget.subsets_per_trial)?;
                let power = ens.power_graph()?;
                let k = ens.graph.vertex_count();
                par::map_blocks(trials, TRIAL_BLOCK, |range| {
                    let mut words = vec![0usize; m];
                    range
                        .filter(|&t| {
                            let mut rng = trial_rng(seed, t);
                            for w in words.iter_mut() {
                                let mut idx = 0usize;
                                let mut place = 1usize;
                                for _ in 0..n {
                                    idx += ens.support[ens.sampler.sample(&mut rng)] * place;
                                    place = place.wrapping_mul(k);
                                }
                                *w = idx;
                            }
                            verify_vertices(&words, &power, list_size)
                        })
                        .count() as u64
                })
            }
        };
        counts.into_iter().sum()
    };
    let (ci_low, ci_high) = wilson_interval(successes, trials);
    Ok(McEstimate {
        trials,
        successes,
        estimate: successes as f64 / trials as f64,
        ci_low,
        ci_high,
    })
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// How [`exact_zero_error_probability_with`] evaluates the probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactMethod {
    /// Occupancy when the induced hypergraph is complete multipartite,
    /// enumeration otherwise.
    Auto,
    /// Weighted enumeration of every codebook over the support.
    Enumerate,
    /// Multicollision probability over the part distribution.
    Occupancy,
}

/// Exact probability that a random codebook is a zero-error list code.
pub fn exact_zero_error_probability(
    ens: &Ensemble,
    messages: u64,
    list_size: usize,
    budget: &Budget,
) -> Result<f64> {
    exact_zero_error_probability_with(ens, messages, list_size, ExactMethod::Auto, budget)
}

pub fn exact_zero_error_probability_with(
    ens: &Ensemble,
    messages: u64,
    list_size: usize,
    method: ExactMethod,
    budget: &Budget,
) -> Result<f64> {
    if messages == 0 || list_size == 0 {
        return Err(Error::InvalidArgument("M and L must be at least 1".into()));
    }
    let use_occupancy = match method {
        ExactMethod::Auto => ens.parts.is_some(),
        ExactMethod::Enumerate => false,
        ExactMethod::Occupancy => true,
    };
    if use_occupancy {
        let parts = ens.parts.as_ref().ok_or_else(|| {
            Error::InvalidArgument("induced hypergraph is not complete multipartite".into())
        })?;
        return product_no_multicollision_prob(
            &parts.masses,
            ens.blocklength,
            messages,
            list_size as u32,
            budget,
        );
    }
    if messages <= list_size as u64 {
        return Ok(1.0);
    }
    enumerate_codebooks(ens, messages, list_size, budget)
}

fn enumerate_codebooks(
    ens: &Ensemble,
    messages: u64,
    list_size: usize,
    budget: &Budget,
) -> Result<f64> {
    let s = ens.support.len() as u128;
    let words = checked_pow(s, ens.blocklength).unwrap_or(u128::MAX);
    let total = u32::try_from(messages)
        .ok()
        .and_then(|m| checked_pow(words, m))
        .unwrap_or(u128::MAX);
    budget.check("codebooks", total, budget.codebooks)?;
    let power = ens.power_graph()?;
    let k = ens.graph.vertex_count();

    // every support word: vertex index in the power hypergraph and probability
    let words = words as usize;
    let mut table = Vec::with_capacity(words);
    for w in 0..words {
        let (mut rest, mut idx, mut place, mut prob) = (w, 0usize, 1usize, 1.0f64);
        for _ in 0..ens.blocklength {
            let x = ens.support[rest % ens.support.len()];
            rest /= ens.support.len();
            idx += x * place;
            place = place.wrapping_mul(k);
            prob *= ens.dist.prob(x);
        }
        table.push((idx, prob));
    }
    let m = messages as usize;
    let sums = par::map_blocks(total as u64, CODEBOOK_BLOCK, |range| {
        let mut code = vec![0usize; m];
        let mut sum = 0.0;
        for c in range {
            let mut rest = c as usize;
            let mut weight = 1.0;
            for slot in code.iter_mut() {
                let (idx, p) = table[rest % words];
                rest /= words;
                *slot = idx;
                weight *= p;
            }
            if verify_vertices(&code, &power, list_size) {
                sum += weight;
            }
        }
        sum
    });
    Ok(par::tree_reduce(sums, 0.0, |a, b| a + b).min(1.0))
}
