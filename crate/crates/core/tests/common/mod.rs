//! Random instance generators and brute-force oracles shared by the
//! integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use zelist::channel::distinguishability_hypergraph;
use zelist::graph::SimpleGraph;
use zelist::{Channel, Dist, Hypergraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Random distribution on `k` letters; with `zeros`, each letter is dropped
/// with probability 1/5 (at least one letter survives).
pub fn random_dist(rng: &mut ChaCha8Rng, k: usize, zeros: bool) -> Dist {
    let keep = rng.random_range(0..k);
    let w: Vec<f64> = (0..k)
        .map(|i| {
            if zeros && i != keep && rng.random_bool(0.2) {
                0.0
            } else {
                rng.random_range(0.05..1.0)
            }
        })
        .collect();
    let total: f64 = w.iter().sum();
    Dist::new(w.iter().map(|v| v / total).collect()).unwrap()
}

/// Channel with `inputs` rows over `outputs` columns; each entry is zero with
/// probability 1/2, every row keeps at least one positive entry.
pub fn random_channel(rng: &mut ChaCha8Rng, inputs: usize, outputs: usize) -> Channel {
    let rows = (0..inputs)
        .map(|_| {
            let keep = rng.random_range(0..outputs);
            let w: Vec<f64> = (0..outputs)
                .map(|y| {
                    if y == keep || rng.random_bool(0.5) {
                        rng.random_range(0.1..1.0)
                    } else {
                        0.0
                    }
                })
                .collect();
            let total: f64 = w.iter().sum();
            w.iter().map(|v| v / total).collect()
        })
        .collect();
    Channel::new(rows).unwrap()
}

/// Arbitrary (not necessarily upward-closed) family of sets of size
/// `2..=max_size`, each present with probability `density`.
pub fn random_family(rng: &mut ChaCha8Rng, k: usize, max_size: usize, density: f64) -> Hypergraph {
    let mut edges = Vec::new();
    for mask in 0u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if (2..=max_size).contains(&size) && rng.random_bool(density) {
            edges.push((0..k).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    Hypergraph::explicit(k, edges, false).unwrap()
}

/// Either a channel-induced (upward-closed) hypergraph or an arbitrary family.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, k: usize, max_size: usize) -> Hypergraph {
    if rng.random_bool(0.5) {
        let outputs = rng.random_range(2..=4);
        distinguishability_hypergraph(&random_channel(rng, k, outputs))
    } else {
        let density = rng.random_range(0.1..0.9);
        random_family(rng, k, max_size, density)
    }
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> SimpleGraph {
    let density = rng.random_range(0.0..1.0);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(density) {
                edges.push((a, b));
            }
        }
    }
    SimpleGraph::new(n, &edges).unwrap()
}

/// Random set partition of `0..k`.
pub fn random_partition(rng: &mut ChaCha8Rng, k: usize) -> Vec<Vec<usize>> {
    let parts = rng.random_range(1..=k);
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); parts];
    for v in 0..k {
        // the first `parts` vertices seed one part each so none is empty
        let p = if v < parts {
            v
        } else {
            rng.random_range(0..parts)
        };
        out[p].push(v);
    }
    out
}

/// All set partitions of `0..k` as restricted growth strings.
pub fn all_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    fn walk(v: usize, k: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v == k {
            let count = labels.iter().max().map_or(0, |m| m + 1);
            let mut parts = vec![Vec::new(); count];
            for (x, &l) in labels.iter().enumerate() {
                parts[l].push(x);
            }
            out.push(parts);
            return;
        }
        let next = labels.iter().max().map_or(0, |m| m + 1);
        for l in 0..=next {
            labels.push(l);
            walk(v + 1, k, labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    walk(0, k, &mut Vec::new(), &mut out);
    out
}

/// Probability that `draws` i.i.d. letters from `probs` repeat no letter
/// more than `max_mult` times, for each `max_mult` in `1..=max_l`, by
/// enumerating every sequence.
pub fn brute_no_multicollision(probs: &[f64], draws: usize, max_l: usize) -> Vec<f64> {
    let k = probs.len();
    let mut seq = vec![0usize; draws];
    // Neumaier-compensated sums
    let mut out = vec![0.0; max_l];
    let mut comp = vec![0.0; max_l];
    let mut counts = vec![0usize; k];
    loop {
        counts.iter_mut().for_each(|c| *c = 0);
        let mut weight = 1.0;
        for &x in &seq {
            counts[x] += 1;
            weight *= probs[x];
        }
        let worst = counts.iter().copied().max().unwrap_or(0);
        for l in 0..max_l {
            if worst <= l + 1 {
                let t = out[l] + weight;
                comp[l] += if out[l].abs() >= weight {
                    (out[l] - t) + weight
                } else {
                    (weight - t) + out[l]
                };
                out[l] = t;
            }
        }
        let mut i = 0;
        while i < draws {
            seq[i] += 1;
            if seq[i] < k {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == draws {
            return out.iter().zip(&comp).map(|(s, c)| s + c).collect();
        }
    }
}
