//! `I_2` against the clique number, Körner's graph entropy `H_1(G,P)` and
//! the order-2 graph entropy `H_2(G,P)`, which satisfy
//! `I_2(G,P) ≤ H_2(G,P) ≤ H_1(G,P)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::dist::Dist;
use crate::graph::{clique_number, maximal_independent_sets, SimpleGraph};
use crate::measures::{i_measure, Strategy};
use crate::par;
use crate::{Error, Result};

const RESTARTS: u64 = 20;
const RESTART_SEED: u64 = 0x6d73_7265_706c;
const REPLICATOR_STEPS: usize = 20_000;
const KORNER_TOL: f64 = 1e-10;
const KORNER_STEPS: usize = 100_000;
pub const CHAIN_TOL: f64 = 1e-6;

/// Maximum of `I_2(G,·)` over distributions, with a numerical witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MotzkinStraus {
    pub clique_number: usize,
    /// `log2 ω(G)`.
    pub value_bits: f64,
    /// Best `I_2` reached by replicator ascent over the restarts.
    pub witness_bits: f64,
    pub gap_bits: f64,
    pub restarts: u64,
}

/// `x' ∝ x ⊙ (A + I/2)x` from a seeded random start. The diagonal shift
/// makes every local maximiser the barycentre of a maximal clique.
fn replicator(g: &SimpleGraph, restart: u64) -> f64 {
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(RESTART_SEED);
    rng.set_stream(restart);
    let mut x: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v /= total);
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&u| g.has_edge(v, u)).collect())
        .collect();
    let mut ax = vec![0.0; n];
    for _ in 0..REPLICATOR_STEPS {
        for v in 0..n {
            ax[v] = rows[v].iter().map(|&u| x[u]).sum::<f64>() + 0.5 * x[v];
        }
        let norm: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let mut moved = 0.0f64;
        for v in 0..n {
            let next = x[v] * ax[v] / norm;
            moved = moved.max((next - x[v]).abs());
            x[v] = next;
        }
        if moved < 1e-15 {
            break;
        }
    }
    let quad: f64 = (0..n)
        .map(|v| x[v] * rows[v].iter().map(|&u| x[u]).sum::<f64>())
        .sum();
    -(1.0 - quad).log2()
}

pub fn motzkin_straus_value(g: &SimpleGraph, budget: &Budget) -> Result<MotzkinStraus> {
    if g.vertex_count() == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()));
    }
    let omega = clique_number(g, budget)?;
    let value = (omega as f64).log2();
    let restarts: Vec<u64> = (0..RESTARTS).collect();
    let witness = par::map_items(&restarts, |&r| replicator(g, r))
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(MotzkinStraus {
        clique_number: omega,
        value_bits: value,
        witness_bits: witness,
        gap_bits: value - witness,
        restarts: RESTARTS,
    })
}

/// `|V|² / (|V|² - 2|E|)`, a lower bound on `ω(G)`.
pub fn turan_bound(g: &SimpleGraph) -> Result<f64> {
    let v = g.vertex_count() as f64;
    if v == 0.0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()));
    }
    Ok(v * v / (v * v - 2.0 * g.edge_count() as f64))
}

/// Positive-probability part of `(G, P)` and its maximal independent sets.
struct Reduced {
    probs: Vec<f64>,
    sets: Vec<Vec<usize>>,
    /// For each vertex, indices of the sets containing it.
    containing: Vec<Vec<usize>>,
}

fn reduce(g: &SimpleGraph, dist: &Dist, budget: &Budget) -> Result<Reduced> {
    if dist.len() != g.vertex_count() {
        return Err(Error::InvalidDist(format!(
            "distribution has {} entries, graph has {} vertices",
            dist.len(),
            g.vertex_count()
        )));
    }
    let support = dist.support();
    let sub = g.induce(support);
    let sets = maximal_independent_sets(&sub, budget)?;
    let mut containing = vec![Vec::new(); support.len()];
    for (i, s) in sets.iter().enumerate() {
        for &x in s {
            containing[x].push(i);
        }
    }
    Ok(Reduced {
        probs: support.iter().map(|&x| dist.prob(x)).collect(),
        sets,
        containing,
    })
}

/// Result of the alternating minimisation for `H_1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KornerEntropy {
    /// `I(X;Y)` at the final conditional.
    pub bits: f64,
    pub iterations: usize,
    /// Objective decrease in the last step.
    pub improvement: f64,
    pub converged: bool,
    /// Every step decreased the objective.
    pub monotone: bool,
}

/// `H_1(G,P) = min I(X;Y)` over joints with `X ~ P` and `X ∈ Y`, `Y` a
/// maximal independent set.
///
/// For a marginal `r` on the sets, the best conditional is
/// `Q(y|x) = r(y)/a_x` with `a_x = Σ_{y∋x} r(y)`, giving the objective
/// `-Σ P(x) log a_x`; the marginal is then re-estimated from `Q`.
pub fn korner_entropy(g: &SimpleGraph, dist: &Dist, budget: &Budget) -> Result<KornerEntropy> {
    let red = reduce(g, dist, budget)?;
    let m = red.sets.len();
    let mut r = vec![1.0 / m as f64; m];
    let mut a = vec![0.0; red.probs.len()];
    let fill = |r: &[f64], a: &mut [f64]| -> f64 {
        let mut obj = 0.0;
        for (x, ys) in red.containing.iter().enumerate() {
            a[x] = ys.iter().map(|&y| r[y]).sum();
            obj -= red.probs[x] * a[x].log2();
        }
        obj
    };
    let mut obj = fill(&r, &mut a);
    let (mut iterations, mut improvement, mut converged, mut monotone) =
        (0, f64::INFINITY, false, true);
    while iterations < KORNER_STEPS {
        iterations += 1;
        for (y, set) in red.sets.iter().enumerate() {
            r[y] *= set.iter().map(|&x| red.probs[x] / a[x]).sum::<f64>();
        }
        let next = fill(&r, &mut a);
        improvement = obj - next;
        if improvement < -1e-12 {
            monotone = false;
        }
        obj = next;
        if improvement < KORNER_TOL {
            converged = true;
            break;
        }
    }
    let mut marginal = vec![0.0; m];
    for (x, ys) in red.containing.iter().enumerate() {
        for &y in ys {
            marginal[y] += red.probs[x] * r[y] / a[x];
        }
    }
    let mut mi = 0.0;
    for (x, ys) in red.containing.iter().enumerate() {
        for &y in ys {
            let q = r[y] / a[x];
            if q > 0.0 {
                mi += red.probs[x] * q * (q / marginal[y]).log2();
            }
        }
    }
    Ok(KornerEntropy {
        bits: mi.max(0.0),
        iterations,
        improvement,
        converged,
        monotone,
    })
}

/// Optimal assignment for `H_2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Order2Entropy {
    pub bits: f64,
    /// `Σ_{x∈y} P(x)P(y)` at the optimum.
    pub inner: f64,
    /// Chosen independent set (original vertex labels) for each
    /// positive-probability vertex, in support order.
    pub assignment: Vec<Vec<usize>>,
}

/// `H_2(G,P) = min -log Σ_{x∈y} P(x)P(y)`. The inner sum equals
/// `Σ_x P(x) Σ_y Q(y|x) w(y)` with `w(y) = Σ_{x∈y} P(x)`, which is linear in
/// `Q`, so each vertex takes a set of maximal weight.
pub fn order2_graph_entropy(
    g: &SimpleGraph,
    dist: &Dist,
    budget: &Budget,
) -> Result<Order2Entropy> {
    let red = reduce(g, dist, budget)?;
    let w = set_weights(&red);
    let mut inner = 0.0;
    let mut assignment = Vec::with_capacity(red.probs.len());
    for (x, ys) in red.containing.iter().enumerate() {
        let best = ys
            .iter()
            .copied()
            .fold(ys[0], |b, y| if w[y] > w[b] { y } else { b });
        inner += red.probs[x] * w[best];
        let support = dist.support();
        assignment.push(red.sets[best].iter().map(|&v| support[v]).collect());
    }
    Ok(Order2Entropy {
        bits: -inner.log2(),
        inner,
        assignment,
    })
}

fn set_weights(red: &Reduced) -> Vec<f64> {
    red.sets
        .iter()
        .map(|s| s.iter().map(|&x| red.probs[x]).sum())
        .collect()
}

/// `H_2` by trying every deterministic assignment of vertices to sets.
pub fn order2_exhaustive(g: &SimpleGraph, dist: &Dist, budget: &Budget) -> Result<f64> {
    let red = reduce(g, dist, budget)?;
    let w = set_weights(&red);
    let total = red
        .containing
        .iter()
        .try_fold(1u128, |acc, ys| acc.checked_mul(ys.len() as u128))
        .unwrap_or(u128::MAX);
    budget.check("deterministic assignments", total, budget.assignments)?;
    let mut choice = vec![0usize; red.probs.len()];
    let mut best = f64::NEG_INFINITY;
    loop {
        let inner: f64 = choice
            .iter()
            .enumerate()
            .map(|(x, &c)| red.probs[x] * w[red.containing[x][c]])
            .sum();
        best = best.max(inner);
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < red.containing[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    Ok(-best.log2())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyReport {
    pub i2_bits: f64,
    pub h2_bits: f64,
    pub h1_bits: f64,
    pub h1_iterations: usize,
    pub h1_improvement: f64,
    pub h1_converged: bool,
    pub h1_monotone: bool,
    /// `I_2 ≤ H_2 ≤ H_1` within [`CHAIN_TOL`].
    pub chain_holds: bool,
}

pub fn entropy_chain_check(g: &SimpleGraph, dist: &Dist, budget: &Budget) -> Result<EntropyReport> {
    let i2 = i_measure(&g.to_hypergraph()?, dist, 1, Strategy::Naive, budget)?.bits();
    let h2 = order2_graph_entropy(g, dist, budget)?.bits;
    let h1 = korner_entropy(g, dist, budget)?;
    Ok(EntropyReport {
        i2_bits: i2,
        h2_bits: h2,
        h1_bits: h1.bits,
        h1_iterations: h1.iterations,
        h1_improvement: h1.improvement,
        h1_converged: h1.converged,
        h1_monotone: h1.monotone,
        chain_holds: i2 <= h2 + CHAIN_TOL && h2 <= h1.bits + CHAIN_TOL,
    })
}
