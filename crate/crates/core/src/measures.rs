//! Rényi entropy and the indistinguishability functionals `I_{L+1}(G, P)` and
//! `θ^{(ℓ)}_{L+1}(G, P)`.
//!
//! Every sum runs in the natural-log domain and is converted to bits at the
//! end. Tuples range over the support of `P`; a tuple counts as
//! indistinguishable when the set of its distinct entries is not an edge.

use std::fmt;

use serde::Serialize;

use crate::budget::{checked_pow, Budget};
use crate::dist::Dist;
use crate::hypergraph::Hypergraph;
use crate::logsum::{LogSumExp, LN_2};
use crate::par;
use crate::{Error, Result};

/// A functional value in bits; `+inf` when the defining sum vanishes.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MeasureValue(f64);

impl MeasureValue {
    pub fn from_bits(bits: f64) -> Self {
        MeasureValue(bits)
    }

    pub fn bits(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// `None` for the infinite value.
    pub fn finite(self) -> Option<f64> {
        self.0.is_finite().then_some(self.0)
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Naive,
    InclusionExclusion,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Naive => "naive",
            Strategy::InclusionExclusion => "ix",
        }
    }
}

/// Natural log of a probability mass together with the number of tuples the
/// evaluation was charged for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogMass {
    pub ln: f64,
    pub work: u128,
}

/// Raw log-sums behind `I` and every `θ^{(ℓ)}`, `ℓ ∈ 1..=L`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTerms {
    pub list_size: usize,
    /// `ln Σ P(v_{[L+1]})` over indistinguishable tuples.
    pub ln_nonedge: f64,
    /// `ln Σ_{v_{[ℓ]}} P(v_{[ℓ]}) [Σ P(v_{[ℓ+1:L+1]})]²` for `ℓ = 1..=L`.
    pub ln_overlap: Vec<f64>,
    pub work: u128,
}

impl MomentTerms {
    pub fn i_bits(&self) -> MeasureValue {
        i_from_ln(self.ln_nonedge, self.list_size)
    }

    /// `θ^{(ℓ)}` for `ℓ ∈ 1..=L+1`.
    pub fn theta_bits(&self, ell: usize) -> MeasureValue {
        if ell == self.list_size + 1 {
            return self.i_bits();
        }
        theta_from_ln(self.ln_nonedge, self.ln_overlap[ell - 1], self.list_size)
    }

    /// Terms of the i.i.d. `n`-letter extension; every log-sum scales by `n`.
    pub fn power(&self, n: u32) -> MomentTerms {
        let n = n as f64;
        MomentTerms {
            list_size: self.list_size,
            ln_nonedge: self.ln_nonedge * n,
            ln_overlap: self.ln_overlap.iter().map(|t| t * n).collect(),
            work: self.work,
        }
    }
}

fn i_from_ln(ln_nonedge: f64, list_size: usize) -> MeasureValue {
    MeasureValue(-ln_nonedge / (list_size as f64 * LN_2))
}

fn theta_from_ln(ln_nonedge: f64, ln_overlap: f64, list_size: usize) -> MeasureValue {
    if ln_nonedge == f64::NEG_INFINITY {
        return MeasureValue(f64::INFINITY);
    }
    MeasureValue((ln_overlap - 2.0 * ln_nonedge) / (list_size as f64 * LN_2))
}

/// Rényi entropy of integer order `order ≥ 2`, in bits.
pub fn renyi_entropy(dist: &Dist, order: u32) -> Result<MeasureValue> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!(
            "Rényi order {order} must be at least 2"
        )));
    }
    let mut acc = LogSumExp::new();
    for &x in dist.support() {
        acc.push(order as f64 * dist.ln_prob(x));
    }
    let l = (order - 1) as f64;
    Ok(MeasureValue(-acc.ln() / (l * LN_2)))
}

fn check_list_size(list_size: usize) -> Result<()> {
    if list_size == 0 {
        return Err(Error::InvalidArgument(
            "list size L must be at least 1".into(),
        ));
    }
    Ok(())
}

fn check_alphabet(graph: &Hypergraph, dist: &Dist) -> Result<()> {
    if graph.vertex_count() != dist.len() {
        return Err(Error::InvalidArgument(format!(
            "distribution has {} entries for {} vertices",
            dist.len(),
            graph.vertex_count()
        )));
    }
    Ok(())
}

fn tuple_budget(dist: &Dist, len: usize, budget: &Budget) -> Result<u128> {
    let m = dist.support().len() as u128;
    let work = checked_pow(m, len as u32).unwrap_or(u128::MAX);
    budget.check("naive tuple enumeration", work, budget.enumeration)?;
    Ok(work)
}

struct Enumerator<'a> {
    graph: &'a Hypergraph,
    dist: &'a Dist,
    set: Vec<usize>,
}

impl<'a> Enumerator<'a> {
    fn new(graph: &'a Hypergraph, dist: &'a Dist) -> Self {
        Enumerator {
            graph,
            dist,
            set: Vec::new(),
        }
    }

    fn distinct_is_edge(&mut self, tuple: &[usize]) -> bool {
        self.set.clear();
        self.set.extend_from_slice(tuple);
        self.set.sort_unstable();
        self.set.dedup();
        self.graph.is_edge_set(&self.set)
    }

    /// Adds `ln P(suffix)` for every extension of `tuple` by `remaining`
    /// support letters whose distinct entries are not an edge. Subtrees
    /// whose prefix is already an edge are skipped for upward-closed
    /// hypergraphs.
    fn suffixes(
        &mut self,
        tuple: &mut Vec<usize>,
        remaining: usize,
        ln_p: f64,
        acc: &mut LogSumExp,
    ) {
        if remaining == 0 {
            if !self.distinct_is_edge(tuple) {
                acc.push(ln_p);
            }
            return;
        }
        let upward = self.graph.is_upward_closed();
        for &v in self.dist.support() {
            tuple.push(v);
            let pruned = upward && remaining > 1 && self.distinct_is_edge(tuple);
            if !pruned {
                self.suffixes(tuple, remaining - 1, ln_p + self.dist.ln_prob(v), acc);
            }
            tuple.pop();
        }
    }

    /// Adds `ln P(prefix) + 2 ln inner(prefix)` over prefixes of `len` letters.
    fn prefixes(
        &mut self,
        tuple: &mut Vec<usize>,
        len: usize,
        suffix_len: usize,
        ln_p: f64,
        acc: &mut LogSumExp,
    ) {
        if tuple.len() == len {
            let mut inner = LogSumExp::new();
            self.suffixes(tuple, suffix_len, 0.0, &mut inner);
            let inner = inner.ln();
            if inner > f64::NEG_INFINITY {
                acc.push(ln_p + 2.0 * inner);
            }
            return;
        }
        for &v in self.dist.support() {
            tuple.push(v);
            self.prefixes(tuple, len, suffix_len, ln_p + self.dist.ln_prob(v), acc);
            tuple.pop();
        }
    }
}

/// Log of the probability that `L+1` i.i.d. draws from `dist` are mutually
/// indistinguishable in `graph`.
pub fn nonedge_mass(
    graph: &Hypergraph,
    dist: &Dist,
    list_size: usize,
    strategy: Strategy,
    budget: &Budget,
) -> Result<LogMass> {
    check_list_size(list_size)?;
    check_alphabet(graph, dist)?;
    match strategy {
        Strategy::Naive => naive_nonedge(graph, dist, list_size, budget),
        Strategy::InclusionExclusion => ix_nonedge(graph, dist, list_size, budget),
    }
}

fn naive_nonedge(
    graph: &Hypergraph,
    dist: &Dist,
    list_size: usize,
    budget: &Budget,
) -> Result<LogMass> {
    let work = tuple_budget(dist, list_size + 1, budget)?;
    let support = dist.support();
    let partials = par::map_blocks(support.len() as u64, 1, |range| {
        let mut acc = LogSumExp::new();
        let mut en = Enumerator::new(graph, dist);
        for i in range {
            let v = support[i as usize];
            let mut tuple = vec![v];
            en.suffixes(&mut tuple, list_size, dist.ln_prob(v), &mut acc);
        }
        acc
    });
    let total = par::tree_reduce(partials, LogSumExp::new(), |a, b| a.merge(b));
    Ok(LogMass {
        ln: total.ln(),
        work,
    })
}

/// Non-edge mass of a channel-backed hypergraph through the union over
/// outputs: `Σ_{∅≠T⊆Y} (-1)^{|T|+1} q_T^{L+1}` with
/// `q_T = Σ_x P(x) 1{T ⊆ supp W(·|x)}`.
fn ix_nonedge(
    graph: &Hypergraph,
    dist: &Dist,
    list_size: usize,
    budget: &Budget,
) -> Result<LogMass> {
    let channel = graph.channel().ok_or_else(|| {
        Error::InvalidArgument("inclusion-exclusion needs a channel-backed hypergraph".into())
    })?;
    let outputs = channel.output_count();
    budget.check(
        "inclusion-exclusion output alphabet",
        outputs as u128,
        budget.ix_outputs as u128,
    )?;
    if outputs > 30 {
        return Err(Error::guard(
            "inclusion-exclusion output alphabet",
            outputs as u128,
            30,
        ));
    }
    let size = 1usize << outputs;
    // q[T] starts as the mass of inputs whose support is exactly T, then a
    // superset-sum pass turns it into the mass of supports containing T
    let mut q = vec![0.0f64; size];
    for &x in dist.support() {
        let mask = channel.support(x).ones().fold(0usize, |m, y| m | 1 << y);
        q[mask] += dist.prob(x);
    }
    for bit in 0..outputs {
        for mask in 0..size {
            if mask >> bit & 1 == 0 {
                q[mask] += q[mask | 1 << bit];
            }
        }
    }
    let power = (list_size + 1) as i32;
    let mut total = 0.0f64;
    for (mask, &qt) in q.iter().enumerate().skip(1) {
        if qt == 0.0 {
            continue;
        }
        let term = qt.powi(power);
        if mask.count_ones() % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    if total <= 0.0 {
        return Err(Error::Numeric(format!(
            "inclusion-exclusion mass {total} is not positive"
        )));
    }
    Ok(LogMass {
        ln: total.ln(),
        work: size as u128,
    })
}

/// `ln Σ_{v_{[ℓ]}} P(v_{[ℓ]}) [Σ_{σ(v_{[L+1]})∉E} P(v_{[ℓ+1:L+1]})]²` for
/// `ℓ ∈ 1..=L`.
pub fn overlap_mass(
    graph: &Hypergraph,
    dist: &Dist,
    list_size: usize,
    ell: usize,
    budget: &Budget,
) -> Result<LogMass> {
    check_list_size(list_size)?;
    check_alphabet(graph, dist)?;
    if ell == 0 || ell > list_size {
        return Err(Error::InvalidArgument(format!(
            "overlap {ell} outside 1..={list_size}"
        )));
    }
    let work = tuple_budget(dist, list_size + 1, budget)?;
    let support = dist.support();
    let suffix_len = list_size + 1 - ell;
    let partials = par::map_blocks(support.len() as u64, 1, |range| {
        let mut acc = LogSumExp::new();
        let mut en = Enumerator::new(graph, dist);
        for i in range {
            let v = support[i as usize];
            let mut tuple = vec![v];
            en.prefixes(&mut tuple, ell, suffix_len, dist.ln_prob(v), &mut acc);
        }
        acc
    });
    let total = par::tree_reduce(partials, LogSumExp::new(), |a, b| a.merge(b));
    Ok(LogMass {
        ln: total.ln(),
        work,
    })
}

/// All raw log-sums for list size `L`. The overlap sums are always
/// enumerated; `strategy` picks how the non-edge mass is computed.
pub fn moment_terms(
    graph: &Hypergraph,
    dist: &Dist,
    list_size: usize,
    strategy: Strategy,
    budget: &Budget,
) -> Result<MomentTerms> {
    let nonedge = nonedge_mass(graph, dist, list_size, strategy, budget)?;
    let mut work = nonedge.work;
    let mut ln_overlap = Vec::with_capacity(list_size);
    for ell in 1..=list_size {
        let m = overlap_mass(graph, dist, list_size, ell, budget)?;
        work += m.work;
        ln_overlap.push(m.ln);
    }
    Ok(MomentTerms {
        list_size,
        ln_nonedge: nonedge.ln,
        ln_overlap,
        work,
    })
}

/// `I_{L+1}(G, P)` in bits.
pub fn i_measure(
    graph: &Hypergraph,
    dist: &Dist,
    list_size: usize,
    strategy: Strategy,
    budget: &Budget,
) -> Result<MeasureValue> {
    let mass = nonedge_mass(graph, dist, list_size, strategy, budget)?;
    Ok(i_from_ln(mass.ln, list_size))
}

/// `θ^{(ℓ)}_{L+1}(G, P)` in bits for `ℓ ∈ 1..=L+1`; `ℓ = L+1` is `I_{L+1}`.
pub fn theta_measure(
    graph: &Hypergraph,
    dist: &Dist,
    list_size: usize,
    ell: usize,
    budget: &Budget,
) -> Result<MeasureValue> {
    check_list_size(list_size)?;
    if ell == list_size + 1 {
        return i_measure(graph, dist, list_size, Strategy::Naive, budget);
    }
    let nonedge = nonedge_mass(graph, dist, list_size, Strategy::Naive, budget)?;
    let overlap = overlap_mass(graph, dist, list_size, ell, budget)?;
    Ok(theta_from_ln(nonedge.ln, overlap.ln, list_size))
}

/// Closed form of `θ^{(ℓ)}_{L+1}` when the induced hypergraph is complete
/// multipartite with part masses `parts`:
/// `2 H_{L+1}(P*) - (2L+1-ℓ)/L · H_{2L+2-ℓ}(P*)`.
pub fn theta_complete_multipartite(
    parts: &Dist,
    list_size: usize,
    ell: usize,
) -> Result<MeasureValue> {
    check_list_size(list_size)?;
    if ell == 0 || ell > list_size + 1 {
        return Err(Error::InvalidArgument(format!(
            "overlap {ell} outside 1..={}",
            list_size + 1
        )));
    }
    let l = list_size as u32;
    let h_main = renyi_entropy(parts, l + 1)?.bits();
    let order = 2 * l + 2 - ell as u32;
    let h_other = renyi_entropy(parts, order)?.bits();
    let coeff = (2 * l + 1 - ell as u32) as f64 / l as f64;
    Ok(MeasureValue(2.0 * h_main - coeff * h_other))
}

/// Restriction of `graph` to the support of `dist`, densely re-indexed; the
/// index map is available through [`Hypergraph::index_map`].
pub fn induced_subhypergraph(graph: &Hypergraph, dist: &Dist) -> Result<Hypergraph> {
    check_alphabet(graph, dist)?;
    graph.induce(dist.support())
}

/// The support-restricted distribution matching [`induced_subhypergraph`].
pub fn restrict_to_support(dist: &Dist) -> Result<Dist> {
    Dist::new(dist.support().iter().map(|&x| dist.prob(x)).collect())
}

/// Value of an additive functional on the `n`-fold product.
pub fn product_measure_value(single_letter: MeasureValue, n: u32) -> Result<MeasureValue> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "blocklength must be at least 1".into(),
        ));
    }
    if single_letter.is_infinite() {
        return Err(Error::InvalidArgument(
            "single-letter value is infinite".into(),
        ));
    }
    let v = single_letter.bits() * n as f64;
    if !v.is_finite() {
        return Err(Error::Overflow(format!(
            "{} bits × {n}",
            single_letter.bits()
        )));
    }
    Ok(MeasureValue(v))
}

/// One emitted measurement.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureRecord {
    pub measure: String,
    #[serde(rename = "L")]
    pub list_size: usize,
    pub ell: Option<usize>,
    pub value_bits: Option<f64>,
    pub strategy: String,
    pub budget_used: u128,
}

/// Records for `H_{L+1}`, `I_{L+1}` and each `θ^{(ℓ)}`.
pub fn measure_records(
    graph: &Hypergraph,
    dist: &Dist,
    list_size: usize,
    strategy: Strategy,
    budget: &Budget,
) -> Result<Vec<MeasureRecord>> {
    let terms = moment_terms(graph, dist, list_size, strategy, budget)?;
    let nonedge = nonedge_mass(graph, dist, list_size, strategy, budget)?;
    let mut out = vec![
        MeasureRecord {
            measure: "renyi".into(),
            list_size,
            ell: None,
            value_bits: renyi_entropy(dist, list_size as u32 + 1)?.finite(),
            strategy: "direct".into(),
            budget_used: dist.support().len() as u128,
        },
        MeasureRecord {
            measure: "I".into(),
            list_size,
            ell: None,
            value_bits: terms.i_bits().finite(),
            strategy: strategy.name().into(),
            budget_used: nonedge.work,
        },
    ];
    for ell in 1..=list_size + 1 {
        out.push(MeasureRecord {
            measure: "theta".into(),
            list_size,
            ell: Some(ell),
            value_bits: terms.theta_bits(ell).finite(),
            strategy: if ell == list_size + 1 {
                strategy.name()
            } else {
                "naive"
            }
            .into(),
            budget_used: if ell == list_size + 1 {
                nonedge.work
            } else {
                terms.work
            },
        });
    }
    Ok(out)
}
