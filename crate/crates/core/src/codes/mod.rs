//! Zero-error list codes: verification, decoders, moment bounds, and the
//! Monte Carlo and exact probabilities for random codebooks.
//!
//! Messages are 0-based indices into the codebook.

mod moments;
mod random;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::channel::ExtensionChannel;
use crate::hypergraph::Hypergraph;
use crate::words;
use crate::{Error, Result};

pub use moments::{
    achievable_rate_threshold, z_moments, z_moments_for, zero_error_prob_bounds, MomentReport,
    RateThreshold,
};
pub use random::{
    exact_zero_error_probability, exact_zero_error_probability_with, mc_zero_error_probability,
    wilson_interval, Ensemble, ExactMethod, McEstimate,
};

/// An encoder `[M] → 𝒳ⁿ`, stored as one letter sequence per message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codebook {
    pub n: usize,
    pub words: Vec<Vec<usize>>,
}

impl Codebook {
    pub fn new(n: usize, words: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCodebook(
                "blocklength must be at least 1".into(),
            ));
        }
        if words.is_empty() {
            return Err(Error::InvalidCodebook("no messages".into()));
        }
        if let Some((m, w)) = words.iter().enumerate().find(|(_, w)| w.len() != n) {
            return Err(Error::InvalidCodebook(format!(
                "word {m} has length {}, expected {n}",
                w.len()
            )));
        }
        Ok(Codebook { n, words })
    }

    pub fn messages(&self) -> usize {
        self.words.len()
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: Codebook = serde_json::from_str(text)?;
        Codebook::new(raw.n, raw.words)
    }

    /// Vertex index of every word in the hypergraph `graph` over `𝒳ⁿ`.
    fn vertices_in(&self, graph: &Hypergraph) -> Result<Vec<usize>> {
        let alphabet = match graph.power_base() {
            Some((base, n)) if n as usize == self.n => base.vertex_count(),
            _ if self.n == 1 => graph.vertex_count(),
            _ => {
                return Err(Error::InvalidCodebook(format!(
                    "blocklength {} does not match the hypergraph",
                    self.n
                )))
            }
        };
        self.words
            .iter()
            .map(|w| words::encode(w, alphabet))
            .collect()
    }
}

/// Calls `visit` with each `k`-subset of `0..m` in lexicographic order until
/// it returns false. Returns whether every call returned true.
pub(crate) fn for_each_combination(
    m: usize,
    k: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> bool {
    if k > m {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] != i + m - k {
                break;
            }
            if i == 0 {
                return true;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Zero-error test on encoded codewords: every `(L+1)`-subset of messages
/// must map onto a set of at least two distinct words forming an edge.
pub(crate) fn verify_vertices(codewords: &[usize], graph: &Hypergraph, list_size: usize) -> bool {
    let m = codewords.len();
    if m <= list_size {
        return true;
    }
    let mut sorted = codewords.to_vec();
    sorted.sort_unstable();
    // a word used more than L times is already fatal
    if sorted.windows(list_size + 1).any(|w| w[0] == w[list_size]) {
        return false;
    }
    let mut set = Vec::with_capacity(list_size + 1);
    for_each_combination(m, list_size + 1, |subset| {
        set.clear();
        set.extend(subset.iter().map(|&i| codewords[i]));
        set.sort_unstable();
        set.dedup();
        graph.is_edge_set(&set)
    })
}

/// Whether `code` is an `(M, n, L)` zero-error list code for the hypergraph
/// `graph` of the `n`-letter channel (a co-normal power, or a single-letter
/// hypergraph when `n = 1`).
pub fn verify_zero_error_code(
    code: &Codebook,
    graph: &Hypergraph,
    list_size: usize,
) -> Result<bool> {
    if list_size == 0 {
        return Err(Error::InvalidArgument(
            "list size L must be at least 1".into(),
        ));
    }
    let vertices = code.vertices_in(graph)?;
    Ok(verify_vertices(&vertices, graph, list_size))
}

/// Output word (as letters) to the messages that can produce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListDecoder {
    pub list_size: usize,
    pub table: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl ListDecoder {
    /// Candidate messages for `output`; empty for unreachable outputs.
    pub fn decode(&self, output: &[usize]) -> &[usize] {
        self.table.get(output).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Tabulates `g(y) = {m : Wⁿ(y|f(m)) > 0}` over all output words, after
/// checking that `code` is zero-error so every list has at most `L` entries.
pub fn build_list_decoder(
    code: &Codebook,
    channel: &ExtensionChannel,
    list_size: usize,
    budget: &Budget,
) -> Result<ListDecoder> {
    if code.n != channel.blocklength() as usize {
        return Err(Error::InvalidCodebook(
            "blocklength does not match the channel".into(),
        ));
    }
    let graph = channel.hypergraph();
    if !verify_zero_error_code(code, &graph, list_size)? {
        return Err(Error::NotZeroError(list_size));
    }
    let outputs = channel.output_words();
    budget.check(
        "decoder output words",
        outputs as u128,
        budget.decoder_outputs,
    )?;
    let inputs = code.vertices_in(&graph)?;
    let ky = channel.base().output_count();
    let mut table = BTreeMap::new();
    for y in 0..outputs {
        let list: Vec<usize> = inputs
            .iter()
            .enumerate()
            .filter(|(_, &x)| channel.reachable(x, y))
            .map(|(m, _)| m)
            .collect();
        if list.is_empty() {
            continue;
        }
        if list.len() > list_size {
            return Err(Error::Numeric(format!(
                "list of size {} exceeds L = {list_size}",
                list.len()
            )));
        }
        table.insert(words::decode(y, ky, code.n), list);
    }
    Ok(ListDecoder { list_size, table })
}
