//! Discrete memoryless channels and their distinguishability hypergraphs.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::hypergraph::{Hypergraph, MultipartiteDecomposition};
use crate::words;
use crate::{Error, Result};

const ROW_TOLERANCE: f64 = 1e-9;

/// A channel `W(y|x)` with cached output supports.
///
/// Supports use strict positivity with no epsilon: distinguishability is a
/// zero-pattern property.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    input_labels: Option<Vec<String>>,
    output_labels: Option<Vec<String>>,
    matrix: Vec<Vec<f64>>,
    support: Vec<FixedBitSet>,
}

#[derive(Serialize, Deserialize)]
struct ChannelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inputs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outputs: Option<Vec<String>>,
    matrix: Vec<Vec<f64>>,
}

impl Channel {
    /// Validates a row-stochastic matrix (rows are inputs). Rows within
    /// `1e-9` of summing to one are renormalized.
    pub fn new(matrix: Vec<Vec<f64>>) -> Result<Self> {
        if matrix.is_empty() {
            return Err(Error::InvalidChannel("no inputs".into()));
        }
        let outputs = matrix[0].len();
        if outputs == 0 {
            return Err(Error::InvalidChannel("no outputs".into()));
        }
        let mut rows = Vec::with_capacity(matrix.len());
        let mut support = Vec::with_capacity(matrix.len());
        for (x, row) in matrix.into_iter().enumerate() {
            if row.len() != outputs {
                return Err(Error::InvalidChannel(format!(
                    "row {x} has {} entries, expected {outputs}",
                    row.len()
                )));
            }
            if let Some(w) = row.iter().find(|w| !w.is_finite() || **w < 0.0) {
                return Err(Error::InvalidChannel(format!("row {x} has entry {w}")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_TOLERANCE {
                return Err(Error::InvalidChannel(format!("row {x} sums to {sum}")));
            }
            let row: Vec<f64> = if sum == 1.0 {
                row
            } else {
                row.iter().map(|w| w / sum).collect()
            };
            let mut bits = FixedBitSet::with_capacity(outputs);
            for (y, &w) in row.iter().enumerate() {
                bits.set(y, w > 0.0);
            }
            support.push(bits);
            rows.push(row);
        }
        Ok(Channel {
            input_labels: None,
            output_labels: None,
            matrix: rows,
            support,
        })
    }

    pub fn with_labels(
        mut self,
        inputs: Option<Vec<String>>,
        outputs: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(l) = &inputs {
            if l.len() != self.input_count() {
                return Err(Error::InvalidChannel(format!(
                    "{} input labels for {} inputs",
                    l.len(),
                    self.input_count()
                )));
            }
        }
        if let Some(l) = &outputs {
            if l.len() != self.output_count() {
                return Err(Error::InvalidChannel(format!(
                    "{} output labels for {} outputs",
                    l.len(),
                    self.output_count()
                )));
            }
        }
        self.input_labels = inputs;
        self.output_labels = outputs;
        Ok(self)
    }

    /// Noiseless channel on `k` symbols.
    pub fn identity(k: usize) -> Result<Self> {
        Channel::new(
            (0..k)
                .map(|x| (0..k).map(|y| if x == y { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
    }

    pub fn input_count(&self) -> usize {
        self.matrix.len()
    }

    pub fn output_count(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.matrix[x][y]
    }

    pub fn support(&self, x: usize) -> &FixedBitSet {
        &self.support[x]
    }

    pub fn output_labels(&self) -> Option<&[String]> {
        self.output_labels.as_deref()
    }

    /// True iff some output is reachable from every input in `inputs`
    /// (which must be nonempty and in range).
    pub fn supports_intersect(&self, inputs: &[usize]) -> bool {
        let (first, rest) = match inputs.split_first() {
            Some(split) => split,
            None => return true,
        };
        let blocks = self.support[*first].as_slice().len();
        (0..blocks).any(|b| {
            let mut acc = self.support[*first].as_slice()[b];
            for &x in rest {
                acc &= self.support[x].as_slice()[b];
                if acc == 0 {
                    break;
                }
            }
            acc != 0
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: ChannelFile = serde_json::from_str(text)?;
        Channel::new(file.matrix)?.with_labels(file.inputs, file.outputs)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ChannelFile {
            inputs: self.input_labels.clone(),
            outputs: self.output_labels.clone(),
            matrix: self.matrix.clone(),
        })
        .expect("channel serializes")
    }

    /// CSV with a header row of output labels and one numeric row per input.
    pub fn from_csv_reader<R: std::io::Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let outputs: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        let mut matrix = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            let row = record
                .iter()
                .map(|cell| {
                    cell.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("row {i}: {cell:?} is not a number")))
                })
                .collect::<Result<Vec<f64>>>()?;
            matrix.push(row);
        }
        Channel::new(matrix)?.with_labels(None, Some(outputs))
    }
}

/// Hypergraph on the inputs whose edges are the input sets sharing no
/// commonly reachable output. Always upward closed.
pub fn distinguishability_hypergraph(channel: &Channel) -> Hypergraph {
    Hypergraph::from_channel(Arc::new(channel.clone()))
}

/// Channel realizing an upward-closed hypergraph.
///
/// Outputs are the nonempty non-edges of `graph` in lexicographic order of
/// their sorted vertex lists; input `x` is spread uniformly over the outputs
/// that contain it. The empty set is left out because no input can reach it,
/// and singletons are kept since they are never edges.
pub fn channel_from_hypergraph(graph: &Hypergraph, budget: &Budget) -> Result<Channel> {
    let n = graph.vertex_count();
    budget.check(
        "hypergraph-to-channel vertex cap",
        n as u128,
        budget.channel_vertices as u128,
    )?;
    if n > 31 {
        return Err(Error::guard(
            "hypergraph-to-channel vertex cap",
            n as u128,
            31,
        ));
    }
    if !graph.check_upward_closed() {
        return Err(Error::NotUpwardClosed);
    }
    let mut outputs: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !graph.is_edge_set(&set) {
            outputs.push(set);
        }
    }
    outputs.sort();
    let matrix = (0..n)
        .map(|x| {
            let reach = outputs.iter().filter(|y| y.contains(&x)).count() as f64;
            outputs
                .iter()
                .map(|y| if y.contains(&x) { 1.0 / reach } else { 0.0 })
                .collect()
        })
        .collect();
    let labels = outputs
        .iter()
        .map(|y| {
            let inner: Vec<String> = y.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    Channel::new(matrix)?.with_labels(None, Some(labels))
}

/// Deterministic channel sending every vertex to the index of its part.
pub fn deterministic_channel_from_partition(parts: &MultipartiteDecomposition) -> Result<Channel> {
    let k = parts.parts().len();
    let part_of = parts.part_of();
    Channel::new(
        part_of
            .iter()
            .map(|&j| (0..k).map(|y| if y == j { 1.0 } else { 0.0 }).collect())
            .collect(),
    )
}

/// The `n`-th memoryless extension, evaluated per word.
#[derive(Debug, Clone)]
pub struct ExtensionChannel {
    base: Arc<Channel>,
    n: u32,
    input_words: usize,
    output_words: usize,
}

pub fn extension_channel(channel: &Channel, n: u32) -> Result<ExtensionChannel> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "extension length must be at least 1".into(),
        ));
    }
    Ok(ExtensionChannel {
        input_words: words::word_count(channel.input_count(), n)?,
        output_words: words::word_count(channel.output_count(), n)?,
        base: Arc::new(channel.clone()),
        n,
    })
}

impl ExtensionChannel {
    pub fn base(&self) -> &Channel {
        &self.base
    }

    pub fn blocklength(&self) -> u32 {
        self.n
    }

    pub fn input_words(&self) -> usize {
        self.input_words
    }

    pub fn output_words(&self) -> usize {
        self.output_words
    }

    /// `Wⁿ(y|x)` for encoded words.
    pub fn prob(&self, x: usize, y: usize) -> f64 {
        let (kx, ky) = (self.base.input_count(), self.base.output_count());
        let (mut x, mut y) = (x, y);
        let mut p = 1.0;
        for _ in 0..self.n {
            p *= self.base.prob(x % kx, y % ky);
            x /= kx;
            y /= ky;
        }
        p
    }

    /// Whether output word `y` is reachable from input word `x`.
    pub fn reachable(&self, x: usize, y: usize) -> bool {
        let (kx, ky) = (self.base.input_count(), self.base.output_count());
        let (mut x, mut y) = (x, y);
        for _ in 0..self.n {
            if !self.base.support(x % kx).contains(y % ky) {
                return false;
            }
            x /= kx;
            y /= ky;
        }
        true
    }

    /// Distinguishability hypergraph of the extension, i.e. the co-normal
    /// power of the base hypergraph.
    pub fn hypergraph(&self) -> Hypergraph {
        distinguishability_hypergraph(&self.base)
            .conormal_power(self.n)
            .expect("word count already validated")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        let id = Channel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(id.support(0).contains(0) && !id.support(0).contains(1));
        let flat = Channel::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert_eq!(flat.support(1).count_ones(..), 2);
        assert!(Channel::new(vec![vec![0.6, 0.3]]).is_err());
        assert!(Channel::new(vec![vec![1.5, -0.5]]).is_err());
        assert!(Channel::new(vec![]).is_err());
        assert!(Channel::new(vec![vec![1.0], vec![0.5, 0.5]]).is_err());
    }

    #[test]
    fn hypergraph_examples() {
        let g = distinguishability_hypergraph(&Channel::identity(3).unwrap());
        assert!(g.is_edge(&[0, 1]).unwrap());
        let z = Channel::new(vec![vec![0.5, 0.5], vec![0.0, 1.0]]).unwrap();
        assert!(!distinguishability_hypergraph(&z).is_edge(&[0, 1]).unwrap());
        let det = Channel::new(vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let g = distinguishability_hypergraph(&det);
        assert!(!g.is_edge(&[0, 1]).unwrap());
        assert!(g.is_edge(&[0, 2]).unwrap());
        let parts = g
            .complete_multipartite_decompose(&Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(parts.parts(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn from_hypergraph_examples() {
        let b = Budget::default();
        let e = Hypergraph::edgeless(2).unwrap();
        let w = channel_from_hypergraph(&e, &b).unwrap();
        // {0}, {0,1}, {1}
        assert_eq!(w.output_count(), 3);
        assert_eq!(w.output_labels().unwrap(), &["{0}", "{0,1}", "{1}"]);
        let k2 = Hypergraph::complete(2).unwrap();
        let w = channel_from_hypergraph(&k2, &b).unwrap();
        assert_eq!(w.output_count(), 2);
        assert!(distinguishability_hypergraph(&w).is_edge(&[0, 1]).unwrap());
        let path = Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            channel_from_hypergraph(&path, &b),
            Err(Error::NotUpwardClosed)
        ));
    }

    #[test]
    fn partition_channel() {
        let parts = MultipartiteDecomposition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let w = deterministic_channel_from_partition(&parts).unwrap();
        assert_eq!(
            w.matrix(),
            &[vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]
        );
        let one = MultipartiteDecomposition::new(3, vec![vec![0, 1, 2]]).unwrap();
        let w = deterministic_channel_from_partition(&one).unwrap();
        assert_eq!(w.output_count(), 1);
        assert!(distinguishability_hypergraph(&w)
            .enumerate_edges()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn extension_examples() {
        let id = Channel::identity(2).unwrap();
        let ext = extension_channel(&id, 2).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(ext.prob(x, y), if x == y { 1.0 } else { 0.0 });
            }
        }
        let bsc = Channel::new(vec![vec![0.9, 0.1], vec![0.1, 0.9]]).unwrap();
        let g = extension_channel(&bsc, 2).unwrap().hypergraph();
        assert!(g.enumerate_edges().unwrap().is_empty());
        assert!((extension_channel(&bsc, 2).unwrap().prob(1, 0) - 0.1 * 0.9).abs() < 1e-15);
        assert!(extension_channel(&bsc, 0).is_err());
    }

    #[test]
    fn io_formats() {
        let w =
            Channel::from_json_str(r#"{"outputs": ["a", "b"], "matrix": [[1, 0], [0.25, 0.75]]}"#)
                .unwrap();
        assert_eq!(w.output_count(), 2);
        let back = Channel::from_json_str(&w.to_json_value().to_string()).unwrap();
        assert_eq!(back, w);
        let csv = "a,b\n1,0\n0.5,0.5\n";
        let w = Channel::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(w.input_count(), 2);
        assert!(Channel::from_csv_reader("a,b\n1,x\n".as_bytes()).is_err());
    }
}
