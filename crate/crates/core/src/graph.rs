//! Simple graphs on at most 64 vertices, as bitset adjacency rows.

use crate::budget::Budget;
use crate::hypergraph::Hypergraph;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > 64 {
            return Err(Error::guard("simple graph vertex cap", n as u128, 64));
        }
        let mut adj = vec![0u64; n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        count: n,
                    });
                }
            }
            if a == b {
                return Err(Error::InvalidHypergraph(format!("self-loop at {a}")));
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        Ok(SimpleGraph { n, adj })
    }

    /// The graph formed by the two-element edges of `graph`.
    pub fn from_hypergraph(graph: &Hypergraph, cap: usize) -> Result<Self> {
        let n = graph.vertex_count();
        if n > cap.min(64) {
            return Err(Error::guard(
                "graph vertex cap",
                n as u128,
                cap.min(64) as u128,
            ));
        }
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if graph.is_edge_set(&[a, b]) {
                    edges.push((a, b));
                }
            }
        }
        SimpleGraph::new(n, &edges)
    }

    pub fn to_hypergraph(&self) -> Result<Hypergraph> {
        Hypergraph::graph(self.n, &self.edges())
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        SimpleGraph::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::new(n, &edges)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        SimpleGraph::new(10, &edges).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] & bit(b) != 0
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    pub fn complement(&self) -> SimpleGraph {
        let all = self.all();
        let adj = (0..self.n).map(|v| !self.adj[v] & all & !bit(v)).collect();
        SimpleGraph { n: self.n, adj }
    }

    /// Subgraph on `vertices` (ascending), re-indexed densely.
    pub fn induce(&self, vertices: &[usize]) -> SimpleGraph {
        let mut adj = vec![0u64; vertices.len()];
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                if self.has_edge(a, b) {
                    adj[i] |= bit(j);
                }
            }
        }
        SimpleGraph {
            n: vertices.len(),
            adj,
        }
    }
}

/// Greedy colouring of `cand`; returns vertices in colour order with the
/// colour count reached at each position.
fn colour_sort(g: &SimpleGraph, cand: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut bounds = Vec::with_capacity(order.capacity());
    let mut uncoloured = cand;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut available = uncoloured;
        while available != 0 {
            let v = available.trailing_zeros() as usize;
            available &= !bit(v) & !g.adj[v];
            uncoloured &= !bit(v);
            order.push(v);
            bounds.push(colour);
        }
    }
    (order, bounds)
}

fn expand(g: &SimpleGraph, size: usize, cand: u64, best: &mut usize) {
    let (order, bounds) = colour_sort(g, cand);
    let mut cand = cand;
    for idx in (0..order.len()).rev() {
        if size + bounds[idx] <= *best {
            return;
        }
        let v = order[idx];
        let next = cand & g.adj[v];
        if next == 0 {
            *best = (*best).max(size + 1);
        } else {
            expand(g, size + 1, next, best);
        }
        cand &= !bit(v);
    }
}

/// Exact clique number by branch and bound with greedy-colouring bounds.
/// The empty graph has clique number 0; any graph with a vertex has at least 1.
pub fn clique_number(g: &SimpleGraph, budget: &Budget) -> Result<usize> {
    budget.check(
        "clique vertex cap",
        g.n as u128,
        budget.clique_vertices as u128,
    )?;
    let mut best = 0;
    if g.n > 0 {
        expand(g, 0, g.all(), &mut best);
    }
    Ok(best)
}

/// All inclusion-maximal independent sets, each ascending, in lexicographic
/// order. Runs Bron–Kerbosch with pivoting on the complement graph.
pub fn maximal_independent_sets(g: &SimpleGraph, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    budget.check(
        "independent set vertex cap",
        g.n as u128,
        budget.mis_vertices as u128,
    )?;
    let comp = g.complement();
    let mut out: Vec<u64> = Vec::new();
    if g.n == 0 {
        return Ok(Vec::new());
    }
    bron_kerbosch(&comp, 0, comp.all(), 0, &mut out, budget.mis_output)?;
    let mut sets: Vec<Vec<usize>> = out
        .into_iter()
        .map(|mask| (0..g.n).filter(|&v| mask & bit(v) != 0).collect())
        .collect();
    sets.sort();
    Ok(sets)
}

fn bron_kerbosch(
    g: &SimpleGraph,
    r: u64,
    mut p: u64,
    mut x: u64,
    out: &mut Vec<u64>,
    cap: usize,
) -> Result<()> {
    if p == 0 {
        if x == 0 {
            if out.len() >= cap {
                return Err(Error::guard(
                    "maximal independent set count",
                    out.len() as u128 + 1,
                    cap as u128,
                ));
            }
            out.push(r);
        }
        return Ok(());
    }
    let pivot = {
        let pool = p | x;
        let mut best = pool.trailing_zeros() as usize;
        let mut best_cover = 0;
        let mut rest = pool;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let cover = (p & g.adj[u]).count_ones();
            if cover > best_cover {
                best_cover = cover;
                best = u;
            }
        }
        best
    };
    let mut todo = p & !g.adj[pivot];
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        todo &= todo - 1;
        bron_kerbosch(g, r | bit(v), p & g.adj[v], x & g.adj[v], out, cap)?;
        p &= !bit(v);
        x |= bit(v);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn clique_examples() {
        assert_eq!(
            clique_number(&SimpleGraph::complete(3).unwrap(), &b()).unwrap(),
            3
        );
        assert_eq!(
            clique_number(&SimpleGraph::cycle(5).unwrap(), &b()).unwrap(),
            2
        );
        assert_eq!(
            clique_number(&SimpleGraph::new(4, &[]).unwrap(), &b()).unwrap(),
            1
        );
        assert_eq!(clique_number(&SimpleGraph::petersen(), &b()).unwrap(), 2);
        assert_eq!(
            clique_number(&SimpleGraph::complete(64).unwrap(), &b()).unwrap(),
            64
        );
    }

    #[test]
    fn clique_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(1..=10);
            let mut edges = Vec::new();
            for a in 0..n {
                for c in a + 1..n {
                    if rng.random_bool(0.5) {
                        edges.push((a, c));
                    }
                }
            }
            let g = SimpleGraph::new(n, &edges).unwrap();
            let brute = (1u32..(1 << n))
                .filter(|m| {
                    let vs: Vec<usize> = (0..n).filter(|v| m >> v & 1 == 1).collect();
                    vs.iter()
                        .all(|&a| vs.iter().all(|&c| a == c || g.has_edge(a, c)))
                })
                .map(|m| m.count_ones() as usize)
                .max()
                .unwrap();
            assert_eq!(clique_number(&g, &b()).unwrap(), brute);
        }
    }

    #[test]
    fn mis_examples() {
        let k3 = SimpleGraph::complete(3).unwrap();
        assert_eq!(
            maximal_independent_sets(&k3, &b()).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        let e = SimpleGraph::new(2, &[]).unwrap();
        assert_eq!(
            maximal_independent_sets(&e, &b()).unwrap(),
            vec![vec![0, 1]]
        );
        let path = SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let sets = maximal_independent_sets(&path, &b()).unwrap();
        assert_eq!(sets, vec![vec![0, 2], vec![1]]);
        let mut resorted = sets.clone();
        resorted.sort();
        assert_eq!(resorted, sets);
        let big = SimpleGraph::new(40, &[]).unwrap();
        assert!(maximal_independent_sets(&big, &b()).is_err());
    }

    #[test]
    fn mis_output_cap() {
        // a perfect matching on 2k vertices has 2^k maximal independent sets
        let edges: Vec<_> = (0..10).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = SimpleGraph::new(20, &edges).unwrap();
        assert_eq!(maximal_independent_sets(&g, &b()).unwrap().len(), 1024);
        let tight = Budget {
            mis_output: 100,
            ..Budget::default()
        };
        assert!(maximal_independent_sets(&g, &tight).is_err());
    }
}
