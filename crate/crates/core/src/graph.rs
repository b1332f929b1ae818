//! Simple undirected graphs, the edge-list text format, generators for the
//! test families and precondition checks.
//!
//! Vertices are 0-based inside the crate and 1-based in every text format.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::rng;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("invalid edge ({u}, {v}) for a graph on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },
    #[error("{family} needs n >= {min}, got {n}")]
    TooSmall { family: &'static str, min: usize, n: usize },
    #[error("edge probability must lie in (0, 1], got {0}")]
    BadProbability(f64),
    #[error("no connected even-degree graph after {attempts} attempts")]
    RetriesExhausted { attempts: usize },
}

/// Immutable simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, each pair stored as `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from 0-based edges, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(GraphError::InvalidEdge { u, v, n });
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(GraphError::InvalidEdge { u, v, n });
            }
        }
        Ok(Self::from_set(n, set))
    }

    fn from_set(n: usize, set: BTreeSet<(usize, usize)>) -> Self {
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { n, edges, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let set = self.edges.iter().map(|&(u, v)| {
            let (a, b) = (perm[u], perm[v]);
            (a.min(b), a.max(b))
        });
        Self::from_set(self.n, set.collect())
    }

    /// Vertex-disjoint union, with `other`'s vertices shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let set = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Self::from_set(self.n + other.n, set)
    }

    /// Connected components as vertex lists, in order of smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Serializes to the 1-based edge-list format with edges in lexicographic
    /// order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Parses the edge-list format: a header `n m` followed by `m` lines `u v`
/// with 1-based vertices. Blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| GraphError::Malformed { line: 1, reason: "missing header \"n m\"".into() })?;
    let (n, m) = parse_pair(header_line, header)?;

    let mut set = BTreeSet::new();
    for (line, body) in lines.by_ref() {
        if set.len() == m {
            return Err(GraphError::Malformed { line, reason: format!("more than {m} edge lines") });
        }
        let (u, v) = parse_pair(line, body)?;
        for vertex in [u, v] {
            if vertex == 0 || vertex > n {
                return Err(GraphError::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        if !set.insert((u.min(v) - 1, u.max(v) - 1)) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
    }
    if set.len() != m {
        return Err(GraphError::Malformed {
            line: header_line,
            reason: format!("header promises {m} edges, found {}", set.len()),
        });
    }
    Ok(Graph::from_set(n, set))
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize), GraphError> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(GraphError::Malformed { line, reason: format!("expected two integers, got {body:?}") });
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| GraphError::Malformed { line, reason: format!("not a non-negative integer: {s:?}") })
    };
    Ok((num(fields[0])?, num(fields[1])?))
}

/// The complete graph `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::TooSmall { family: "complete graph", min: 1, n });
    }
    let set = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(Graph::from_set(n, set))
}

/// The cycle `C_n`.
pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooSmall { family: "cycle", min: 3, n });
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub const RANDOM_EVEN_ATTEMPTS: usize = 1000;

/// Samples a connected simple graph with all degrees even.
///
/// Each attempt draws `G(n, p)` from substream `attempt` of `seed`, pairs the
/// odd-degree vertices by a uniformly random perfect matching and toggles the
/// edge of every matched pair. Attempts that end disconnected are discarded.
pub fn random_even_graph(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooSmall { family: "random even graph", min: 3, n });
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(GraphError::BadProbability(p));
    }
    for attempt in 0..RANDOM_EVEN_ATTEMPTS {
        let mut rng = rng::substream(seed, attempt as u64);
        let mut adj = vec![vec![false; n]; n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.random::<f64>() < p {
                    adj[u][v] = true;
                    adj[v][u] = true;
                }
            }
        }
        let mut odd: Vec<usize> =
            (0..n).filter(|&u| adj[u].iter().filter(|&&x| x).count() % 2 == 1).collect();
        odd.shuffle(&mut rng);
        for pair in odd.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            adj[a][b] = !adj[a][b];
            adj[b][a] = adj[a][b];
        }
        let set = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u][v]).collect();
        let g = Graph::from_set(n, set);
        if validate(&g).all_ok() {
            return Ok(g);
        }
    }
    Err(GraphError::RetriesExhausted { attempts: RANDOM_EVEN_ATTEMPTS })
}

/// Facts about the preconditions of the asymptotic formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_simple: bool,
    pub is_connected: bool,
    pub all_degrees_even: bool,
    /// 1-based ids.
    pub odd_vertices: Vec<usize>,
    pub component_count: usize,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.is_simple && self.is_connected && self.all_degrees_even
    }
}

pub fn validate(g: &Graph) -> ValidationReport {
    // `Graph` cannot hold loops or parallel edges; the flag is kept for the report.
    let odd_vertices: Vec<usize> = (0..g.n).filter(|&v| g.degree(v) % 2 == 1).map(|v| v + 1).collect();
    let component_count = g.components().len();
    ValidationReport {
        is_simple: true,
        is_connected: component_count == 1,
        all_degrees_even: odd_vertices.is_empty(),
        odd_vertices,
        component_count,
    }
}
