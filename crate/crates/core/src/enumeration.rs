//! Ground-truth counts by exhaustive search.
//!
//! Circuits are identified up to cyclic rotation only: a circuit and its
//! reversal are different classes. Each class has exactly `|E|` rotations and
//! exactly one of them starts by traversing the cut edge, so counting closed
//! trails whose first step crosses the cut edge (in either direction) counts
//! classes.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{validate, Graph, ValidationReport};
use crate::matrix::Matrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnumerationError {
    #[error("graph violates the Eulerian preconditions: {0:?}")]
    Precondition(ValidationReport),
    #[error("node budget {budget} exhausted after {nodes} nodes (partial count {partial})")]
    BudgetExhausted { budget: u64, nodes: u64, partial: BigInt },
    #[error("{what} supports at most {max}, got {got}")]
    SizeCap { what: &'static str, max: usize, got: usize },
    #[error("cut edge ({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("bad directed-tree input: {0}")]
    BadWeights(&'static str),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Exact number of circuit classes plus search statistics.
#[derive(Clone, Debug, Serialize)]
pub struct ExactCount {
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub count: BigInt,
    pub nodes_explored: u64,
    #[serde(serialize_with = "serialize_ms")]
    pub elapsed: Duration,
    /// 0-based endpoints of the edge that cuts each cyclic class.
    pub cut_edge: (usize, usize),
}

fn serialize_ms<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

#[derive(Clone, Debug, Default)]
pub struct CountOptions {
    /// Abort once this many search nodes have been visited.
    pub node_budget: Option<u64>,
    /// Worker threads; `None` uses rayon's current pool.
    pub workers: Option<usize>,
    /// 0-based edge to cut at; defaults to the lexicographically smallest.
    pub cut_edge: Option<(usize, usize)>,
}

/// Remaining-graph connectivity is checked on every `PRUNE_EVERY`-th level.
const PRUNE_EVERY: usize = 4;
/// Search nodes between flushes of the shared budget counter.
const FLUSH_EVERY: u64 = 1 << 14;
pub const MAX_SEARCH_EDGES: usize = 64;

struct Search<'a> {
    adj: &'a [Vec<(usize, usize)>],
    edge_count: usize,
    budget: Option<u64>,
    shared_nodes: &'a AtomicU64,
    aborted: &'a AtomicBool,
    nodes: u64,
    unflushed: u64,
    stopped: bool,
}

impl Search<'_> {
    /// Completions of a trail at `v` having used `used`; the trail closes
    /// automatically because all degrees are even.
    fn dfs(&mut self, v: usize, used: u64, depth: usize) -> u128 {
        if self.stopped {
            return 0;
        }
        self.nodes += 1;
        self.unflushed += 1;
        if self.unflushed == FLUSH_EVERY {
            self.flush();
            if self.stopped {
                return 0;
            }
        }
        if depth == self.edge_count {
            return 1;
        }
        if depth % PRUNE_EVERY == 0 && !self.remaining_reachable(v, used) {
            return 0;
        }
        let mut total = 0u128;
        for &(w, e) in &self.adj[v] {
            if used & (1 << e) == 0 {
                total += self.dfs(w, used | (1 << e), depth + 1);
            }
        }
        total
    }

    fn flush(&mut self) {
        let before = self.shared_nodes.fetch_add(self.unflushed, Ordering::Relaxed);
        self.unflushed = 0;
        if let Some(budget) = self.budget {
            if before + FLUSH_EVERY > budget {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
        self.stopped = self.aborted.load(Ordering::Relaxed);
    }

    /// Every unused edge can be reached from `v` through unused edges.
    fn remaining_reachable(&self, v: usize, used: u64) -> bool {
        let mut reached_edges = 0u64;
        let mut seen = 0u64;
        let mut stack = [0usize; 64];
        let mut top = 1;
        stack[0] = v;
        seen |= 1 << v;
        while top > 0 {
            top -= 1;
            let x = stack[top];
            for &(y, e) in &self.adj[x] {
                if used & (1 << e) != 0 {
                    continue;
                }
                reached_edges |= 1 << e;
                if seen & (1 << y) == 0 {
                    seen |= 1 << y;
                    stack[top] = y;
                    top += 1;
                }
            }
        }
        let all = if self.edge_count == 64 { u64::MAX } else { (1u64 << self.edge_count) - 1 };
        reached_edges | used == all
    }
}

/// Counts Eulerian circuit classes by depth-first search.
///
/// The search is split into independent tasks over the first two traversal
/// steps; subtotals are exact and summed, so the count does not depend on
/// the worker count.
pub fn count_eulerian_circuits(g: &Graph, options: &CountOptions) -> Result<ExactCount, EnumerationError> {
    let report = validate(g);
    if !report.all_ok() {
        return Err(EnumerationError::Precondition(report));
    }
    let m = g.edge_count();
    if m > MAX_SEARCH_EDGES {
        return Err(EnumerationError::SizeCap { what: "circuit search (edges)", max: MAX_SEARCH_EDGES, got: m });
    }
    if g.vertex_count() > 64 {
        return Err(EnumerationError::SizeCap { what: "circuit search (vertices)", max: 64, got: g.vertex_count() });
    }
    let start = Instant::now();
    if m == 0 {
        // single isolated vertex: the empty circuit
        return Ok(ExactCount { count: BigInt::one(), nodes_explored: 1, elapsed: start.elapsed(), cut_edge: (0, 0) });
    }
    let cut = match options.cut_edge {
        Some((u, v)) => {
            let key = (u.min(v), u.max(v));
            if !g.has_edge(key.0, key.1) {
                return Err(EnumerationError::NotAnEdge(u, v));
            }
            key
        }
        None => g.edges()[0],
    };
    let cut_id = g.edges().iter().position(|&e| e == cut).unwrap();

    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }

    // Tasks: cut edge in each direction, then each admissible second step.
    let mut tasks = Vec::new();
    for to in [cut.1, cut.0] {
        let used = 1u64 << cut_id;
        for &(w, e) in &adj[to] {
            if used & (1 << e) == 0 {
                tasks.push((w, used | (1 << e)));
            }
        }
    }
    // the two direction nodes plus the root
    let prefix_nodes = 3u64;

    let shared_nodes = AtomicU64::new(prefix_nodes);
    let aborted = AtomicBool::new(false);
    let run = || -> Vec<(u128, u64)> {
        tasks
            .par_iter()
            .map(|&(v, used)| {
                let mut s = Search {
                    adj: &adj,
                    edge_count: m,
                    budget: options.node_budget,
                    shared_nodes: &shared_nodes,
                    aborted: &aborted,
                    nodes: 0,
                    unflushed: 0,
                    stopped: false,
                };
                let c = s.dfs(v, used, 2);
                (c, s.nodes)
            })
            .collect()
    };
    let parts = match options.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| EnumerationError::Pool(e.to_string()))?
            .install(run),
        None => run(),
    };
    let count: u128 = parts.iter().map(|p| p.0).sum();
    let nodes = prefix_nodes + parts.iter().map(|p| p.1).sum::<u64>();
    let exceeded = options.node_budget.is_some_and(|b| nodes > b);
    if aborted.load(Ordering::Relaxed) || exceeded {
        return Err(EnumerationError::BudgetExhausted {
            budget: options.node_budget.unwrap_or(u64::MAX),
            nodes,
            partial: BigInt::from(count),
        });
    }
    Ok(ExactCount { count: BigInt::from(count), nodes_explored: nodes, elapsed: start.elapsed(), cut_edge: cut })
}

/// One Eulerian circuit as a closed vertex sequence (Hierholzer), or `None`
/// when the graph has none.
pub fn eulerian_circuit(g: &Graph) -> Option<Vec<usize>> {
    if !validate(g).all_ok() {
        return None;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count()];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    let mut used = vec![false; g.edge_count()];
    let mut next = vec![0usize; g.vertex_count()];
    let mut stack = vec![0usize];
    let mut circuit = Vec::with_capacity(g.edge_count() + 1);
    while let Some(&v) = stack.last() {
        while next[v] < adj[v].len() && used[adj[v][next[v]].1] {
            next[v] += 1;
        }
        if next[v] == adj[v].len() {
            circuit.push(v);
            stack.pop();
        } else {
            let (w, e) = adj[v][next[v]];
            used[e] = true;
            stack.push(w);
        }
    }
    circuit.reverse();
    Some(circuit)
}

pub const MAX_SUBSET_EDGES: usize = 24;

/// Spanning trees by testing every `(n−1)`-edge subset for acyclicity.
pub fn brute_force_spanning_trees(g: &Graph) -> Result<BigInt, EnumerationError> {
    let m = g.edge_count();
    let n = g.vertex_count();
    if m > MAX_SUBSET_EDGES {
        return Err(EnumerationError::SizeCap { what: "spanning-tree enumeration (edges)", max: MAX_SUBSET_EDGES, got: m });
    }
    if n == 0 {
        return Ok(BigInt::zero());
    }
    let k = n - 1;
    if k > m {
        return Ok(BigInt::zero());
    }
    if k == 0 {
        return Ok(BigInt::one());
    }
    let edges = g.edges();
    let mut count = 0u64;
    // Gosper's hack over k-subsets of m bits
    let mut subset: u32 = (1 << k) - 1;
    let limit: u32 = 1 << m;
    let mut parent = vec![0usize; n];
    while subset < limit {
        if is_forest(edges, subset, &mut parent) {
            count += 1;
        }
        let c = subset & subset.wrapping_neg();
        let r = subset + c;
        subset = (((r ^ subset) >> 2) / c) | r;
    }
    Ok(BigInt::from(count))
}

fn is_forest(edges: &[(usize, usize)], subset: u32, parent: &mut [usize]) -> bool {
    for (i, p) in parent.iter_mut().enumerate() {
        *p = i;
    }
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut bits = subset;
    while bits != 0 {
        let e = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (a, b) = (find(parent, edges[e].0), find(parent, edges[e].1));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

pub const MAX_DIRECTED_TREE_VERTICES: usize = 6;

/// Weighted sum over spanning trees directed toward the 1-based `root`, by
/// enumerating every choice of out-arc for the non-root vertices. The arc
/// `j → k` carries weight `weights[(j, k)]`.
pub fn brute_force_directed_trees(weights: &Matrix<BigRational>, root: usize) -> Result<BigRational, EnumerationError> {
    let n = weights.rows();
    if !weights.is_square() {
        return Err(EnumerationError::BadWeights("weight matrix must be square"));
    }
    if n > MAX_DIRECTED_TREE_VERTICES {
        return Err(EnumerationError::SizeCap { what: "directed-tree enumeration", max: MAX_DIRECTED_TREE_VERTICES, got: n });
    }
    if root == 0 || root > n {
        return Err(EnumerationError::BadWeights("root out of range"));
    }
    let r = root - 1;
    let others: Vec<usize> = (0..n).filter(|&v| v != r).collect();
    let mut parent = vec![usize::MAX; n];
    let mut total = BigRational::zero();
    // odometer over parent choices, each digit in 0..n-1 skipping self
    let mut digits = vec![0usize; others.len()];
    loop {
        for (slot, &v) in others.iter().enumerate() {
            let d = digits[slot];
            parent[v] = if d >= v { d + 1 } else { d };
        }
        if others.iter().all(|&v| reaches_root(&parent, v, r, n)) {
            let mut prod = BigRational::one();
            for &v in &others {
                prod *= &weights[(v, parent[v])];
            }
            total += prod;
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(total);
            }
            digits[i] += 1;
            if digits[i] < n - 1 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn reaches_root(parent: &[usize], mut v: usize, root: usize, n: usize) -> bool {
    for _ in 0..n {
        if v == root {
            return true;
        }
        v = parent[v];
    }
    v == root
}
