//! Immutable k-uniform hypergraphs on vertices `1..=n`.

mod generate;
mod io;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use generate::{gen_complete, gen_fano, gen_random, CONNECTIVITY_RETRIES};
pub use io::{parse_khg, serialize_khg};

/// A k-uniform hypergraph. Edges are strictly ascending vertex lists and the edge list is
/// strictly sorted, so equal hypergraphs compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

/// Checks the hypergraph invariants on raw data without constructing anything.
pub fn validate(n: usize, k: usize, edges: &[Vec<usize>]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "vertex count must be positive".into(),
        ));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "uniformity {k} must be at least 2"
        )));
    }
    for edge in edges {
        validate_edge(n, k, edge)?;
        if edge.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::UnsortedEdges { edge: edge.clone() });
        }
    }
    for pair in edges.windows(2) {
        match pair[0].cmp(&pair[1]) {
            std::cmp::Ordering::Less => {}
            std::cmp::Ordering::Equal => {
                return Err(Error::DuplicateEdge {
                    edge: pair[1].clone(),
                })
            }
            std::cmp::Ordering::Greater => {
                return Err(Error::UnsortedEdges {
                    edge: pair[1].clone(),
                })
            }
        }
    }
    Ok(())
}

// Membership checks that do not depend on member order.
fn validate_edge(n: usize, k: usize, edge: &[usize]) -> Result<()> {
    if edge.len() != k {
        return Err(Error::EdgeArity {
            edge: edge.to_vec(),
            expected: k,
            found: edge.len(),
        });
    }
    for &v in edge {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let mut sorted = edge.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateVertex {
            vertex: w[0],
            edge: edge.to_vec(),
        });
    }
    Ok(())
}

impl Hypergraph {
    /// Builds a hypergraph, sorting members within each edge and the edge list.
    ///
    /// Repeated edges are rejected, not merged.
    pub fn new(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "vertex count must be positive".into(),
            ));
        }
        if k < 2 {
            return Err(Error::InvalidParameter(format!(
                "uniformity {k} must be at least 2"
            )));
        }
        let mut edges = edges;
        for edge in &mut edges {
            validate_edge(n, k, edge)?;
            edge.sort_unstable();
        }
        edges.sort();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge { edge: w[0].clone() });
        }
        Ok(Self { n, k, edges })
    }

    pub fn edgeless(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Re-checks every invariant; always `Ok` for values built through this module.
    pub fn validate(&self) -> Result<()> {
        validate(self.n, self.k, &self.edges)
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut key = edge.to_vec();
        key.sort_unstable();
        self.edges.binary_search(&key).is_ok()
    }

    /// Per-vertex incidence counts, indexed `0..n` for vertex `1..=n`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for edge in &self.edges {
            for &v in edge {
                deg[v - 1] += 1;
            }
        }
        deg
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::from_degrees(self.degrees())
    }

    /// Indices of the edges incident to each vertex (0-based vertex index).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (idx, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v - 1].push(idx);
            }
        }
        inc
    }

    /// Number of edges containing both `u` and `v`.
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.binary_search(&u).is_ok() && e.binary_search(&v).is_ok())
            .count()
    }

    /// Adjacency lists of the 2-section (0-based), each sorted and free of duplicates.
    pub fn two_section(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for edge in &self.edges {
            for &u in edge {
                for &v in edge {
                    if u != v {
                        adj[u - 1].push(v - 1);
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Classes of the "connected" relation, each ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for edge in &self.edges {
            let root = find(&mut parent, edge[0] - 1);
            for &v in &edge[1..] {
                let r = find(&mut parent, v - 1);
                if r != root {
                    let (lo, hi) = if r < root { (r, root) } else { (root, r) };
                    parent[hi] = lo;
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = classes.len();
                classes.push(Vec::new());
            }
            classes[slot[r]].push(v + 1);
        }
        classes
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Largest shortest-path distance in the 2-section; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let adj = self.two_section();
        let mut best = 0;
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for source in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[source] = 0;
            queue.push_back(source);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for &d in &dist {
                if d == usize::MAX {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }

    /// Deletes `removed` and every edge meeting it; survivors are relabelled `1..` in
    /// ascending order of their original ids.
    pub fn remove_vertices(&self, removed: &[usize]) -> Result<Self> {
        let mut gone = vec![false; self.n];
        for &v in removed {
            if v == 0 || v > self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            gone[v - 1] = true;
        }
        let kept = gone.iter().filter(|g| !**g).count();
        if kept == 0 {
            return Err(Error::InvalidParameter("cannot remove every vertex".into()));
        }
        let mut label = vec![0; self.n];
        let mut next = 1;
        for v in 0..self.n {
            if !gone[v] {
                label[v] = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| !gone[v - 1]))
            .map(|e| e.iter().map(|&v| label[v - 1]).collect())
            .collect();
        Ok(Self {
            n: kept,
            k: self.k,
            edges,
        })
    }

    /// Same vertex set with the given extra edges.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.extend(extra);
        Self::new(self.n, self.k, edges)
    }

    /// Relabels vertex `v` as `perm[v - 1]` (a permutation of `1..=n`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(
                "permutation length differs from n".into(),
            ));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v - 1]).collect())
            .collect();
        Self::new(self.n, self.k, edges)
    }

    /// `(b, r, λ)` when every degree equals `r` and every pair codegree equals `λ`.
    ///
    /// Edgeless hypergraphs are not designs.
    pub fn check_two_design(&self) -> Option<DesignParams> {
        if self.edges.is_empty() {
            return None;
        }
        let degrees = self.degrees();
        let r = degrees[0];
        if degrees.iter().any(|&d| d != r) {
            return None;
        }
        let mut codeg = vec![0usize; self.n * self.n];
        for edge in &self.edges {
            for (i, &u) in edge.iter().enumerate() {
                for &v in &edge[i + 1..] {
                    codeg[(u - 1) * self.n + (v - 1)] += 1;
                }
            }
        }
        let mut lambda = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let c = codeg[u * self.n + v];
                match lambda {
                    None => lambda = Some(c),
                    Some(l) if l != c => return None,
                    _ => {}
                }
            }
        }
        let lambda = lambda?;
        DesignParams::new(self.n, self.k, self.edges.len(), r, lambda).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    pub min_degree: usize,
    pub average_degree: f64,
}

impl DegreeProfile {
    fn from_degrees(degrees: Vec<usize>) -> Self {
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let min_degree = degrees.iter().copied().min().unwrap_or(0);
        let average_degree = if degrees.is_empty() {
            0.0
        } else {
            degrees.iter().sum::<usize>() as f64 / degrees.len() as f64
        };
        Self {
            degrees,
            max_degree,
            min_degree,
            average_degree,
        }
    }
}

/// Parameters of a 2-design: `b` blocks, replication `r`, pair coincidence `λ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    pub b: usize,
    pub r: usize,
    pub lambda: usize,
}

impl DesignParams {
    /// Checks `bk = nr` and `λ(n - 1) = r(k - 1)`.
    pub fn new(n: usize, k: usize, b: usize, r: usize, lambda: usize) -> Result<Self> {
        if b * k != n * r {
            return Err(Error::InvalidParameter(format!(
                "bk = {} differs from nr = {}",
                b * k,
                n * r
            )));
        }
        if lambda * (n - 1) != r * (k - 1) {
            return Err(Error::InvalidParameter(format!(
                "λ(n-1) = {} differs from r(k-1) = {}",
                lambda * (n - 1),
                r * (k - 1)
            )));
        }
        Ok(Self { b, r, lambda })
    }
}
