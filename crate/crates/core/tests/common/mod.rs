#![allow(dead_code)]

use hyperalpha::combinatorics::for_each_combination;
use hyperalpha::Hypergraph;
use proptest::prelude::*;

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_combination(n, k, |c| {
        out.push(c.iter().map(|v| v + 1).collect());
        true
    });
    out
}

/// Hypergraphs on `n ∈ n_range`, uniformity in `k_range` (capped at `n`), any edge subset.
pub fn hypergraph(
    n_range: std::ops::RangeInclusive<usize>,
    k_range: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Hypergraph> {
    let (k_lo, k_hi) = (*k_range.start(), *k_range.end());
    n_range
        .prop_flat_map(move |n| (Just(n), k_lo.min(n)..=k_hi.min(n)))
        .prop_flat_map(|(n, k)| {
            let pool = all_subsets(n, k);
            let len = pool.len();
            (
                Just((n, k, pool)),
                proptest::collection::vec(any::<bool>(), len),
            )
        })
        .prop_map(|((n, k, pool), keep)| {
            let edges = pool
                .into_iter()
                .zip(keep)
                .filter_map(|(e, kept)| kept.then_some(e))
                .collect();
            Hypergraph::new(n, k, edges).unwrap()
        })
}

/// Breadth-first component count on the vertices in `alive`, using only edges inside it.
pub fn components_within(h: &Hypergraph, alive: &[bool]) -> usize {
    let n = h.n();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if !alive[start] || seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for e in h.edges() {
                if !e.contains(&(u + 1)) || e.iter().any(|&v| !alive[v - 1]) {
                    continue;
                }
                for &v in e {
                    if !seen[v - 1] {
                        seen[v - 1] = true;
                        stack.push(v - 1);
                    }
                }
            }
        }
    }
    count
}

/// Edges with members on both sides of `side`.
pub fn crossing(h: &Hypergraph, side: &[bool]) -> usize {
    h.edges()
        .iter()
        .filter(|e| {
            let inside = e.iter().filter(|&&v| side[v - 1]).count();
            inside > 0 && inside < e.len()
        })
        .count()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}
