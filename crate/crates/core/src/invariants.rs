//! Cut invariants by exhaustive subset enumeration.
//!
//! Everything here is exact and exponential in `n`; inputs above [`MAX_ENUMERATION_N`]
//! vertices are refused.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::combinatorics::for_each_combination;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub const MAX_ENUMERATION_N: usize = 24;

/// One side `S` of a bipartition together with its boundary size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutWitness {
    /// Ascending vertex ids, `1 <= |S| <= n - 1`.
    pub side: Vec<usize>,
    pub crossing_count: usize,
    /// `crossing_count / |side|` in lowest terms.
    pub ratio: Ratio<u64>,
}

impl CutWitness {
    fn new(side: Vec<usize>, crossing_count: usize) -> Self {
        let ratio = Ratio::new(crossing_count as u64, side.len() as u64);
        Self {
            side,
            crossing_count,
            ratio,
        }
    }

    pub fn ratio_f64(&self) -> f64 {
        *self.ratio.numer() as f64 / *self.ratio.denom() as f64
    }
}

fn check_size(h: &Hypergraph) -> Result<()> {
    if h.n() < 2 {
        return Err(Error::InvalidParameter(format!(
            "cut invariants need n >= 2, got {}",
            h.n()
        )));
    }
    if h.n() > MAX_ENUMERATION_N {
        return Err(Error::TooLarge(format!(
            "exhaustive cut enumeration refused for n = {} > {MAX_ENUMERATION_N}",
            h.n()
        )));
    }
    Ok(())
}

fn edge_masks(h: &Hypergraph) -> Vec<u32> {
    h.edges()
        .iter()
        .map(|e| e.iter().fold(0u32, |m, &v| m | (1 << (v - 1))))
        .collect()
}

fn crossing(masks: &[u32], side: u32, full: u32) -> usize {
    let other = full & !side;
    masks
        .iter()
        .filter(|&&e| e & side != 0 && e & other != 0)
        .count()
}

/// Crossing edges and edges inside `S`.
pub type EdgeSplit = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Splits the edges into those crossing `(S, S̄)` and those inside `S`.
pub fn boundary_edges(h: &Hypergraph, side: &[usize]) -> Result<EdgeSplit> {
    let mut in_side = vec![false; h.n()];
    for &v in side {
        if v == 0 || v > h.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: h.n(),
            });
        }
        in_side[v - 1] = true;
    }
    let size = in_side.iter().filter(|b| **b).count();
    if size == 0 || size == h.n() {
        return Err(Error::InvalidParameter(
            "cut side must be a nonempty proper subset".into(),
        ));
    }
    let mut crossing = Vec::new();
    let mut internal = Vec::new();
    for e in h.edges() {
        let inside = e.iter().filter(|&&v| in_side[v - 1]).count();
        if inside == h.k() {
            internal.push(e.clone());
        } else if inside > 0 {
            crossing.push(e.clone());
        }
    }
    Ok((crossing, internal))
}

// Visits every S with 1 <= |S| <= max_size, by size then lexicographically.
fn for_each_side(n: usize, max_size: usize, mut f: impl FnMut(&[usize], u32) -> bool) {
    for size in 1..=max_size {
        let mut keep_going = true;
        for_each_combination(n, size, |comb| {
            let mask = comb.iter().fold(0u32, |m, &v| m | (1 << v));
            keep_going = f(comb, mask);
            keep_going
        });
        if !keep_going {
            return;
        }
    }
}

/// `i(H) = min |E(S, S̄)| / |S|` over `1 <= |S| <= ⌊n/2⌋`, exactly.
///
/// The witness is the first minimiser by size, then lexicographic order.
pub fn isoperimetric_number(h: &Hypergraph) -> Result<(Ratio<u64>, CutWitness)> {
    check_size(h)?;
    let n = h.n();
    let masks = edge_masks(h);
    let full = full_mask(n);
    let mut best: Option<(Ratio<u64>, Vec<usize>, usize)> = None;
    for_each_side(n, n / 2, |comb, mask| {
        let cut = crossing(&masks, mask, full);
        let ratio = Ratio::new(cut as u64, comb.len() as u64);
        if best.as_ref().is_none_or(|(b, _, _)| ratio < *b) {
            best = Some((ratio, comb.iter().map(|v| v + 1).collect(), cut));
        }
        // nothing beats a zero ratio
        *best.as_ref().map(|b| b.0.numer()).unwrap_or(&1) != 0
    });
    let (ratio, side, cut) = best.expect("n >= 2 gives at least one side");
    Ok((ratio, CutWitness::new(side, cut)))
}

/// `e(H)`: fewest edges crossing any bipartition; 0 exactly when `H` is disconnected.
pub fn edge_connectivity(h: &Hypergraph) -> Result<(usize, CutWitness)> {
    check_size(h)?;
    let n = h.n();
    let masks = edge_masks(h);
    let full = full_mask(n);
    let mut best: Option<(usize, Vec<usize>)> = None;
    // every bipartition has a side of size at most n/2
    for_each_side(n, n / 2, |comb, mask| {
        let cut = crossing(&masks, mask, full);
        if best.as_ref().is_none_or(|(b, _)| cut < *b) {
            best = Some((cut, comb.iter().map(|v| v + 1).collect()));
        }
        best.as_ref().map(|b| b.0) != Some(0)
    });
    let (cut, side) = best.expect("n >= 2 gives at least one side");
    Ok((cut, CutWitness::new(side, cut)))
}

/// `v(H)` with a smallest vertex cut, searched by size then lexicographically over
/// `1 <= |V'| <= n - 2`. Isolated survivors count as components. `None` when no vertex set
/// disconnects `H`.
pub fn vertex_connectivity(h: &Hypergraph) -> Result<Option<(usize, Vec<usize>)>> {
    check_size(h)?;
    let n = h.n();
    let masks = edge_masks(h);
    for size in 1..=n.saturating_sub(2) {
        let mut found = None;
        for_each_combination(n, size, |comb| {
            let removed = comb.iter().fold(0u32, |m, &v| m | (1 << v));
            if !survivors_connected(n, &masks, removed) {
                found = Some(comb.iter().map(|v| v + 1).collect::<Vec<_>>());
                return false;
            }
            true
        });
        if let Some(cut) = found {
            return Ok(Some((size, cut)));
        }
    }
    Ok(None)
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

// Connectivity of H - removed, flooding over edges that avoid the removed set.
fn survivors_connected(n: usize, masks: &[u32], removed: u32) -> bool {
    let alive = full_mask(n) & !removed;
    if alive == 0 {
        return true;
    }
    let live_edges: Vec<u32> = masks.iter().copied().filter(|e| e & removed == 0).collect();
    let mut reached = alive & alive.wrapping_neg();
    loop {
        let mut grown = reached;
        for &e in &live_edges {
            if e & grown != 0 {
                grown |= e;
            }
        }
        if grown == reached {
            break;
        }
        reached = grown;
    }
    reached == alive
}
