use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Hypergraph;
use crate::combinatorics::{binomial, for_each_combination, unrank_combination};
use crate::error::{Error, Result};

/// Resampling budget for `gen_random` with `require_connected`.
pub const CONNECTIVITY_RETRIES: usize = 1000;

/// All `C(n, k)` k-subsets of `1..=n`.
pub fn gen_complete(n: usize, k: usize) -> Result<Hypergraph> {
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!(
            "complete hypergraph needs 2 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let count = binomial(n as u64, k as u64).unwrap_or(u128::MAX);
    if count > 10_000_000 {
        return Err(Error::TooLarge(format!("C({n}, {k}) = {count} edges")));
    }
    let mut edges = Vec::with_capacity(count as usize);
    for_each_combination(n, k, |c| {
        edges.push(c.iter().map(|v| v + 1).collect());
        true
    });
    Hypergraph::new(n, k, edges)
}

/// The Fano plane: 7 points, 7 lines of 3.
pub fn gen_fano() -> Hypergraph {
    const LINES: [[usize; 3]; 7] = [
        [1, 2, 3],
        [1, 4, 5],
        [1, 6, 7],
        [2, 4, 6],
        [2, 5, 7],
        [3, 4, 7],
        [3, 5, 6],
    ];
    Hypergraph::new(7, 3, LINES.iter().map(|l| l.to_vec()).collect())
        .expect("Fano plane table is valid")
}

/// `m` distinct k-subsets drawn uniformly without replacement, by sampling ranks in
/// `0..C(n, k)` and unranking them.
///
/// The stream is ChaCha8 seeded from `seed`, so output depends only on the arguments. With
/// `require_connected` the draw is repeated (continuing the same stream) up to
/// [`CONNECTIVITY_RETRIES`] times until the result is connected.
pub fn gen_random(
    n: usize,
    k: usize,
    m: usize,
    seed: u64,
    require_connected: bool,
) -> Result<Hypergraph> {
    if n == 0 || k < 2 || k > n {
        return Err(Error::InvalidParameter(format!(
            "random hypergraph needs 2 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let total = binomial(n as u64, k as u64)
        .and_then(|c| usize::try_from(c).ok())
        .ok_or_else(|| Error::TooLarge(format!("C({n}, {k}) exceeds the address space")))?;
    if m > total {
        return Err(Error::InvalidParameter(format!(
            "{m} edges requested but only C({n}, {k}) = {total} exist"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = if require_connected {
        CONNECTIVITY_RETRIES
    } else {
        1
    };
    for _ in 0..attempts {
        let edges = index::sample(&mut rng, total, m)
            .into_iter()
            .map(|rank| {
                unrank_combination(n, k, rank as u128)
                    .into_iter()
                    .map(|v| v + 1)
                    .collect()
            })
            .collect();
        let h = Hypergraph::new(n, k, edges)?;
        if !require_connected || h.is_connected() {
            return Ok(h);
        }
    }
    Err(Error::ConnectivityUnattainable { attempts })
}
