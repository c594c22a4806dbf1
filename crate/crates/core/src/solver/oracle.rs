//! Brute-force lattice minimisation, independent of the mirror-descent path.

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::laplacian::objective_y;
use crate::scalar::Scalar;

/// Largest lattice the oracle will enumerate for one excluded vertex.
pub const MAX_GRID_POINTS: u128 = 100_000_000;

/// Number of lattice points `y ∈ {0, 1/M, …, 1}^{n−1}` with `Σ y = 1`: `C(M+n−2, n−2)`.
pub fn grid_point_count(n: usize, m: usize) -> Option<u128> {
    if n < 2 {
        return Some(0);
    }
    binomial((m + n - 2) as u64, (n - 2) as u64)
}

/// Minimum of the objective over the lattice slice with `y_j = 0` and spacing `1/M`, and over
/// the uniform points of the components that avoid `j` (exact zeros the lattice can miss).
///
/// This is an upper bound on the subproblem value that tightens as `M` grows.
pub fn grid_oracle<T: Scalar>(h: &Hypergraph, j: usize, m: usize) -> Result<T> {
    let n = h.n();
    if j == 0 || j > n {
        return Err(Error::VertexOutOfRange { vertex: j, n });
    }
    if m < 1 {
        return Err(Error::InvalidParameter(
            "grid resolution must be at least 1".into(),
        ));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    let count = grid_point_count(n, m).unwrap_or(u128::MAX);
    if count > MAX_GRID_POINTS {
        return Err(Error::TooLarge(format!(
            "grid with M = {m} on {} free coordinates has {count} points (limit {MAX_GRID_POINTS})",
            n - 1
        )));
    }

    let mut best = T::infinity();
    let mut y = vec![T::zero(); n];
    for comp in h.components().iter().filter(|c| !c.contains(&j)) {
        y.iter_mut().for_each(|w| *w = T::zero());
        let w = T::one() / T::of_usize(comp.len());
        for &v in comp {
            y[v - 1] = w;
        }
        best = best.min(objective_y(h, &y));
    }

    let free: Vec<usize> = (0..n).filter(|&v| v != j - 1).collect();
    let scale = T::one() / T::of_usize(m);
    let mut counts = vec![0usize; free.len()];

    // compositions of m into free.len() parts, last part implied
    let last = free.len() - 1;
    counts[last] = m;
    loop {
        for (c, &v) in counts.iter().zip(&free) {
            y[v] = T::of_usize(*c) * scale;
        }
        let value = objective_y(h, &y);
        if value < best {
            best = value;
        }
        if !next_composition(&mut counts) {
            break;
        }
    }
    Ok(best)
}

// Steps through all compositions with a fixed total; the last slot holds the remainder.
fn next_composition(counts: &mut [usize]) -> bool {
    let last = counts.len() - 1;
    if last == 0 {
        return false;
    }
    // find the rightmost non-last slot that can take one more unit
    if counts[last] > 0 {
        counts[last - 1] += 1;
        counts[last] -= 1;
        return true;
    }
    let mut i = last - 1;
    loop {
        if counts[i] > 0 {
            if i == 0 {
                return false;
            }
            let carried = counts[i];
            counts[i] = 0;
            counts[i - 1] += 1;
            counts[last] = carried - 1;
            return true;
        }
        if i == 0 {
            return false;
        }
        i -= 1;
    }
}

/// `min_j grid_oracle(H, j, M)`.
pub fn alpha_oracle<T: Scalar>(h: &Hypergraph, m: usize) -> Result<T> {
    let mut best = T::infinity();
    for j in 1..=h.n() {
        best = best.min(grid_oracle(h, j, m)?);
    }
    Ok(best)
}
