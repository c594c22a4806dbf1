//! Binomial coefficients and k-subset ranking.

/// `C(n, k)` as `u128`, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// `C(n, k)` for small arguments where overflow is impossible by construction.
pub fn binomial_u64(n: usize, k: usize) -> u64 {
    binomial(n as u64, k as u64)
        .and_then(|c| u64::try_from(c).ok())
        .expect("binomial coefficient fits in u64")
}

/// The `rank`-th k-subset of `0..n` in lexicographic order (0-based members).
///
/// `rank` must be below `C(n, k)`.
pub fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            let block = binomial((n - next - 1) as u64, remaining as u64).unwrap_or(u128::MAX);
            if rank < block {
                out.push(next);
                next += 1;
                break;
            }
            rank -= block;
            next += 1;
        }
    }
    out
}

/// Lexicographic successor of a k-subset of `0..n`; returns false after the last one.
pub fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for t in i + 1..k {
                comb[t] = comb[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every k-subset of `0..n` in lexicographic order until it returns `false`.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut comb: Vec<usize> = (0..k).collect();
    loop {
        if !f(&comb) {
            return;
        }
        if !next_combination(&mut comb, n) {
            return;
        }
    }
}
