//! Exhaustive iteration over `S_n` (lexicographic, rank-addressable) and over
//! pairings of `[±n]`.

use alloc::vec;
use alloc::vec::Vec;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `(2m - 1)!!`, the number of pairings of `2m` points.
pub fn double_factorial_odd(m: usize) -> u64 {
    (1..=m as u64).map(|k| 2 * k - 1).product()
}

/// Advance `p` to its lexicographic successor; false once `p` was the last.
pub fn next_permutation(p: &mut [u32]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The permutation of `{0, ..., n-1}` with lexicographic rank `rank`.
pub fn unrank_permutation(n: usize, mut rank: u64) -> Vec<u32> {
    let mut pool: Vec<u32> = (0..n as u32).collect();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

/// Visit permutations with lexicographic ranks in `start..end` (0-based
/// images).
pub fn for_each_permutation_in(n: usize, start: u64, end: u64, mut f: impl FnMut(&[u32])) {
    if start >= end {
        return;
    }
    let mut p = unrank_permutation(n, start);
    let mut rank = start;
    loop {
        f(&p);
        rank += 1;
        if rank >= end || !next_permutation(&mut p) {
            break;
        }
    }
}

pub fn for_each_permutation(n: usize, f: impl FnMut(&[u32])) {
    for_each_permutation_in(n, 0, factorial(n), f)
}

/// Visit every fixed-point-free involution of the dense slots `0..2n`
/// (positives first, then negatives), in a fixed deterministic order. With
/// `delta_only` only pairings joining a positive to a negative are visited.
pub fn for_each_pairing(n: usize, delta_only: bool, mut f: impl FnMut(&[u32])) {
    let m = 2 * n;
    for first in 1..m {
        for_each_pairing_with_first(n, delta_only, first, &mut f);
    }
}

/// As [`for_each_pairing`], restricted to pairings matching slot 0 with slot
/// `first`.
pub fn for_each_pairing_with_first(
    n: usize,
    delta_only: bool,
    first: usize,
    mut f: impl FnMut(&[u32]),
) {
    let m = 2 * n;
    if n == 0 || first == 0 || first >= m || (delta_only && first < n) {
        return;
    }
    let mut map = vec![u32::MAX; m];
    map[0] = first as u32;
    map[first] = 0;
    recurse(n, delta_only, &mut map, &mut f);
}

fn recurse(n: usize, delta_only: bool, map: &mut [u32], f: &mut impl FnMut(&[u32])) {
    let Some(i) = map.iter().position(|&x| x == u32::MAX) else {
        f(map);
        return;
    };
    for j in i + 1..map.len() {
        if map[j] != u32::MAX || (delta_only && (i < n) == (j < n)) {
            continue;
        }
        map[i] = j as u32;
        map[j] = i as u32;
        recurse(n, delta_only, map, f);
        map[i] = u32::MAX;
        map[j] = u32::MAX;
    }
}
