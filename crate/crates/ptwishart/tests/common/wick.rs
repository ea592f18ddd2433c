//! Brute-force Gaussian moments by direct index summation.
//!
//! `E tr⊗tr(W^{l₁} ⋯ W^{lₙ})` is expanded over every row index of the
//! product and every Wick contraction of the Gaussian entries. The column
//! sum of `G` contributes `p` per connected class of column indices.

use ptwishart_core::{ExactValue, Label};

/// Entry of `W` read by `W^{label}[(i,a),(j,b)]`, as (row, column) of `W`.
fn source(label: Label, d2: usize, r: usize, s: usize) -> (usize, usize) {
    let (i, a) = (r / d2, r % d2);
    let (j, b) = (s / d2, s % d2);
    let ((i2, a2), (j2, b2)) = match label {
        Label::Plain => ((i, a), (j, b)),
        Label::LeftPt => ((j, a), (i, b)),
        Label::RightPt => ((i, b), (j, a)),
        Label::FullT => ((j, b), (i, a)),
    };
    (i2 * d2 + a2, j2 * d2 + b2)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn pairings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0];
    let mut out = Vec::new();
    for k in 1..items.len() {
        let rest: Vec<usize> = items[1..].iter().enumerate().filter(|&(i, _)| i + 1 != k).map(|(_, &x)| x).collect();
        for mut p in pairings(&rest) {
            p.push((first, items[k]));
            out.push(p);
        }
    }
    out
}

fn cycles(perm: &[usize]) -> u32 {
    let mut seen = vec![false; perm.len()];
    let mut count = 0;
    for s in 0..perm.len() {
        if !seen[s] {
            count += 1;
            let mut k = s;
            while !seen[k] {
                seen[k] = true;
                k = perm[k];
            }
        }
    }
    count
}

fn components(n: usize, edges: &[(usize, usize)]) -> u32 {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    (0..n).filter(|&x| find(&mut parent, x) == x).count() as u32
}

/// Row/column pairs `(u_k, v_k)` of `W` for every row-index tuple.
fn index_tuples(word: &[Label], d1: usize, d2: usize, mut visit: impl FnMut(&[(usize, usize)])) {
    let n = word.len();
    let side = d1 * d2;
    let mut r = vec![0usize; n];
    loop {
        let uv: Vec<(usize, usize)> = (0..n).map(|k| source(word[k], d2, r[k], r[(k + 1) % n])).collect();
        visit(&uv);
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            r[k] += 1;
            if r[k] < side {
                break;
            }
            r[k] = 0;
            k += 1;
        }
    }
}

fn normalise(total: u128, side: usize, n: usize) -> ExactValue {
    let den = (side as u128).pow(n as u32 + 1);
    ExactValue::ratio(total as i64, den as i64)
}

/// Complex Ginibre `G` with `E|g|² = 1`.
pub fn complex_moment(word: &[Label], d1: usize, d2: usize, p: usize) -> ExactValue {
    let n = word.len();
    let perms: Vec<(Vec<usize>, u128)> = permutations(n)
        .into_iter()
        .map(|s| {
            let c = cycles(&s);
            (s, (p as u128).pow(c))
        })
        .collect();
    let mut total = 0u128;
    index_tuples(word, d1, d2, |uv| {
        for (sigma, weight) in &perms {
            if (0..n).all(|k| uv[k].0 == uv[sigma[k]].1) {
                total += weight;
            }
        }
    });
    normalise(total, d1 * d2, n)
}

/// Real Gaussian `G` with unit variance.
pub fn real_moment(word: &[Label], d1: usize, d2: usize, p: usize) -> ExactValue {
    let n = word.len();
    let items: Vec<usize> = (0..2 * n).collect();
    let all = pairings(&items);
    let weights: Vec<u128> = all
        .iter()
        .map(|pairs| {
            let edges: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a / 2, b / 2)).collect();
            (p as u128).pow(components(n, &edges))
        })
        .collect();
    let mut total = 0u128;
    index_tuples(word, d1, d2, |uv| {
        let row = |x: usize| if x.is_multiple_of(2) { uv[x / 2].0 } else { uv[x / 2].1 };
        for (pairs, weight) in all.iter().zip(&weights) {
            if pairs.iter().all(|&(a, b)| row(a) == row(b)) {
                total += weight;
            }
        }
    });
    normalise(total, d1 * d2, n)
}
