//! Permutations of the signed index set `[±n] = {1, -1, 2, -2, ..., n, -n}`.
//!
//! Every permutation that shows up in the moment formulas lives here: the
//! full cycle `γ = (1, 2, ..., n)` acting on positives, the sign flip
//! `δ(k) = -k`, the sign-vector permutations `ε(k) = ε_{|k|}·k`, pairings of
//! `[±n]`, and permutations of `[n]` embedded by fixing every negative index.
//!
//! Storage is dense: `k > 0` lives at slot `k - 1` and `k < 0` at slot
//! `n + |k| - 1`. All public methods speak the signed language.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Errors raised by permutation constructors and operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("size mismatch: [±{left}] vs [±{right}]")]
    SizeMismatch { left: usize, right: usize },
    #[error("half-size must be at least 1")]
    Empty,
    #[error("index {index} is outside [±{n}]")]
    OutOfRange { index: i64, n: usize },
    #[error("the map is not a bijection of [±{n}]")]
    NotBijection { n: usize },
    #[error("the two permutations do not act transitively on their ground set")]
    NotTransitive,
    #[error("sign vector is not constant on the cycles of the permutation")]
    NotConstantOnCycles,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("invalid sign {0}; expected -1 or 1")]
    InvalidSign(i64),
    #[error("cannot parse cycle notation: {0}")]
    Parse(String),
}

/// Dense slot of the signed index `k` in `[±n]`.
#[inline]
pub fn encode(n: usize, k: i64) -> usize {
    debug_assert!(k != 0 && k.unsigned_abs() as usize <= n);
    if k > 0 {
        (k - 1) as usize
    } else {
        n + (-k) as usize - 1
    }
}

/// Signed index stored at dense slot `idx`.
#[inline]
pub fn decode(n: usize, idx: usize) -> i64 {
    debug_assert!(idx < 2 * n);
    if idx < n {
        idx as i64 + 1
    } else {
        -((idx - n) as i64 + 1)
    }
}

/// A bijection of `[±n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    n: usize,
    map: Vec<u32>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm {
            n,
            map: (0..2 * n as u32).collect(),
        }
    }

    /// `δ(k) = -k`.
    pub fn delta(n: usize) -> Self {
        let map = (0..2 * n).map(|i| ((i + n) % (2 * n)) as u32).collect();
        SignedPerm { n, map }
    }

    /// The full cycle `γ = (1, 2, ..., n)` on positives; negatives fixed.
    pub fn gamma(n: usize) -> Self {
        let mut map: Vec<u32> = (0..2 * n as u32).collect();
        for i in 0..n {
            map[i] = ((i + 1) % n) as u32;
        }
        SignedPerm { n, map }
    }

    /// The pairing `γδγ⁻¹ = (1, -n)(2, -1)...(n, -(n-1))`.
    pub fn gamma_delta_gamma_inv(n: usize) -> Self {
        let g = Self::gamma(n);
        g.compose_unchecked(&Self::delta(n))
            .compose_unchecked(&g.inverse())
    }

    /// Build from a signed map `k ↦ f(k)`, checking bijectivity.
    pub fn from_fn(n: usize, f: impl Fn(i64) -> i64) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut map = Vec::with_capacity(2 * n);
        for idx in 0..2 * n {
            let image = f(decode(n, idx));
            if image == 0 || image.unsigned_abs() as usize > n {
                return Err(PermError::OutOfRange { index: image, n });
            }
            map.push(encode(n, image) as u32);
        }
        Self::from_dense(n, map)
    }

    /// Build from dense slot images, checking bijectivity.
    pub fn from_dense(n: usize, map: Vec<u32>) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::Empty);
        }
        if map.len() != 2 * n {
            return Err(PermError::NotBijection { n });
        }
        let mut seen = vec![false; 2 * n];
        for &m in &map {
            let m = m as usize;
            if m >= 2 * n || seen[m] {
                return Err(PermError::NotBijection { n });
            }
            seen[m] = true;
        }
        Ok(SignedPerm { n, map })
    }

    /// Build from disjoint cycles written with signed indices; unmentioned
    /// indices are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[i64]]) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut map: Vec<u32> = (0..2 * n as u32).collect();
        let mut used = vec![false; 2 * n];
        for cycle in cycles {
            for (pos, &k) in cycle.iter().enumerate() {
                if k == 0 || k.unsigned_abs() as usize > n {
                    return Err(PermError::OutOfRange { index: k, n });
                }
                let slot = encode(n, k);
                if used[slot] {
                    return Err(PermError::NotBijection { n });
                }
                used[slot] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                if next == 0 || next.unsigned_abs() as usize > n {
                    return Err(PermError::OutOfRange { index: next, n });
                }
                map[slot] = encode(n, next) as u32;
            }
        }
        Ok(SignedPerm { n, map })
    }

    /// Embed a permutation of `[n]` (given as 1-based images) by fixing the
    /// negatives.
    pub fn embed(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut map: Vec<u32> = (0..2 * n as u32).collect();
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > n {
                return Err(PermError::OutOfRange {
                    index: img as i64,
                    n,
                });
            }
            map[i] = (img - 1) as u32;
        }
        Self::from_dense(n, map)
    }

    /// Embed a permutation of `[n]` given as 0-based images. Unchecked.
    pub(crate) fn embed_zero_based(images: &[u32]) -> Self {
        let n = images.len();
        let mut map: Vec<u32> = (0..2 * n as u32).collect();
        map[..n].copy_from_slice(images);
        SignedPerm { n, map }
    }

    /// The half-size `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dense slot images.
    pub fn dense(&self) -> &[u32] {
        &self.map
    }

    pub fn apply(&self, k: i64) -> i64 {
        decode(self.n, self.map[encode(self.n, k)] as usize)
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &SignedPerm) -> Result<SignedPerm, PermError> {
        if self.n != other.n {
            return Err(PermError::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &SignedPerm) -> SignedPerm {
        let map = other.map.iter().map(|&j| self.map[j as usize]).collect();
        SignedPerm { n: self.n, map }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut map = vec![0u32; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j as usize] = i as u32;
        }
        SignedPerm { n: self.n, map }
    }

    /// `#(self)`: number of cycles on `[±n]`, fixed points included.
    pub fn cycle_count(&self) -> usize {
        count_cycles(&self.map)
    }

    /// Cycles in signed notation, each starting at its lowest dense slot
    /// (so `1, 2, ..., n` before `-1, ..., -n`).
    pub fn cycles(&self) -> Vec<Vec<i64>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(decode(self.n, i));
                i = self.map[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Orbit partition of `[±n]`.
    pub fn orbits(&self) -> Partition {
        Partition::from_unions(self.n, core::iter::once(self.map.as_slice()))
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn is_involution(&self) -> bool {
        self.map
            .iter()
            .enumerate()
            .all(|(i, &j)| self.map[j as usize] as usize == i)
    }

    /// Fixed-point-free involution.
    pub fn is_pairing(&self) -> bool {
        self.is_involution() && self.map.iter().enumerate().all(|(i, &j)| i != j as usize)
    }

    /// True when every negative index is a fixed point, i.e. `self` is an
    /// embedded permutation of `[n]`.
    pub fn fixes_negatives(&self) -> bool {
        (self.n..2 * self.n).all(|i| self.map[i] as usize == i)
    }

    /// True when `self` maps `[n]` onto `[n]`.
    pub fn preserves_positives(&self) -> bool {
        self.map[..self.n].iter().all(|&j| (j as usize) < self.n)
    }

    /// Restriction to `[n]` as 1-based images, if `[n]` is invariant.
    pub fn restrict_to_positives(&self) -> Option<Vec<usize>> {
        if !self.preserves_positives() {
            return None;
        }
        Some(self.map[..self.n].iter().map(|&j| j as usize + 1).collect())
    }

    /// Number of cycles of the restriction to `[n]`, assuming invariance.
    fn positive_cycle_count(&self) -> usize {
        count_cycles(&self.map[..self.n])
    }

    /// Parse cycle notation with an explicit half-size.
    pub fn parse(n: usize, text: &str) -> Result<SignedPerm, PermError> {
        let cycles = parse_cycles(text)?;
        let refs: Vec<&[i64]> = cycles.iter().map(Vec::as_slice).collect();
        SignedPerm::from_cycles(n, &refs)
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (i, k) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{k}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPerm[±{}]{}", self.n, self)
    }
}

/// Parses cycle notation; `n` is the largest absolute index mentioned.
impl FromStr for SignedPerm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cycles = parse_cycles(s)?;
        let n = cycles
            .iter()
            .flatten()
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        let refs: Vec<&[i64]> = cycles.iter().map(Vec::as_slice).collect();
        SignedPerm::from_cycles(n, &refs)
    }
}

fn parse_cycles(text: &str) -> Result<Vec<Vec<i64>>, PermError> {
    let text = text.replace('\u{2212}', "-");
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| PermError::Parse(rest.to_string()))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| PermError::Parse("unclosed cycle".to_string()))?;
        let body = &body_start[..close];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let k: i64 = tok
                .parse()
                .map_err(|_| PermError::Parse(tok.to_string()))?;
            cycle.push(k);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body_start[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Number of cycles of a dense map.
pub(crate) fn count_cycles(map: &[u32]) -> usize {
    if map.len() <= 64 {
        let mut seen = 0u64;
        let mut count = 0;
        for start in 0..map.len() {
            if seen >> start & 1 == 1 {
                continue;
            }
            count += 1;
            let mut i = start;
            while seen >> i & 1 == 0 {
                seen |= 1 << i;
                i = map[i] as usize;
            }
        }
        count
    } else {
        let mut seen = vec![false; map.len()];
        let mut count = 0;
        for start in 0..map.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = map[i] as usize;
            }
        }
        count
    }
}

/// Union-find over dense slots.
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    roots: usize,
}

impl UnionFind {
    pub(crate) fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size as u32).collect(),
            roots: size,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
            self.roots -= 1;
        }
    }

    pub(crate) fn roots(&self) -> usize {
        self.roots
    }
}

/// Number of blocks of the join of the orbit partitions of dense maps of
/// equal length.
pub(crate) fn join_block_count(a: &[u32], b: &[u32]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    let mut uf = UnionFind::new(a.len());
    for i in 0..a.len() {
        uf.union(i, a[i] as usize);
        uf.union(i, b[i] as usize);
    }
    uf.roots()
}

/// A set partition of `[±n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    /// Canonical block label per dense slot; blocks numbered in order of
    /// first appearance.
    labels: Vec<u32>,
    block_count: usize,
}

impl Partition {
    fn from_unions<'a>(n: usize, maps: impl Iterator<Item = &'a [u32]>) -> Partition {
        let mut uf = UnionFind::new(2 * n);
        for map in maps {
            for (i, &j) in map.iter().enumerate() {
                uf.union(i, j as usize);
            }
        }
        let mut labels = vec![u32::MAX; 2 * n];
        let mut root_label = vec![u32::MAX; 2 * n];
        let mut next = 0u32;
        for i in 0..2 * n {
            let r = uf.find(i);
            if root_label[r] == u32::MAX {
                root_label[r] = next;
                next += 1;
            }
            labels[i] = root_label[r];
        }
        Partition {
            n,
            labels,
            block_count: next as usize,
        }
    }

    /// Size of the ground set (`2n`).
    pub fn n_elements(&self) -> usize {
        2 * self.n
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    /// Blocks as sorted lists of signed indices, ordered by first element in
    /// dense order.
    pub fn blocks(&self) -> Vec<Vec<i64>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (i, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(decode(self.n, i));
        }
        blocks
    }

    pub fn same_block(&self, a: i64, b: i64) -> bool {
        self.labels[encode(self.n, a)] == self.labels[encode(self.n, b)]
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (bi, block) in self.blocks().iter().enumerate() {
            if bi > 0 {
                f.write_str(", ")?;
            }
            f.write_str("{")?;
            for (i, k) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{k}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// A vector of signs `(ε₁, ..., εₙ)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct EpsilonVector {
    signs: Vec<i8>,
}

impl EpsilonVector {
    pub fn new(signs: &[i64]) -> Result<Self, PermError> {
        if signs.is_empty() {
            return Err(PermError::Empty);
        }
        let signs = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(1i8),
                -1 => Ok(-1i8),
                other => Err(PermError::InvalidSign(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EpsilonVector { signs })
    }

    pub fn constant(n: usize, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1);
        EpsilonVector {
            signs: vec![sign; n],
        }
    }

    pub(crate) fn from_signs_unchecked(signs: Vec<i8>) -> Self {
        EpsilonVector { signs }
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    /// `ε_k` for `k ∈ [n]` (1-based).
    pub fn sign(&self, k: usize) -> i8 {
        self.signs[k - 1]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// The permutation `ε(k) = ε_{|k|}·k` of `[±n]`.
    pub fn to_perm(&self) -> SignedPerm {
        let n = self.n();
        let mut map: Vec<u32> = (0..2 * n as u32).collect();
        for (i, &s) in self.signs.iter().enumerate() {
            if s < 0 {
                map[i] = (n + i) as u32;
                map[n + i] = i as u32;
            }
        }
        SignedPerm { n, map }
    }
}

pub fn compose(a: &SignedPerm, b: &SignedPerm) -> Result<SignedPerm, PermError> {
    a.compose(b)
}

pub fn cycle_count(a: &SignedPerm) -> usize {
    a.cycle_count()
}

pub fn embed(images: &[usize]) -> Result<SignedPerm, PermError> {
    SignedPerm::embed(images)
}

/// Finest partition of `[±n]` coarser than both orbit partitions.
pub fn join(a: &SignedPerm, b: &SignedPerm) -> Result<Partition, PermError> {
    if a.n != b.n {
        return Err(PermError::SizeMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(Partition::from_unions(
        a.n,
        [a.map.as_slice(), b.map.as_slice()].into_iter(),
    ))
}

/// Genus of the pair `(π, σ)` from `#(π) + #(π⁻¹σ) + #(σ) = m + 2(1 - g)`.
///
/// The ground set is `[n]` when both permutations fix every negative index
/// (embedded permutations of `[n]`) and `[±n]` otherwise. The pair must act
/// transitively on it.
pub fn genus(pi: &SignedPerm, sigma: &SignedPerm) -> Result<u32, PermError> {
    if pi.n != sigma.n {
        return Err(PermError::SizeMismatch {
            left: pi.n,
            right: sigma.n,
        });
    }
    let n = pi.n;
    let pi_inv_sigma = pi.inverse().compose_unchecked(sigma);
    let (m, cycles, blocks) = if pi.fixes_negatives() && sigma.fixes_negatives() {
        let blocks = join_block_count(&pi.map[..n], &sigma.map[..n]);
        let cycles = pi.positive_cycle_count()
            + sigma.positive_cycle_count()
            + pi_inv_sigma.positive_cycle_count();
        (n, cycles, blocks)
    } else {
        let blocks = join_block_count(&pi.map, &sigma.map);
        let cycles = pi.cycle_count() + sigma.cycle_count() + pi_inv_sigma.cycle_count();
        (2 * n, cycles, blocks)
    };
    if blocks != 1 {
        return Err(PermError::NotTransitive);
    }
    let twice = (m + 2) as i64 - cycles as i64;
    debug_assert!(twice >= 0 && twice % 2 == 0, "Euler characteristic parity");
    Ok((twice / 2) as u32)
}

/// `#(σ) + #(σ⁻¹γ) = n + 1` for a permutation of `[n]`. Permutations that
/// move a negative index are never non-crossing.
pub fn is_noncrossing(sigma: &SignedPerm) -> bool {
    if !sigma.fixes_negatives() {
        return false;
    }
    noncrossing_dense(&sigma.map[..sigma.n])
}

/// Non-crossing test on 0-based images of a permutation of `[n]`.
pub(crate) fn noncrossing_dense(images: &[u32]) -> bool {
    let n = images.len();
    let mut inv = vec![0u32; n];
    for (i, &j) in images.iter().enumerate() {
        inv[j as usize] = i as u32;
    }
    // σ⁻¹γ(k) = σ⁻¹(k + 1)
    let inv_gamma: Vec<u32> = (0..n).map(|k| inv[(k + 1) % n]).collect();
    count_cycles(images) + count_cycles(&inv_gamma) == n + 1
}

/// `ε_i = ε_j` whenever `i` and `j` share a cycle of `σ`.
pub fn is_constant_on_cycles(eps: &EpsilonVector, sigma: &SignedPerm) -> bool {
    debug_assert_eq!(eps.n(), sigma.n);
    (0..sigma.n).all(|i| {
        let j = sigma.map[i] as usize;
        j >= sigma.n || eps.signs[i] == eps.signs[j]
    })
}

/// The second characterisation: `εδσδσ⁻¹ε` maps `[n]` into `[n]`.
pub fn conjugated_pairing_preserves_positives(eps: &EpsilonVector, sigma: &SignedPerm) -> bool {
    let n = sigma.n;
    let e = eps.to_perm();
    let d = SignedPerm::delta(n);
    e.compose_unchecked(&d)
        .compose_unchecked(sigma)
        .compose_unchecked(&d)
        .compose_unchecked(&sigma.inverse())
        .compose_unchecked(&e)
        .preserves_positives()
}

/// `σ_ε`: each cycle of `σ` kept where `ε = 1` and reversed where `ε = -1`.
pub fn sigma_epsilon(sigma: &SignedPerm, eps: &EpsilonVector) -> Result<SignedPerm, PermError> {
    if eps.n() != sigma.n {
        return Err(PermError::SizeMismatch {
            left: sigma.n,
            right: eps.n(),
        });
    }
    if !sigma.fixes_negatives() {
        return Err(PermError::Precondition("σ must be a permutation of [n]"));
    }
    if !is_constant_on_cycles(eps, sigma) {
        return Err(PermError::NotConstantOnCycles);
    }
    let inv = sigma.inverse();
    let mut map = sigma.map.clone();
    for i in 0..sigma.n {
        if eps.signs[i] < 0 {
            map[i] = inv.map[i];
        }
    }
    Ok(SignedPerm { n: sigma.n, map })
}

/// Number of even-length cycles of a permutation of `[n]`.
pub fn even_cycle_count(sigma: &SignedPerm) -> usize {
    sigma
        .cycles()
        .iter()
        .filter(|c| c[0] > 0 && c.len() % 2 == 0)
        .count()
}

/// Checks `#(στ) = 1 + e(σ)` for non-crossing `σ` and an `n`-cycle `τ`.
pub fn bn_cycle_identity_check(sigma: &SignedPerm, tau: &SignedPerm) -> Result<bool, PermError> {
    if sigma.n != tau.n {
        return Err(PermError::SizeMismatch {
            left: sigma.n,
            right: tau.n,
        });
    }
    if !is_noncrossing(sigma) {
        return Err(PermError::Precondition("σ must be non-crossing"));
    }
    if !tau.fixes_negatives() || tau.positive_cycle_count() != 1 {
        return Err(PermError::Precondition("τ must be a single n-cycle on [n]"));
    }
    let prod = sigma.compose_unchecked(tau);
    Ok(prod.positive_cycle_count() == 1 + even_cycle_count(sigma))
}
