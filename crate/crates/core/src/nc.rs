//! Non-crossing permutations, pairings of `[±n]`, and the moment/cumulant
//! transforms over the non-crossing lattice.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Num;

use crate::enumerate::{for_each_pairing, for_each_permutation};
use crate::perm::{noncrossing_dense, SignedPerm};

/// Largest `n` for which `S_n` is enumerated (`8! = 40320`).
pub const PERM_CAP: usize = 8;
/// Largest half-size for which pairings of `[±n]` are enumerated
/// (`15!! = 2027025`).
pub const PAIRING_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombError {
    #[error("order {n} exceeds the enumeration cap {cap}")]
    AboveCap { n: usize, cap: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("sequence has {available} entries but order {needed} was requested")]
    TooShort { needed: usize, available: usize },
}

fn check_order(n: usize, cap: usize) -> Result<(), CombError> {
    if n == 0 {
        Err(CombError::ZeroOrder)
    } else if n > cap {
        Err(CombError::AboveCap { n, cap })
    } else {
        Ok(())
    }
}

pub fn catalan(n: usize) -> u64 {
    // C_{k+1} = C_k · 2(2k+1)/(k+2)
    (0..n as u64).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// The non-crossing permutations of `[n]`, in lexicographic order of their
/// images.
#[derive(Clone, Debug)]
pub struct NCPermutationSet {
    n: usize,
    members: Vec<SignedPerm>,
}

impl NCPermutationSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[SignedPerm] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl fmt::Display for NCPermutationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.members {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Filters `S_n` with the cycle-count test.
pub fn enumerate_nc_perms(n: usize) -> Result<NCPermutationSet, CombError> {
    check_order(n, PERM_CAP)?;
    let mut members = Vec::new();
    for_each_permutation(n, |p| {
        if noncrossing_dense(p) {
            members.push(SignedPerm::embed_zero_based(p));
        }
    });
    Ok(NCPermutationSet { n, members })
}

/// Pairings of `[±n]`; `delta_only` keeps those joining opposite signs.
#[derive(Clone, Debug)]
pub struct PairingSet {
    n: usize,
    delta_only: bool,
    members: Vec<SignedPerm>,
}

impl PairingSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta_only(&self) -> bool {
        self.delta_only
    }

    pub fn members(&self) -> &[SignedPerm] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl fmt::Display for PairingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.members {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

pub fn enumerate_pairings(n: usize, delta_only: bool) -> Result<PairingSet, CombError> {
    check_order(n, PAIRING_CAP)?;
    let mut members = Vec::new();
    for_each_pairing(n, delta_only, |p| {
        members.push(SignedPerm::from_dense(n, p.to_vec()).expect("pairing is a bijection"));
    });
    Ok(PairingSet {
        n,
        delta_only,
        members,
    })
}

macro_rules! sequence_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name<T>(Vec<T>);

        impl<T> $name<T> {
            /// Entries in order `1..=N`; must be nonempty.
            pub fn new(entries: Vec<T>) -> Result<Self, CombError> {
                if entries.is_empty() {
                    return Err(CombError::ZeroOrder);
                }
                Ok($name(entries))
            }

            /// Entry of order `n` (1-based).
            pub fn get(&self, n: usize) -> &T {
                &self.0[n - 1]
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn as_slice(&self) -> &[T] {
                &self.0
            }

            pub fn into_vec(self) -> Vec<T> {
                self.0
            }

            pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> $name<U> {
                $name(self.0.iter().map(f).collect())
            }
        }
    };
}

sequence_type!(
    /// Free cumulants `κ₁, ..., κ_N`.
    CumulantSequence
);
sequence_type!(
    /// Moments `m₁, ..., m_N`.
    MomentSequence
);

/// Blocks (0-based positions, ascending) of every non-crossing partition of
/// `[n]`, read off the cycles of the non-crossing permutations.
pub(crate) fn nc_partitions(n: usize) -> Result<Vec<Vec<Vec<usize>>>, CombError> {
    let set = enumerate_nc_perms(n)?;
    Ok(set
        .members
        .iter()
        .map(|s| {
            s.cycles()
                .into_iter()
                .filter(|c| c[0] > 0)
                .map(|c| {
                    let mut b: Vec<usize> = c.iter().map(|&k| (k - 1) as usize).collect();
                    b.sort_unstable();
                    b
                })
                .collect()
        })
        .collect())
}

/// `m_n = Σ_{σ ∈ NC(n)} Π_{cycles c} κ_{|c|}` for `n = 1..=order`.
pub fn moments_from_cumulants<T>(
    kappa: &CumulantSequence<T>,
    order: usize,
) -> Result<MomentSequence<T>, CombError>
where
    T: Num + Clone,
{
    check_order(order, PERM_CAP)?;
    if kappa.len() < order {
        return Err(CombError::TooShort {
            needed: order,
            available: kappa.len(),
        });
    }
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        let mut total = T::zero();
        for partition in nc_partitions(n)? {
            let term = partition
                .iter()
                .fold(T::one(), |acc, b| acc * kappa.get(b.len()).clone());
            total = total + term;
        }
        out.push(total);
    }
    Ok(MomentSequence(out))
}

/// Inverse of [`moments_from_cumulants`]:
/// `κ_n = m_n - Σ_{π ∈ NC(n), π ≠ 1_n} κ_π`.
pub fn cumulants_from_moments<T>(
    moments: &MomentSequence<T>,
    order: usize,
) -> Result<CumulantSequence<T>, CombError>
where
    T: Num + Clone,
{
    check_order(order, PERM_CAP)?;
    if moments.len() < order {
        return Err(CombError::TooShort {
            needed: order,
            available: moments.len(),
        });
    }
    let mut kappa: Vec<T> = Vec::with_capacity(order);
    for n in 1..=order {
        let mut k = moments.get(n).clone();
        for partition in nc_partitions(n)? {
            if partition.len() == 1 {
                continue;
            }
            let term = partition
                .iter()
                .fold(T::one(), |acc, b| acc * kappa[b.len() - 1].clone());
            k = k - term;
        }
        kappa.push(k);
    }
    Ok(CumulantSequence(kappa))
}

/// Multivariate free cumulants `κ(a₁, ..., aₙ)` of a family given by its
/// moment functional on words, computed recursively with memoisation on
/// subwords.
pub struct MixedCumulants<L, T, F> {
    oracle: F,
    memo: BTreeMap<Vec<L>, T>,
    partitions: BTreeMap<usize, Vec<Vec<Vec<usize>>>>,
}

impl<L, T, F> MixedCumulants<L, T, F>
where
    L: Ord + Clone,
    T: Num + Clone,
    F: FnMut(&[L]) -> T,
{
    pub fn new(oracle: F) -> Self {
        MixedCumulants {
            oracle,
            memo: BTreeMap::new(),
            partitions: BTreeMap::new(),
        }
    }

    pub fn cumulant(&mut self, word: &[L]) -> Result<T, CombError> {
        let n = word.len();
        check_order(n, PERM_CAP)?;
        if let Some(v) = self.memo.get(word) {
            return Ok(v.clone());
        }
        if let alloc::collections::btree_map::Entry::Vacant(e) = self.partitions.entry(n) {
            e.insert(nc_partitions(n)?);
        }
        let partitions = self.partitions[&n].clone();
        let mut value = (self.oracle)(word);
        for partition in partitions.iter().filter(|p| p.len() > 1) {
            let mut term = T::one();
            for block in partition {
                let sub: Vec<L> = block.iter().map(|&i| word[i].clone()).collect();
                term = term * self.cumulant(&sub)?;
                if term.is_zero() {
                    break;
                }
            }
            value = value - term;
        }
        self.memo.insert(word.to_vec(), value.clone());
        Ok(value)
    }
}

/// One-shot [`MixedCumulants::cumulant`].
pub fn mixed_cumulant<L, T, F>(oracle: F, word: &[L]) -> Result<T, CombError>
where
    L: Ord + Clone,
    T: Num + Clone,
    F: FnMut(&[L]) -> T,
{
    MixedCumulants::new(oracle).cumulant(word)
}
