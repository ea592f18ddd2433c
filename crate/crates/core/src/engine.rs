//! Exact mixed moments of `{W, W^⸦Γ, W^Γ, W^T}` as sums over `S_n` (complex
//! entries) or over pairings of `[±n]` (real entries), and their limits.
//!
//! Both sums are first reduced to a [`TermTable`]: the number of summands
//! sharing each exponent triple. The finite-dimensional value and every limit
//! are read off that table, so limits are literally the surviving terms of
//! the exact formula.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::enumerate::{factorial, for_each_pairing_with_first, for_each_permutation_in};
use crate::exact::ExactValue;
use crate::nc::{CombError, MixedCumulants, PAIRING_CAP, PERM_CAP};
use crate::perm::{count_cycles, join_block_count, EpsilonVector, PermError, SignedPerm};
use crate::word::{Case, Dims, Label, Regime, RegimeLimit, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("word length {len} exceeds the enumeration cap {cap}")]
    WordTooLong { len: usize, cap: usize },
    #[error("length mismatch: permutation on [{perm}] but sign vector of length {signs}")]
    LengthMismatch { perm: usize, signs: usize },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Comb(#[from] CombError),
}

/// Counts of summands keyed by `(k, a, b)`; the summand is
/// `c̃^k · d₁^a · d₂^b` with `c̃ = p/(d₁d₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermTable {
    n: usize,
    counts: BTreeMap<(u32, i32, i32), u64>,
}

impl TermTable {
    fn empty(n: usize) -> Self {
        TermTable {
            n,
            counts: BTreeMap::new(),
        }
    }

    fn add(&mut self, key: (u32, i32, i32), count: u64) {
        *self.counts.entry(key).or_insert(0) += count;
    }

    fn merge(mut self, other: TermTable) -> TermTable {
        for (k, v) in other.counts {
            self.add(k, v);
        }
        self
    }

    /// Word length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &BTreeMap<(u32, i32, i32), u64> {
        &self.counts
    }

    /// Total number of summands (`n!` or `(2n-1)!!`).
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// The exact finite-dimensional value.
    pub fn evaluate(&self, dims: &Dims) -> ExactValue {
        let ct = dims.c_tilde();
        let d1 = ExactValue::integer(dims.d1() as i64);
        let d2 = ExactValue::integer(dims.d2() as i64);
        self.counts
            .iter()
            .map(|(&(k, a, b), &count)| {
                ExactValue::integer(count as i64) * ct.powi(k as i32) * d1.powi(a) * d2.powi(b)
            })
            .sum()
    }

    /// Coefficients of `c^k`, `k = 0..=n`, of the limit in `regime`.
    pub fn limit_polynomial(&self, regime: Regime) -> Vec<ExactValue> {
        let mut coeffs = vec![ExactValue::zero(); self.n + 1];
        for (&(k, a, b), &count) in &self.counts {
            let weight = match regime {
                Regime::BothGrow if a == 0 && b == 0 => ExactValue::one(),
                Regime::D1Fixed(d1) if b == 0 => ExactValue::integer(d1 as i64).powi(a),
                Regime::D2Fixed(d2) if a == 0 => ExactValue::integer(d2 as i64).powi(b),
                _ => continue,
            };
            coeffs[k as usize] = &coeffs[k as usize] + &(ExactValue::integer(count as i64) * weight);
        }
        coeffs
    }

    /// The limit value at `p/(d₁d₂) → c`.
    pub fn limit(&self, limit: &RegimeLimit) -> ExactValue {
        evaluate_polynomial(&self.limit_polynomial(limit.regime()), limit.c())
    }
}

pub(crate) fn evaluate_polynomial(coeffs: &[ExactValue], x: &ExactValue) -> ExactValue {
    coeffs
        .iter()
        .rev()
        .fold(ExactValue::zero(), |acc, a| &(&acc * x) + a)
}

/// Dense map of the pairing `σδσ⁻¹`, i.e. `σ(l) ↔ -l`.
fn sigma_delta_sigma_inv(images: &[u32], out: &mut [u32]) {
    let n = images.len();
    for (l, &s) in images.iter().enumerate() {
        out[s as usize] = (n + l) as u32;
        out[n + l] = s;
    }
}

/// Dense map of `εγδγ⁻¹ε`.
fn twisted_gamma_pairing(eps: &EpsilonVector) -> Vec<u32> {
    let n = eps.n();
    let e = eps.to_perm();
    e.compose_unchecked(&SignedPerm::gamma_delta_gamma_inv(n))
        .compose_unchecked(&e)
        .dense()
        .to_vec()
}

/// `f_ε(σ) = #(εγδγ⁻¹ε ∨ σδσ⁻¹) + #(σ) - (n + 1)` with `#(σ)` counted on
/// `[n]`.
pub fn f_exponent(sigma: &SignedPerm, eps: &EpsilonVector) -> Result<i32, EngineError> {
    if sigma.n() != eps.n() {
        return Err(EngineError::LengthMismatch {
            perm: sigma.n(),
            signs: eps.n(),
        });
    }
    if !sigma.fixes_negatives() {
        return Err(PermError::Precondition("σ must be a permutation of [n]").into());
    }
    let n = sigma.n();
    let images = &sigma.dense()[..n];
    let mut pd = vec![0u32; 2 * n];
    sigma_delta_sigma_inv(images, &mut pd);
    let joined = join_block_count(&twisted_gamma_pairing(eps), &pd);
    Ok(joined as i32 + count_cycles(images) as i32 - (n as i32 + 1))
}

fn check_word_len(n: usize, cap: usize) -> Result<(), EngineError> {
    if n > cap {
        Err(EngineError::WordTooLong { len: n, cap })
    } else {
        Ok(())
    }
}

fn complex_terms_in(
    eps_pair: &[u32],
    eta_pair: &[u32],
    n: usize,
    start: u64,
    end: u64,
) -> TermTable {
    let mut table = TermTable::empty(n);
    let mut pd = vec![0u32; 2 * n];
    let base = n as i32 + 1;
    for_each_permutation_in(n, start, end, |sigma| {
        sigma_delta_sigma_inv(sigma, &mut pd);
        let k = count_cycles(sigma) as i32;
        let a = join_block_count(eps_pair, &pd) as i32 + k - base;
        let b = join_block_count(eta_pair, &pd) as i32 + k - base;
        table.add((k as u32, a, b), 1);
    });
    table
}

/// Exponent table of the complex expansion over `S_n`.
pub fn complex_term_table(word: &Word) -> Result<TermTable, EngineError> {
    let n = word.len();
    check_word_len(n, PERM_CAP)?;
    let eps_pair = twisted_gamma_pairing(&word.epsilons());
    let eta_pair = twisted_gamma_pairing(&word.etas());
    let total = factorial(n);

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let blocks = total.min(64);
        let table = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let start = total * b / blocks;
                let end = total * (b + 1) / blocks;
                complex_terms_in(&eps_pair, &eta_pair, n, start, end)
            })
            .reduce(|| TermTable::empty(n), TermTable::merge);
        Ok(table)
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(complex_terms_in(&eps_pair, &eta_pair, n, 0, total))
    }
}

/// `E(tr⊗tr(W^{(ε₁,η₁)} ⋯ W^{(εₙ,ηₙ)}))` for complex Gaussian entries.
pub fn exact_moment_complex(word: &Word, dims: &Dims) -> Result<ExactValue, EngineError> {
    Ok(complex_term_table(word)?.evaluate(dims))
}

/// `g(π) = #(γδγ⁻¹ ∨ π) + #(πδ)/2 - (n + 1)` for a pairing of `[±n]`.
pub fn g_exponent(pi: &SignedPerm) -> Result<i32, EngineError> {
    if !pi.is_pairing() {
        return Err(PermError::Precondition("π must be a pairing of [±n]").into());
    }
    let n = pi.n();
    let gdg = SignedPerm::gamma_delta_gamma_inv(n);
    let half = pi.compose_unchecked(&SignedPerm::delta(n)).cycle_count() / 2;
    Ok(join_block_count(gdg.dense(), pi.dense()) as i32 + half as i32 - (n as i32 + 1))
}

fn real_terms_with_first(eps: &EpsilonVector, first: usize) -> TermTable {
    let n = eps.n();
    let mut table = TermTable::empty(n);
    let gdg = SignedPerm::gamma_delta_gamma_inv(n);
    let gdg = gdg.dense();
    let e = eps.to_perm();
    let e = e.dense();
    let mut pi_delta = vec![0u32; 2 * n];
    let mut conj = vec![0u32; 2 * n];
    let base = n as i32 + 1;
    for_each_pairing_with_first(n, false, first, |pi| {
        for i in 0..2 * n {
            pi_delta[i] = pi[(i + n) % (2 * n)];
            // επε; ε is an involution
            conj[i] = e[pi[e[i] as usize] as usize];
        }
        debug_assert!(count_cycles(&pi_delta).is_multiple_of(2));
        let half = (count_cycles(&pi_delta) / 2) as i32;
        let a = join_block_count(gdg, pi) as i32 + half - base;
        let b = join_block_count(gdg, &conj) as i32 + half - base;
        table.add((half as u32, a, b), 1);
    });
    table
}

/// Exponent table of the real expansion over pairings of `[±n]`.
pub fn real_term_table(eps: &EpsilonVector) -> Result<TermTable, EngineError> {
    let n = eps.n();
    check_word_len(n, PAIRING_CAP)?;

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let table = (1..2 * n)
            .into_par_iter()
            .map(|first| real_terms_with_first(eps, first))
            .reduce(|| TermTable::empty(n), TermTable::merge);
        Ok(table)
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((1..2 * n)
            .map(|first| real_terms_with_first(eps, first))
            .fold(TermTable::empty(n), TermTable::merge))
    }
}

/// `E(tr⊗tr(W^{(ε₁)} ⋯ W^{(εₙ)}))` for real Gaussian entries, where
/// `W^{(1)} = W` and `W^{(-1)} = W^Γ`.
pub fn exact_moment_real(eps: &EpsilonVector, dims: &Dims) -> Result<ExactValue, EngineError> {
    Ok(real_term_table(eps)?.evaluate(dims))
}

/// Term table of `word` in either case; real words must use `w` and `r` only.
pub fn term_table(case: Case, word: &Word) -> Result<TermTable, EngineError> {
    match case {
        Case::Complex => complex_term_table(word),
        Case::Real => real_term_table(&word.real_epsilons()?),
    }
}

pub fn exact_moment(case: Case, word: &Word, dims: &Dims) -> Result<ExactValue, EngineError> {
    Ok(term_table(case, word)?.evaluate(dims))
}

/// Limit of `E(tr⊗tr(word))` for complex Wishart matrices.
pub fn limit_moment(word: &Word, limit: &RegimeLimit) -> Result<ExactValue, EngineError> {
    Ok(complex_term_table(word)?.limit(limit))
}

/// Limit of `E(tr⊗tr(word))` for real Wishart matrices.
pub fn limit_moment_real(eps: &EpsilonVector, limit: &RegimeLimit) -> Result<ExactValue, EngineError> {
    Ok(real_term_table(eps)?.limit(limit))
}

/// One mixed cumulant of the limit family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessEntry {
    pub word: Word,
    pub cumulant: ExactValue,
}

#[derive(Clone, Debug)]
pub struct FreenessReport {
    pub case: Case,
    pub alphabet: Vec<Label>,
    pub max_len: usize,
    pub limit: RegimeLimit,
    pub entries: Vec<FreenessEntry>,
}

impl FreenessReport {
    /// True when every reported mixed cumulant vanishes.
    pub fn all_vanish(&self) -> bool {
        self.entries.iter().all(|e| e.cumulant.is_zero())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &FreenessEntry> {
        self.entries.iter().filter(|e| !e.cumulant.is_zero())
    }

    pub fn get(&self, word: &Word) -> Option<&ExactValue> {
        self.entries
            .iter()
            .find(|e| &e.word == word)
            .map(|e| &e.cumulant)
    }
}

/// Mixed free cumulants of the limit family over every word of length
/// `2..=max_len` in `alphabet` that uses at least two distinct letters.
pub fn freeness_report(
    case: Case,
    alphabet: &[Label],
    max_len: usize,
    limit: &RegimeLimit,
) -> Result<FreenessReport, EngineError> {
    let mut alphabet: Vec<Label> = alphabet.to_vec();
    alphabet.sort();
    alphabet.dedup();
    if alphabet.is_empty() {
        return Err(WordError::Empty.into());
    }
    check_word_len(max_len, PERM_CAP)?;
    if case == Case::Real {
        Word::new(alphabet.clone())?.real_epsilons()?;
    }
    let moment = |letters: &[Label]| -> BigRational {
        let word = Word::new(letters.to_vec()).expect("nonempty subword");
        term_table(case, &word)
            .expect("subword within cap and alphabet")
            .limit(limit)
            .into_rational()
    };
    let mut cumulants = MixedCumulants::new(moment);
    let mut entries = Vec::new();
    for len in 2..=max_len {
        let total = alphabet.len().pow(len as u32);
        for code in 0..total {
            let mut rest = code;
            let mut letters = vec![alphabet[0]; len];
            for slot in letters.iter_mut().rev() {
                *slot = alphabet[rest % alphabet.len()];
                rest /= alphabet.len();
            }
            if letters.iter().all(|l| *l == letters[0]) {
                continue;
            }
            let kappa = cumulants.cumulant(&letters)?;
            entries.push(FreenessEntry {
                word: Word::new(letters)?,
                cumulant: kappa.into(),
            });
        }
    }
    Ok(FreenessReport {
        case,
        alphabet,
        max_len,
        limit: limit.clone(),
        entries,
    })
}
