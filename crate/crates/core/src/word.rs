//! Words in `{W, W^⸦Γ, W^Γ, W^T}`, matrix dimensions and asymptotic regimes.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::exact::ExactValue;
use crate::perm::EpsilonVector;

/// One letter of a word. The pair `(ε, η)` records whether the block
/// (left) index and the in-block (right) index are transposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// `W`, `(1, 1)`
    Plain,
    /// `W^⸦Γ`, `(-1, 1)`
    LeftPt,
    /// `W^Γ`, `(1, -1)`
    RightPt,
    /// `W^T`, `(-1, -1)`
    FullT,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::Plain, Label::LeftPt, Label::RightPt, Label::FullT];

    pub fn eps(self) -> i8 {
        match self {
            Label::Plain | Label::RightPt => 1,
            Label::LeftPt | Label::FullT => -1,
        }
    }

    pub fn eta(self) -> i8 {
        match self {
            Label::Plain | Label::LeftPt => 1,
            Label::RightPt | Label::FullT => -1,
        }
    }

    pub fn from_signs(eps: i8, eta: i8) -> Label {
        match (eps < 0, eta < 0) {
            (false, false) => Label::Plain,
            (true, false) => Label::LeftPt,
            (false, true) => Label::RightPt,
            (true, true) => Label::FullT,
        }
    }

    /// Label of the transpose: `(W^{(ε,η)})^T = W^{(-ε,-η)}`.
    pub fn transposed(self) -> Label {
        Label::from_signs(-self.eps(), -self.eta())
    }

    /// Exchange the roles of the two tensor factors.
    pub fn swap_factors(self) -> Label {
        Label::from_signs(self.eta(), self.eps())
    }

    pub fn token(self) -> char {
        match self {
            Label::Plain => 'w',
            Label::LeftPt => 'l',
            Label::RightPt => 'r',
            Label::FullT => 't',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Plain => "plain",
            Label::LeftPt => "left_pt",
            Label::RightPt => "right_pt",
            Label::FullT => "full_t",
        }
    }

    pub fn from_token(tok: &str) -> Option<Label> {
        match tok.to_ascii_lowercase().as_str() {
            "w" => Some(Label::Plain),
            "l" => Some(Label::LeftPt),
            "r" => Some(Label::RightPt),
            "t" => Some(Label::FullT),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("unknown token {token:?} at position {position}")]
    UnknownToken { token: String, position: usize },
    #[error("label {label} at position {position} is not admitted for real Wishart words (use w or r)")]
    NotReal { label: &'static str, position: usize },
}

/// A nonempty product `W^{(ε₁,η₁)} ⋯ W^{(εₙ,ηₙ)}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Label>,
}

impl Word {
    pub fn new(letters: Vec<Label>) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        Ok(Word { letters })
    }

    pub fn repeat(label: Label, n: usize) -> Result<Self, WordError> {
        Word::new(alloc::vec![label; n])
    }

    pub fn letters(&self) -> &[Label] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn epsilons(&self) -> EpsilonVector {
        EpsilonVector::from_signs_unchecked(self.letters.iter().map(|l| l.eps()).collect())
    }

    pub fn etas(&self) -> EpsilonVector {
        EpsilonVector::from_signs_unchecked(self.letters.iter().map(|l| l.eta()).collect())
    }

    /// Sign vector of a real word: `w ↦ 1`, `r ↦ -1`.
    pub fn real_epsilons(&self) -> Result<EpsilonVector, WordError> {
        let signs = self
            .letters
            .iter()
            .enumerate()
            .map(|(i, l)| match l {
                Label::Plain => Ok(1),
                Label::RightPt => Ok(-1),
                other => Err(WordError::NotReal {
                    label: other.name(),
                    position: i + 1,
                }),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        Ok(EpsilonVector::from_signs_unchecked(signs))
    }

    /// The real word with sign vector `eps`.
    pub fn from_real_epsilons(eps: &EpsilonVector) -> Word {
        Word {
            letters: eps
                .signs()
                .iter()
                .map(|&s| if s > 0 { Label::Plain } else { Label::RightPt })
                .collect(),
        }
    }

    /// Cyclic rotation by `k` letters to the left.
    pub fn rotated(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        let shift = k % letters.len();
        letters.rotate_left(shift);
        Word { letters }
    }

    /// Word of the transposed product: reversed, each letter transposed.
    pub fn transposed(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.transposed()).collect(),
        }
    }

    pub fn swap_factors(&self) -> Word {
        Word {
            letters: self.letters.iter().map(|l| l.swap_factors()).collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", l.token())?;
        }
        Ok(())
    }
}

/// Comma-separated tokens from `{w, l, r, t}`, case-insensitive, whitespace
/// ignored.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(WordError::Empty);
        }
        let letters = cleaned
            .split(',')
            .enumerate()
            .map(|(i, tok)| {
                Label::from_token(tok).ok_or_else(|| WordError::UnknownToken {
                    token: tok.to_string(),
                    position: i + 1,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(letters)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dimensions must be positive and d1*d2 must fit in 63 bits (d1={d1}, d2={d2}, p={p})")]
pub struct DimsError {
    pub d1: u64,
    pub d2: u64,
    pub p: u64,
}

/// `d₁` blocks of size `d₂`, and `p` columns of each Gaussian block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dims {
    d1: u64,
    d2: u64,
    p: u64,
}

impl Dims {
    /// All three must be positive, and `d₁d₂` and `p` must fit in an `i64`.
    pub fn new(d1: u64, d2: u64, p: u64) -> Result<Self, DimsError> {
        let fits = d1
            .checked_mul(d2)
            .is_some_and(|s| s <= i64::MAX as u64 && p <= i64::MAX as u64);
        if d1 == 0 || d2 == 0 || p == 0 || !fits {
            return Err(DimsError { d1, d2, p });
        }
        Ok(Dims { d1, d2, p })
    }

    pub fn d1(&self) -> u64 {
        self.d1
    }

    pub fn d2(&self) -> u64 {
        self.d2
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Side length `d₁d₂` of `W`.
    pub fn size(&self) -> usize {
        self.d1 as usize * self.d2 as usize
    }

    /// `p / (d₁d₂)`.
    pub fn c_tilde(&self) -> ExactValue {
        ExactValue::ratio(self.p as i64, self.d1 as i64 * self.d2 as i64)
    }
}

/// How `d₁`, `d₂` behave as `p/(d₁d₂) → c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    BothGrow,
    D1Fixed(u32),
    D2Fixed(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegimeError {
    #[error("c must be strictly positive, got {0}")]
    NonPositiveC(String),
    #[error("fixed dimension must be at least 1")]
    ZeroDimension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegimeLimit {
    regime: Regime,
    c: ExactValue,
}

impl RegimeLimit {
    pub fn new(regime: Regime, c: ExactValue) -> Result<Self, RegimeError> {
        if !c.is_positive() {
            return Err(RegimeError::NonPositiveC(c.to_string()));
        }
        if matches!(regime, Regime::D1Fixed(0) | Regime::D2Fixed(0)) {
            return Err(RegimeError::ZeroDimension);
        }
        Ok(RegimeLimit { regime, c })
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn c(&self) -> &ExactValue {
        &self.c
    }
}

/// Complex or real Gaussian entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Complex,
    Real,
}
