//! Limit laws as free cumulant sequences, plus densities for the two laws
//! with a closed form.

use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use crate::exact::ExactValue;
use crate::nc::{moments_from_cumulants, CombError, CumulantSequence, MomentSequence};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LawError {
    #[error("parameter {name} must be strictly positive, got {value}")]
    NonPositive { name: &'static str, value: String },
    #[error("bn law requires d >= 1")]
    ZeroDimension,
    #[error("no closed-form density for {0}")]
    NoDensity(&'static str),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Comb(#[from] CombError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawSpec {
    /// All free cumulants equal to `c`.
    MarchenkoPastur { c: ExactValue },
    /// `κ₁ = κ₂ = c`, higher cumulants zero.
    ShiftedSemicircle { c: ExactValue },
    /// `κₙ = cd²` for even `n`, `cd` for odd `n`.
    BnLaw { d: u32, c: ExactValue },
    /// `κₙ = 2c` for even `n`, zero for odd `n`.
    EvenLaw2c { c: ExactValue },
    /// `κₙ = c₊ + (-1)ⁿ c₋`.
    MpFreeDifference { c_plus: ExactValue, c_minus: ExactValue },
}

fn positive(name: &'static str, value: ExactValue) -> Result<ExactValue, LawError> {
    if value.is_positive() {
        Ok(value)
    } else {
        Err(LawError::NonPositive {
            name,
            value: value.to_string(),
        })
    }
}

impl LawSpec {
    pub fn marchenko_pastur(c: ExactValue) -> Result<Self, LawError> {
        Ok(LawSpec::MarchenkoPastur { c: positive("c", c)? })
    }

    pub fn shifted_semicircle(c: ExactValue) -> Result<Self, LawError> {
        Ok(LawSpec::ShiftedSemicircle { c: positive("c", c)? })
    }

    pub fn bn_law(d: u32, c: ExactValue) -> Result<Self, LawError> {
        if d == 0 {
            return Err(LawError::ZeroDimension);
        }
        Ok(LawSpec::BnLaw { d, c: positive("c", c)? })
    }

    pub fn even_law_2c(c: ExactValue) -> Result<Self, LawError> {
        Ok(LawSpec::EvenLaw2c { c: positive("c", c)? })
    }

    /// `c₊ > 0`; `c₋ = 0` is admitted and gives `MP(c₊)`.
    pub fn mp_free_difference(c_plus: ExactValue, c_minus: ExactValue) -> Result<Self, LawError> {
        if c_minus.is_negative() {
            return Err(LawError::NonPositive {
                name: "c_minus",
                value: c_minus.to_string(),
            });
        }
        Ok(LawSpec::MpFreeDifference {
            c_plus: positive("c_plus", c_plus)?,
            c_minus,
        })
    }

    /// `mp_free_difference(cd(d+1)/2, cd(d-1)/2)`, which has the cumulants of
    /// `bn_law(d, c)`.
    pub fn bn_as_free_difference(d: u32, c: &ExactValue) -> Result<Self, LawError> {
        if d == 0 {
            return Err(LawError::ZeroDimension);
        }
        let cd = c * &ExactValue::integer(d as i64);
        let half = ExactValue::ratio(1, 2);
        let plus = &(&cd * &ExactValue::integer(d as i64 + 1)) * &half;
        let minus = &(&cd * &ExactValue::integer(d as i64 - 1)) * &half;
        LawSpec::mp_free_difference(plus, minus)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LawSpec::MarchenkoPastur { .. } => "marchenko_pastur",
            LawSpec::ShiftedSemicircle { .. } => "shifted_semicircle",
            LawSpec::BnLaw { .. } => "bn_law",
            LawSpec::EvenLaw2c { .. } => "even_law_2c",
            LawSpec::MpFreeDifference { .. } => "mp_free_difference",
        }
    }

    /// `κₙ`, 1-based.
    pub fn cumulant(&self, n: usize) -> ExactValue {
        let even = n.is_multiple_of(2);
        match self {
            LawSpec::MarchenkoPastur { c } => c.clone(),
            LawSpec::ShiftedSemicircle { c } => {
                if n <= 2 {
                    c.clone()
                } else {
                    ExactValue::zero()
                }
            }
            LawSpec::BnLaw { d, c } => {
                let d = ExactValue::integer(*d as i64);
                if even {
                    &(c * &d) * &d
                } else {
                    c * &d
                }
            }
            LawSpec::EvenLaw2c { c } => {
                if even {
                    c * &ExactValue::integer(2)
                } else {
                    ExactValue::zero()
                }
            }
            LawSpec::MpFreeDifference { c_plus, c_minus } => {
                if even {
                    c_plus + c_minus
                } else {
                    c_plus - c_minus
                }
            }
        }
    }
}

impl fmt::Display for LawSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawSpec::MarchenkoPastur { c }
            | LawSpec::ShiftedSemicircle { c }
            | LawSpec::EvenLaw2c { c } => write!(f, "{}(c={})", self.kind(), c),
            LawSpec::BnLaw { d, c } => write!(f, "bn_law(d={}, c={})", d, c),
            LawSpec::MpFreeDifference { c_plus, c_minus } => {
                write!(f, "mp_free_difference(c_plus={}, c_minus={})", c_plus, c_minus)
            }
        }
    }
}

/// `κ₁, ..., κ_N`.
pub fn cumulants(law: &LawSpec, order: usize) -> Result<CumulantSequence<ExactValue>, LawError> {
    Ok(CumulantSequence::new((1..=order).map(|n| law.cumulant(n)).collect())?)
}

/// Cumulants of `X₁ + X₂` for the free pair `X₁ ~ MP(2c)`, `X₂ ~ even_law_2c(c)`.
pub fn x1_plus_x2_cumulants(
    c: &ExactValue,
    order: usize,
) -> Result<CumulantSequence<ExactValue>, LawError> {
    let two_c = c * &ExactValue::integer(2);
    let x1 = LawSpec::marchenko_pastur(two_c)?;
    let x2 = LawSpec::even_law_2c(c.clone())?;
    Ok(CumulantSequence::new(
        (1..=order).map(|n| x1.cumulant(n) + x2.cumulant(n)).collect(),
    )?)
}

/// `m₁, ..., m_N` via the non-crossing moment-cumulant formula.
pub fn law_moments(law: &LawSpec, order: usize) -> Result<MomentSequence<ExactValue>, LawError> {
    let kappa = cumulants(law, order)?;
    let rational = kappa.map(|k| k.as_rational().clone());
    Ok(moments_from_cumulants(&rational, order)?.map(|m| ExactValue::new(m.clone())))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensitySample {
    pub t: f64,
    pub density: f64,
    /// Support `[a, b]` of the absolutely continuous part.
    pub a: f64,
    pub b: f64,
    /// Point mass at zero.
    pub atom: f64,
}

/// Support and atom of the absolutely continuous part.
pub fn support(law: &LawSpec) -> Result<(f64, f64, f64), LawError> {
    match law {
        LawSpec::MarchenkoPastur { c } => {
            let c = c.to_f64();
            let s = libm::sqrt(c);
            Ok(((1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s), (1.0 - c).max(0.0)))
        }
        LawSpec::ShiftedSemicircle { c } => {
            let c = c.to_f64();
            let s = libm::sqrt(c);
            Ok((c - 2.0 * s, c + 2.0 * s, 0.0))
        }
        other => Err(LawError::NoDensity(other.kind())),
    }
}

/// Density of the absolutely continuous part at `t`.
///
/// Marchenko–Pastur: `√((b-t)(t-a)) / (2πt)` with `a, b = (1 ∓ √c)²` and an
/// atom `max(0, 1-c)` at 0. Shifted semicircle: `√(4c - (t-c)²) / (2πc)`.
pub fn density(law: &LawSpec, t: f64) -> Result<DensitySample, LawError> {
    let (a, b, atom) = support(law)?;
    let pi = core::f64::consts::PI;
    let value = if t <= a || t >= b {
        0.0
    } else {
        match law {
            LawSpec::MarchenkoPastur { .. } => libm::sqrt((b - t) * (t - a)) / (2.0 * pi * t),
            LawSpec::ShiftedSemicircle { c } => {
                let c = c.to_f64();
                let x = t - c;
                libm::sqrt((4.0 * c - x * x).max(0.0)) / (2.0 * pi * c)
            }
            _ => unreachable!("support() rejects the other kinds"),
        }
    };
    Ok(DensitySample {
        t,
        density: value,
        a,
        b,
        atom,
    })
}

/// `∫ tⁿ dμ` by quadrature of the density plus the atom contribution.
pub fn numeric_moment(law: &LawSpec, n: u32, tol: f64) -> Result<f64, LawError> {
    let (a, b, atom) = support(law)?;
    let r = crate::quad::integrate(
        |t| {
            density(law, t).map(|s| s.density).unwrap_or(0.0) * libm::pow(t, n as f64)
        },
        a,
        b,
        tol,
        100_000,
    );
    Ok(r.value + if n == 0 { atom } else { 0.0 })
}

/// The two closed forms compared in the `d₁ = 2` block experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockPrediction {
    /// `φ(X₁X₂X₂X₁) = (2c)² + (2c)³`, the value forced by freeness.
    FreeX1X2,
    /// `φ(X₁X₂^⸦ΓX₂^⸦ΓX₁) = 2c + 3(2c)² + (2c)³`.
    LimitX1X2Gamma,
}

impl BlockPrediction {
    pub fn name(self) -> &'static str {
        match self {
            BlockPrediction::FreeX1X2 => "free_prediction_X1X2",
            BlockPrediction::LimitX1X2Gamma => "limit_X1X2Gamma",
        }
    }
}

impl FromStr for BlockPrediction {
    type Err = LawError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "free_prediction_X1X2" => Ok(BlockPrediction::FreeX1X2),
            "limit_X1X2Gamma" => Ok(BlockPrediction::LimitX1X2Gamma),
            other => Err(LawError::UnknownName(other.to_string())),
        }
    }
}

pub fn blockwise_prediction(which: BlockPrediction, c: &ExactValue) -> Result<ExactValue, LawError> {
    let x = &positive("c", c.clone())? * &ExactValue::integer(2);
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    Ok(match which {
        BlockPrediction::FreeX1X2 => x2 + x3,
        BlockPrediction::LimitX1X2Gamma => &(&x + &(&ExactValue::integer(3) * &x2)) + &x3,
    })
}
