//! Arbitrary-precision rational values.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational in canonical reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactValue(BigRational);

impl ExactValue {
    pub fn new(value: BigRational) -> Self {
        ExactValue(value)
    }

    /// `num / den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        ExactValue(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(value: i64) -> Self {
        ExactValue(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        ExactValue(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactValue(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, exp: i32) -> Self {
        ExactValue(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded (half away from zero) to `digits` significant
    /// digits; trailing zeros dropped, scientific notation outside
    /// `1e-5 ..= 1e{digits}`.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.0.is_zero() {
            return "0".to_string();
        }
        let negative = self.0.is_negative();
        let a = self.0.numer().abs();
        let b = self.0.denom().clone();
        let ten = BigInt::from(10u32);
        // e = floor(log10(a / b))
        let mut e = a.to_string().len() as i64 - b.to_string().len() as i64;
        loop {
            let (lhs, rhs) = scaled_pair(&a, &b, e);
            if lhs < rhs {
                e -= 1;
                continue;
            }
            let (lhs1, rhs1) = scaled_pair(&a, &b, e + 1);
            if lhs1 >= rhs1 {
                e += 1;
                continue;
            }
            break;
        }
        let shift = digits as i64 - 1 - e;
        let (num, den) = if shift >= 0 {
            (a * num_traits::pow(ten.clone(), shift as usize), b)
        } else {
            (a, b * num_traits::pow(ten.clone(), (-shift) as usize))
        };
        let mut mantissa = (num * 2u32 + &den) / (den * 2u32);
        if mantissa == num_traits::pow(ten.clone(), digits) {
            mantissa /= &ten;
            e += 1;
        }
        let text = mantissa.to_string();
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        if e >= -5 && e < digits as i64 {
            if e >= 0 {
                let int_len = e as usize + 1;
                out.push_str(&text[..int_len]);
                let frac = text[int_len..].trim_end_matches('0');
                if !frac.is_empty() {
                    out.push('.');
                    out.push_str(frac);
                }
            } else {
                out.push_str("0.");
                for _ in 0..(-e - 1) {
                    out.push('0');
                }
                out.push_str(text.trim_end_matches('0'));
            }
        } else {
            out.push_str(&text[..1]);
            let frac = text[1..].trim_end_matches('0');
            if !frac.is_empty() {
                out.push('.');
                out.push_str(frac);
            }
            out.push('e');
            out.push_str(&e.to_string());
        }
        out
    }
}

/// `(a, b·10^e)` for `e ≥ 0`, `(a·10^{-e}, b)` otherwise.
fn scaled_pair(a: &BigInt, b: &BigInt, e: i64) -> (BigInt, BigInt) {
    let ten = BigInt::from(10u32);
    if e >= 0 {
        (a.clone(), b * num_traits::pow(ten, e as usize))
    } else {
        (a * num_traits::pow(ten, (-e) as usize), b.clone())
    }
}

impl From<BigRational> for ExactValue {
    fn from(v: BigRational) -> Self {
        ExactValue(v)
    }
}

impl From<ExactValue> for BigRational {
    fn from(v: ExactValue) -> Self {
        v.0
    }
}

impl From<i64> for ExactValue {
    fn from(v: i64) -> Self {
        ExactValue::integer(v)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseExactError(pub String);

/// Accepts `"a"`, `"a/b"` and finite decimals such as `"0.25"`.
impl FromStr for ExactValue {
    type Err = ParseExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseExactError(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(ExactValue(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if !int_digits.bytes().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            let mut all: Vec<u8> = int_digits.bytes().collect();
            all.extend(frac.bytes());
            let mag = BigInt::parse_bytes(if all.is_empty() { b"0" } else { &all }, 10)
                .ok_or_else(err)?;
            let den = num_traits::pow(BigInt::from(10u32), frac.len());
            let num = if negative { -mag } else { mag };
            return Ok(ExactValue(BigRational::new(num, den)));
        }
        let n: BigInt = t.parse().map_err(|_| err())?;
        Ok(ExactValue(BigRational::from_integer(n)))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactValue {
            type Output = ExactValue;
            fn $m(self, rhs: ExactValue) -> ExactValue {
                ExactValue(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactValue> for &'a ExactValue {
            type Output = ExactValue;
            fn $m(self, rhs: &'a ExactValue) -> ExactValue {
                ExactValue((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        ExactValue(-self.0)
    }
}

impl core::iter::Sum for ExactValue {
    fn sum<I: Iterator<Item = ExactValue>>(iter: I) -> Self {
        iter.fold(ExactValue::zero(), |a, b| a + b)
    }
}
