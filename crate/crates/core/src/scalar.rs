//! Scalars for frieze arithmetic.
//!
//! Two scalar kinds are supported: exact arbitrary-precision rationals
//! ([`Rational`]) and binary64 floats. Everything generic in this crate is
//! written against [`Scalar`], which carries the comparison policy: exact
//! scalars compare exactly, floats compare with a relative tolerance.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Relative tolerance used wherever floating values are compared.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// `true` for exact arithmetic.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_f64_lossy(v: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs_value(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Equality up to `tol * max(1, scale)`; exact scalars ignore both.
    fn near(&self, other: &Self, tol: f64, scale: f64) -> bool;

    /// Sign of the value; magnitudes at or below `tol * scale` count as zero
    /// for floats.
    fn sign_with(&self, tol: f64, scale: f64) -> i8;

    /// `true` when the value should be treated as an exact zero divisor.
    fn is_effectively_zero(&self) -> bool;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64_lossy(v: f64) -> Self {
        Rational::from_float(v).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn near(&self, other: &Self, _tol: f64, _scale: f64) -> bool {
        self == other
    }

    fn sign_with(&self, _tol: f64, _scale: f64) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn is_effectively_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64_lossy(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn near(&self, other: &Self, tol: f64, scale: f64) -> bool {
        (self - other).abs() <= tol * scale.max(1.0)
    }

    fn sign_with(&self, tol: f64, scale: f64) -> i8 {
        if self.abs() <= tol * scale || *self == 0.0 {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }

    fn is_effectively_zero(&self) -> bool {
        self.abs() < f64::MIN_POSITIVE
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("cannot parse {0:?} as a rational (expected an integer or p/q)")]
    Syntax(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p/q"` or an integer token.
pub fn parse_rational(token: &str) -> Result<Rational, ParseRationalError> {
    let t = token.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| ParseRationalError::Syntax(token.to_owned()))?;
    let den = BigInt::from_str(den).map_err(|_| ParseRationalError::Syntax(token.to_owned()))?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(token.to_owned()));
    }
    Ok(Rational::new(num, den))
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(list: &str) -> Result<Vec<Rational>, ParseRationalError> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// `p/q`, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Wire form of a rational: numerator and denominator as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalRepr {
    fn from(r: &Rational) -> Self {
        RationalRepr {
            num: r.numer().to_str_radix(10),
            den: r.denom().to_str_radix(10),
        }
    }
}

impl TryFrom<&RationalRepr> for Rational {
    type Error = ParseRationalError;

    fn try_from(repr: &RationalRepr) -> Result<Self, Self::Error> {
        let num = BigInt::from_str_radix(repr.num.trim(), 10)
            .map_err(|_| ParseRationalError::Syntax(repr.num.clone()))?;
        let den = BigInt::from_str_radix(repr.den.trim(), 10)
            .map_err(|_| ParseRationalError::Syntax(repr.den.clone()))?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(format!("{}/{}", repr.num, repr.den)));
        }
        Ok(Rational::new(num, den))
    }
}

/// `#[serde(with = "rational_vec")]` for `Vec<Rational>` fields, using the
/// `{"num", "den"}` wire form.
pub mod rational_vec {
    use super::{Rational, RationalRepr};
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(RationalRepr::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let reprs = Vec::<RationalRepr>::deserialize(d)?;
        reprs
            .iter()
            .map(|r| Rational::try_from(r).map_err(D::Error::custom))
            .collect()
    }
}

/// Best rational approximation with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn rationalize(x: f64, max_den: u64) -> Rational {
    if !x.is_finite() {
        return Rational::zero();
    }
    let sign = if x < 0.0 { -1i64 } else { 1 };
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let a_int = a as u128;
        let p2 = a_int * p1 + p0;
        let q2 = a_int * q1 + q0;
        if q2 > max_den as u128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return Rational::zero();
    }
    Rational::new(BigInt::from(p1) * sign, BigInt::from(q1))
}
