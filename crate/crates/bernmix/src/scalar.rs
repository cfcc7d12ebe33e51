//! Dual-mode arithmetic: every quantity in this crate is computed either in
//! exact rational arithmetic ([`Rational`]) or in double precision (`f64`).
//!
//! The mode is chosen at construction time by picking the scalar type and is
//! never switched silently. Exact mode is the default for anything built from
//! decimal strings (CLI inputs, serialized measures), since a decimal string
//! is always a rational number.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = BigRational;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The scalar abstraction shared by all operations.
///
/// `EXACT` marks whether arithmetic in this type is free of rounding;
/// tolerances in callers are chosen accordingly (usually zero in exact mode).
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Sized
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Embed an `f64`. Every finite double is a dyadic rational, so this is
    /// lossless in both modes.
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn powu(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Serialized form: decimal string where possible, `p/q` otherwise.
    fn wire(&self) -> String;
    /// Parse the serialized form (decimal, integer, exponent, or `p/q`).
    fn parse_wire(s: &str) -> Result<Self, Error>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn powu(&self, k: u32) -> Self {
        self.powi(k as i32)
    }
    fn wire(&self) -> String {
        format!("{self}")
    }
    fn parse_wire(s: &str) -> Result<Self, Error> {
        if let Some((num, den)) = s.split_once('/') {
            let n: f64 = num
                .trim()
                .parse()
                .map_err(|_| Error::ParseNumber(s.to_string()))?;
            let d: f64 = den
                .trim()
                .parse()
                .map_err(|_| Error::ParseNumber(s.to_string()))?;
            if d == 0.0 {
                return Err(Error::ParseNumber(s.to_string()));
            }
            return Ok(n / d);
        }
        s.trim()
            .parse()
            .map_err(|_| Error::ParseNumber(s.to_string()))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        rat(num, den)
    }
    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite f64")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn wire(&self) -> String {
        match terminating_decimal(self) {
            Some(d) => d,
            None => format!("{self}"),
        }
    }
    fn parse_wire(s: &str) -> Result<Self, Error> {
        parse_rational(s)
    }
}

/// Parse a rational from `p/q`, an integer, or a decimal with optional
/// exponent (`0.25`, `-3`, `1.5e-3`).
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let err = || Error::ParseNumber(s.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| err())?;
        let d: BigInt = den.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let n: BigInt = digits.parse().map_err(|_| err())?;
    let shift = frac_part.len() as i32 - exp;
    let value = if shift >= 0 {
        Rational::new(n, BigInt::from(10u32).pow(shift as u32))
    } else {
        Rational::from_integer(n * BigInt::from(10u32).pow((-shift) as u32))
    };
    Ok(value)
}

/// Exact decimal expansion if the reduced denominator is of the form 2^a·5^b.
fn terminating_decimal(r: &Rational) -> Option<String> {
    let mut den = r.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let places = twos.max(fives);
    Some(decimal_string(r, places))
}

/// Render `r` with exactly `places` digits after the point, rounding
/// half-to-even on the exact rational value.
pub fn decimal_string(r: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = r * Rational::from_integer(scale.clone());
    let rounded = round_half_even(&scaled);
    let negative = rounded.is_negative();
    let mag = Signed::abs(&rounded);
    let digits = mag.to_string();
    let body = if places == 0 {
        digits
    } else {
        let places = places as usize;
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let split = padded.len() - places;
        format!("{}.{}", &padded[..split], &padded[split..])
    };
    if negative && body.chars().any(|c| c.is_ascii_digit() && c != '0') {
        format!("-{body}")
    } else {
        body
    }
}

/// Render `r` as a percentage with one decimal (e.g. `9.3%`), half-even.
pub fn percent_string(r: &Rational) -> String {
    let hundred = Rational::from_integer(BigInt::from(100));
    format!("{}%", decimal_string(&(r * hundred), 1))
}

fn round_half_even(x: &Rational) -> BigInt {
    let floor = x.floor().to_integer();
    let frac = x - Rational::from_integer(floor.clone());
    let half = rat(1, 2);
    let odd = !(&floor % BigInt::from(2)).is_zero();
    if frac > half || (frac == half && odd) {
        floor + 1
    } else {
        floor
    }
}

/// Format a double with `sig` significant digits, shortest representation.
/// Deterministic across platforms; used for CSV output.
pub fn fmt_sig(x: f64, sig: u32) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let shift = sig as i32 - 1 - exponent;
    let rounded = if (-300..=300).contains(&shift) {
        let factor = 10f64.powi(shift);
        (x * factor).round() / factor
    } else {
        x
    };
    format!("{rounded}")
}
