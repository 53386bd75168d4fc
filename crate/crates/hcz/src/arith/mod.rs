//! Exact scalar tower: rationals, Gaussian rationals, polynomials and
//! rational functions in one variable, and the symbolic Gamma algebra.

mod gamma;
mod gaussian;
mod poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub use gamma::{GammaExpr, GammaFactor, GammaRecord, GammaRecordEntry, Orientation};
pub use gaussian::GaussianRational;
pub use poly::Poly;
pub use ratfunc::RatFunc;

use crate::error::{HczError, Result};

pub type Rational = BigRational;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses "p", "p/q" or a finite decimal such as "0.5" or "-2.25".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(HczError::Parse(format!("bad decimal '{s}'")));
        }
        let neg = int.starts_with('-');
        let int_part = int.trim_start_matches(['-', '+']);
        let whole = if int_part.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| HczError::Parse(format!("bad decimal '{s}'")))?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let f = BigInt::from_str(frac).map_err(|_| HczError::Parse(format!("bad decimal '{s}'")))?;
        let v = Rational::new(whole * &scale + f, scale);
        return Ok(if neg { -v } else { v });
    }
    Rational::from_str(s).map_err(|_| HczError::Parse(format!("bad rational '{s}'")))
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // huge numerators and denominators: scale down together
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn to_i64(x: &Rational) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Nonnegative remainder of an integral rational modulo 2.
pub fn parity(x: &Rational) -> Option<u8> {
    if !is_integer(x) {
        return None;
    }
    let two = BigInt::from(2);
    let r = ((x.numer() % &two) + &two) % &two;
    Some(if r.is_zero() { 0 } else { 1 })
}

pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

/// Coefficient field for polynomials and rational functions.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_rational(q: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(qi(n))
    }
}

impl Field for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }
}

/// Fields containing a square root of -1.
pub trait HasI: Field {
    fn i() -> Self;
}
