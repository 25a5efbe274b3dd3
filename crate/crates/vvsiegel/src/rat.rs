//! Rational scaffolding: one big-rational type for everything exact, plus the
//! "p/q" string convention used by all JSON formats.

use crate::{Error, Result};
use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

/// Reduce into `[0, 1)`.
pub fn mod1(x: &Rat) -> Rat {
    let f = x - x.floor();
    if f.is_negative() {
        f + Rat::one()
    } else {
        f
    }
}

/// Reduce into `[0, m)` for a positive rational modulus `m`.
pub fn mod_pos(x: &Rat, m: &Rat) -> Rat {
    let q = (x / m).floor();
    x - q * m
}

/// Nearest integer, ties to even. Deterministic rounding for the symplectic
/// reduction steps.
pub fn round_half_even(x: &Rat) -> Int {
    let fl = x.floor().to_integer();
    let frac = x - Rat::from_integer(fl.clone());
    let half = rat(1, 2);
    if frac < half {
        fl
    } else if frac > half {
        fl + Int::one()
    } else if (&fl % int(2)).is_zero() {
        fl
    } else {
        fl + Int::one()
    }
}

pub fn to_f64(x: &Rat) -> f64 {
    // Big numerator/denominator pairs can individually overflow f64, so go
    // through a scaled conversion when needed.
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `p/q` string, `q` omitted when 1. `format_rat` and `parse_rat` round-trip.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadInput(format!("cannot parse rational '{s}'"));
    match s.split_once('/') {
        None => {
            let n: Int = s.trim().parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Denominator of a reduced rational as `i64` (errors on overflow).
pub fn denom_i64(x: &Rat) -> Result<i64> {
    x.denom().to_i64().ok_or(Error::Overflow)
}

pub fn to_i64(x: &Int) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    num::integer::lcm(a, b)
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    num::integer::gcd(a, b)
}

/// Sign as -1/0/1.
pub fn sign_of(x: &Rat) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
