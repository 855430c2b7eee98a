//! Exact rational helpers on top of [`num::BigRational`].

use num::{BigInt, BigRational, Integer, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn pow(base: u8, exp: usize) -> BigInt {
    num::pow(BigInt::from(base), exp)
}

/// `num/den` with the denominator always present, e.g. `0/1`, `-2/3`.
pub fn fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `a/b`, `a` or a finite decimal such as `-0.25`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let err = |message: &str| Error::Literal {
        literal: text.to_string(),
        message: message.to_string(),
    };
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((i, f)) = t.split_once('.') {
        let negative = i.starts_with('-');
        let whole: BigInt = match i.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            s => s.parse().map_err(|_| err("bad integer part"))?,
        };
        if !f.chars().all(|c| c.is_ascii_digit()) {
            return Err(err("bad fractional part"));
        }
        let frac: BigInt = if f.is_empty() {
            BigInt::zero()
        } else {
            f.parse().map_err(|_| err("bad fractional part"))?
        };
        let scale = num::pow(BigInt::from(10), f.len());
        let q = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = t.parse().map_err(|_| err("not a rational"))?;
    Ok(Rational::from_integer(n))
}

/// Decimal rendering rounded half away from zero to `places` digits.
pub fn decimal(q: &Rational, places: usize) -> String {
    let scale = num::pow(BigInt::from(10), places);
    let scaled = q.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_string();
    format!("{sign}{int_part}.{}{frac}", "0".repeat(places - frac.len()))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}
