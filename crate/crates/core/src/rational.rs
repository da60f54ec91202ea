//! Exact rationals and their JSON form.
//!
//! Every density, ratio and certificate constant is a [`Rational`]. Decimal
//! values only appear when a report is rendered.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    BigRational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(n.into())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"a/b"`, `"a"` or a finite decimal such as `"0.125"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = if whole.is_empty() || whole == "-" { BigInt::zero() } else { whole.parse().ok()? };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().ok()?;
        let magnitude = whole.abs() * &scale + frac;
        let num = if negative { -magnitude } else { magnitude };
        return Some(BigRational::new(num, scale));
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Largest dyadic rational `1/2^j` (j ≥ 0) that is ≤ `r`, for `0 < r`.
pub fn dyadic_floor(r: &Rational) -> Rational {
    assert!(r.is_positive(), "dyadic_floor needs a positive input");
    let mut d = Rational::one();
    while &d > r {
        d /= int(2);
    }
    d
}

/// `{"num": .., "den": ..}` with integer fields, plus a decimal rendering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i128,
    pub den: i128,
    #[serde(default, skip_deserializing)]
    pub decimal: f64,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numer().to_i128().expect("numerator exceeds 128 bits"),
            den: r.denom().to_i128().expect("denominator exceeds 128 bits"),
            decimal: to_f64(r),
        }
    }
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    RationalJson::from(r).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let j = RationalJson::deserialize(d)?;
    if j.den == 0 {
        return Err(serde::de::Error::custom("zero denominator"));
    }
    Ok(ratio(j.num, j.den))
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(RationalJson::from).serialize(s)
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(r: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        r.iter().map(RationalJson::from).collect::<Vec<_>>().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse("1/4"), Some(ratio(1, 4)));
        assert_eq!(parse("0.125"), Some(ratio(1, 8)));
        assert_eq!(parse("3"), Some(int(3)));
        assert_eq!(parse("-0.5"), Some(ratio(-1, 2)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn dyadic_floor_rounds_down() {
        assert_eq!(dyadic_floor(&ratio(1, 12)), ratio(1, 16));
        assert_eq!(dyadic_floor(&ratio(1, 8)), ratio(1, 8));
        assert_eq!(dyadic_floor(&ratio(3, 2)), int(1));
    }

    #[test]
    fn json_shape() {
        #[derive(Serialize, Deserialize)]
        struct W(#[serde(with = "super")] Rational);
        let s = serde_json::to_string(&W(ratio(6, 8))).unwrap();
        assert!(s.contains("\"num\":3") && s.contains("\"den\":4"), "{s}");
        let back: W = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, ratio(3, 4));
    }
}
