//! Exact rationals over arbitrary-precision integers.
//!
//! Every volume, multiplicity and ratio in the crate is a [`Rational`];
//! nothing is ever routed through floating point except the labelled
//! decimal approximation used for display.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn as_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Decimal string with `digits` places, rounded toward zero. Display only.
pub fn approx_decimal(r: &Rational, digits: usize) -> String {
    let neg = r.is_negative();
    let abs = r.abs();
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (abs.numer() * &scale) / abs.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut s = String::new();
    if neg && !scaled.is_zero() {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        s.push('.');
        for _ in frac.len()..digits {
            s.push('0');
        }
        s.push_str(&frac);
    }
    s
}

/// Serialized form of a rational: exact numerator and denominator, plus a
/// decimal approximation that is explicitly labelled as such.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub num: String,
    pub den: String,
    pub approx: String,
}

impl From<&Rational> for RationalRecord {
    fn from(r: &Rational) -> Self {
        RationalRecord {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            approx: approx_decimal(r, 6),
        }
    }
}

impl RationalRecord {
    pub fn to_rational(&self) -> Option<Rational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(num, den))
    }
}

/// Field adapter: `#[serde(with = "crate::rational::as_record")]`.
pub mod as_record {
    use super::{Rational, RationalRecord};
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalRecord::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalRecord::deserialize(d)?
            .to_rational()
            .ok_or_else(|| D::Error::custom("invalid rational record"))
    }
}

/// Same as [`as_record`] for optional values, `null` when absent.
pub mod option_record {
    use super::{Rational, RationalRecord};
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(RationalRecord::from).serialize(s)
    }
}

/// `num/den` for non-integers, plain integer otherwise.
pub fn exact_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms() {
        let r = ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(approx_decimal(&ratio(1, 3), 4), "0.3333");
        assert_eq!(approx_decimal(&ratio(-7, 2), 2), "-3.50");
        assert_eq!(approx_decimal(&int(5), 0), "5");
        assert_eq!(approx_decimal(&ratio(4000, 3996), 6), "1.001001");
    }

    #[test]
    fn record_round_trip() {
        let r = ratio(-22, 7);
        let rec = RationalRecord::from(&r);
        assert_eq!(rec.num, "-22");
        assert_eq!(rec.den, "7");
        assert_eq!(rec.to_rational().unwrap(), r);
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(a in -10_000i64..10_000, b in 1i64..500, c in -10_000i64..10_000, d in 1i64..500) {
            let x = ratio(a, b);
            let y = ratio(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
            prop_assert!(x.denom() > &BigInt::from(0));
        }
    }
}
