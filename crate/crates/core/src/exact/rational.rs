//! Exact rationals over arbitrary-precision integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Every invariant and multiplicity in the crate is one of these.
/// `BigRational` keeps itself reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(d!)^3`, the number of ways to label the non-contracted ends of a degree-`d` curve.
pub fn label_factor(d: u32) -> BigInt {
    let f = factorial(d as u64);
    &f * &f * &f
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn is_canonical(q: &Rational) -> bool {
    use num_integer::Integer;
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}

/// Renders `num/den`, or just `num` for integers.
pub fn display(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `num/den` or a bare integer.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// JSON form of a rational: decimal strings, never floats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(q: &Rational) -> Self {
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Option<Rational> {
        let n: BigInt = self.num.parse().ok()?;
        let d: BigInt = self.den.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    }
}

/// `#[serde(with = "as_json")]` adapter writing a `Rational` as `RationalJson`.
pub mod as_json {
    use super::{Rational, RationalJson};
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalJson::deserialize(d)?
            .to_rational()
            .ok_or_else(|| D::Error::custom("invalid rational"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorials_and_label_factor() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(label_factor(2), BigInt::from(8));
        assert_eq!(label_factor(3), BigInt::from(216));
        assert_eq!(label_factor(4), BigInt::from(13824));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(8, 0), BigInt::one());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(20, 10), BigInt::from(184756));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(display(&ratio(2, 4)), "1/2");
        assert_eq!(display(&ratio(-6, 3)), "-2");
        assert_eq!(parse(" 3/12 "), Some(ratio(1, 4)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn json_roundtrip() {
        let q = ratio(-5, 15);
        let j = RationalJson::from(&q);
        assert_eq!(j.num, "-1");
        assert_eq!(j.den, "3");
        assert_eq!(j.to_rational(), Some(q));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..50).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn arithmetic_stays_canonical(a in small(), b in small(), c in small()) {
            prop_assert!(is_canonical(&(&a + &b)));
            prop_assert!(is_canonical(&(&a * &b)));
            prop_assert!(is_canonical(&(&a - &b)));
            if !b.is_zero() {
                prop_assert!(is_canonical(&(&a / &b)));
            }
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
