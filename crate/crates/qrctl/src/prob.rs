//! Probability values that stay exact when the input was exact.
//!
//! Model files may give transition probabilities either as JSON numbers or as
//! fraction strings like `"1/2"`. Fractions (and integer literals) are kept as
//! exact rationals so that distribution sums can be checked without a
//! tolerance and so that serialization round-trips are lossless; JSON numbers
//! become floats and are checked with a small tolerance instead.

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A transition probability: an exact fraction or a floating-point number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Prob {
    /// Exact fraction `numerator / denominator`, kept normalized with a
    /// positive denominator and `gcd(num, den) == 1`.
    Ratio(i64, i64),
    /// Floating-point probability.
    Float(f64),
}

impl Prob {
    pub const ZERO: Prob = Prob::Ratio(0, 1);
    pub const ONE: Prob = Prob::Ratio(1, 1);

    /// Builds a normalized exact fraction.
    ///
    /// # Panics
    /// Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Prob {
        assert!(den != 0, "fraction with zero denominator");
        let sign = if (num < 0) ^ (den < 0) { -1 } else { 1 };
        let (n, d) = (num.unsigned_abs() as i128, den.unsigned_abs() as i128);
        let g = gcd(n, d).max(1);
        Prob::Ratio(sign * (n / g) as i64, (d / g) as i64)
    }

    /// Numeric value of the probability.
    pub fn value(self) -> f64 {
        match self {
            Prob::Ratio(n, d) => n as f64 / d as f64,
            Prob::Float(x) => x,
        }
    }

    /// True when this value carries an exact representation.
    pub fn is_exact(self) -> bool {
        matches!(self, Prob::Ratio(..))
    }

    /// Sum of two probabilities. Exact when both sides are exact and the
    /// result fits; falls back to floating point otherwise.
    pub fn add(self, other: Prob) -> Prob {
        match (self, other) {
            (Prob::Ratio(an, ad), Prob::Ratio(bn, bd)) => {
                let num = an as i128 * bd as i128 + bn as i128 * ad as i128;
                let den = ad as i128 * bd as i128;
                let g = gcd(num, den).max(1);
                let (num, den) = (num / g, den / g);
                match (i64::try_from(num), i64::try_from(den)) {
                    (Ok(n), Ok(d)) => Prob::Ratio(n, d),
                    _ => Prob::Float(num as f64 / den as f64),
                }
            }
            _ => Prob::Float(self.value() + other.value()),
        }
    }

    /// Semantic equality: `1/2` equals `0.5`.
    pub fn value_eq(self, other: Prob) -> bool {
        match (self, other) {
            (Prob::Ratio(an, ad), Prob::Ratio(bn, bd)) => (an, ad) == (bn, bd),
            _ => self.value() == other.value(),
        }
    }

    /// Parses `"p/q"` fractions, integer literals, and decimal literals.
    pub fn parse(text: &str) -> Result<Prob, String> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let n: i64 = num
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in `{text}`"))?;
            let d: i64 = den
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in `{text}`"))?;
            if d == 0 {
                return Err(format!("zero denominator in `{text}`"));
            }
            Ok(Prob::ratio(n, d))
        } else if let Ok(n) = text.parse::<i64>() {
            Ok(Prob::Ratio(n, 1))
        } else if let Ok(x) = text.parse::<f64>() {
            Ok(Prob::Float(x))
        } else {
            Err(format!("`{text}` is not a probability"))
        }
    }
}

impl fmt::Display for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prob::Ratio(n, 1) => write!(f, "{n}"),
            Prob::Ratio(n, d) => write!(f, "{n}/{d}"),
            Prob::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Prob {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Prob::Ratio(..) => serializer.serialize_str(&self.to_string()),
            Prob::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

struct ProbVisitor;

impl Visitor<'_> for ProbVisitor {
    type Value = Prob;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a number or a fraction string like \"1/2\"")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Prob, E> {
        i64::try_from(v)
            .map(|n| Prob::Ratio(n, 1))
            .map_err(|_| E::custom("integer probability out of range"))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Prob, E> {
        Ok(Prob::Ratio(v, 1))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Prob, E> {
        Ok(Prob::Float(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Prob, E> {
        Prob::parse(v).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Prob {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Prob, D::Error> {
        deserializer.deserialize_any(ProbVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_fractions() {
        assert_eq!(Prob::ratio(2, 4), Prob::Ratio(1, 2));
        assert_eq!(Prob::ratio(3, 3), Prob::Ratio(1, 1));
        assert_eq!(Prob::ratio(-1, -2), Prob::Ratio(1, 2));
    }

    #[test]
    fn exact_sums_stay_exact() {
        let half = Prob::ratio(1, 2);
        let third = Prob::ratio(1, 3);
        assert_eq!(half.add(third), Prob::Ratio(5, 6));
        assert_eq!(half.add(half), Prob::ONE);
        assert!(!half.add(Prob::Float(0.5)).is_exact());
    }

    #[test]
    fn parses_fractions_ints_and_decimals() {
        assert_eq!(Prob::parse("1/2"), Ok(Prob::Ratio(1, 2)));
        assert_eq!(Prob::parse("1"), Ok(Prob::Ratio(1, 1)));
        assert_eq!(Prob::parse("0.25"), Ok(Prob::Float(0.25)));
        assert!(Prob::parse("x/2").is_err());
        assert!(Prob::parse("1/0").is_err());
    }

    #[test]
    fn display_round_trips_through_parse() {
        for p in [Prob::ratio(1, 2), Prob::ratio(7, 3), Prob::Ratio(1, 1)] {
            assert_eq!(Prob::parse(&p.to_string()), Ok(p));
        }
    }

    #[test]
    fn json_round_trip() {
        let half: Prob = serde_json::from_str("\"1/2\"").unwrap();
        assert_eq!(half, Prob::Ratio(1, 2));
        assert_eq!(serde_json::to_string(&half).unwrap(), "\"1/2\"");
        let num: Prob = serde_json::from_str("0.5").unwrap();
        assert_eq!(num, Prob::Float(0.5));
        let one: Prob = serde_json::from_str("1").unwrap();
        assert_eq!(one, Prob::Ratio(1, 1));
        assert_eq!(serde_json::to_string(&one).unwrap(), "\"1\"");
    }

    #[test]
    fn value_eq_crosses_representations() {
        assert!(Prob::ratio(1, 2).value_eq(Prob::Float(0.5)));
        assert!(!Prob::ratio(1, 2).value_eq(Prob::Float(0.51)));
    }
}
