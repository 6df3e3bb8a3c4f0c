//! Exact non-negative rationals.
//!
//! Every distance, threshold and ratio in the crate is a [`Fraction`]. The
//! textual form is always `a/b` (also for integers, e.g. `1/1`), which is
//! what the JSON reports and the command line use.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative rational number kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(Ratio<u128>);

impl Fraction {
    pub const ZERO: Fraction = Fraction(Ratio::new_raw(0, 1));
    pub const ONE: Fraction = Fraction(Ratio::new_raw(1, 1));

    /// Panics if `den == 0`.
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "zero denominator");
        Fraction(Ratio::new(num, den))
    }

    pub fn try_new(num: u128, den: u128) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Fraction(Ratio::new(num, den)))
    }

    pub fn from_integer(n: u128) -> Self {
        Fraction(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> u128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    /// `1 - self`. Panics when `self > 1`.
    pub fn complement(self) -> Self {
        Fraction::ONE - self
    }

    pub fn pow(self, exp: u32) -> Self {
        let mut acc = Fraction::ONE;
        for _ in 0..exp {
            acc = acc * self;
        }
        acc
    }

    /// Smallest integer `>= self`.
    pub fn ceil(self) -> u128 {
        let (n, d) = (self.numer(), self.denom());
        n.div_ceil(d)
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn max(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        if rhs > self {
            None
        } else {
            Some(Fraction(self.0 - rhs.0))
        }
    }
}

impl Default for Fraction {
    fn default() -> Self {
        Fraction::ZERO
    }
}

impl Add for Fraction {
    type Output = Fraction;
    fn add(self, rhs: Self) -> Self {
        Fraction(self.0 + rhs.0)
    }
}

/// Panics if the result would be negative.
impl Sub for Fraction {
    type Output = Fraction;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs)
            .unwrap_or_else(|| panic!("negative fraction: {self} - {rhs}"))
    }
}

impl Mul for Fraction {
    type Output = Fraction;
    fn mul(self, rhs: Self) -> Self {
        Fraction(self.0 * rhs.0)
    }
}

impl Div for Fraction {
    type Output = Fraction;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero fraction");
        Fraction(self.0 / rhs.0)
    }
}

impl Mul<u128> for Fraction {
    type Output = Fraction;
    fn mul(self, rhs: u128) -> Self {
        Fraction(self.0 * Ratio::from_integer(rhs))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Accepts `a/b` or a bare non-negative integer `a`. Decimals are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            let t = t.trim();
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("`{s}` is not a fraction a/b")));
            }
            t.parse::<u128>()
                .map_err(|e| Error::Parse(format!("`{s}`: {e}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Fraction::try_new(parse(n)?, parse(d)?),
            None => Ok(Fraction::from_integer(parse(s)?)),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_displayed_as_a_over_b() {
        let f = Fraction::new(6, 8);
        assert_eq!(f.numer(), 3);
        assert_eq!(f.denom(), 4);
        assert_eq!(f.to_string(), "3/4");
        assert_eq!(Fraction::ONE.to_string(), "1/1");
        assert_eq!(Fraction::ZERO.to_string(), "0/1");
    }

    #[test]
    fn parses_fractions_and_integers_only() {
        assert_eq!("1/10".parse::<Fraction>().unwrap(), Fraction::new(1, 10));
        assert_eq!(" 2/4 ".parse::<Fraction>().unwrap(), Fraction::new(1, 2));
        assert_eq!("3".parse::<Fraction>().unwrap(), Fraction::from_integer(3));
        assert!("0.1".parse::<Fraction>().is_err());
        assert!("-1/2".parse::<Fraction>().is_err());
        assert!("1/0".parse::<Fraction>().is_err());
        assert!("".parse::<Fraction>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Fraction::new(1, 3);
        let b = Fraction::new(1, 4);
        assert_eq!(a + b, Fraction::new(7, 12));
        assert_eq!(a - b, Fraction::new(1, 12));
        assert_eq!(Fraction::ONE - (a.complement() * b.complement()), Fraction::new(1, 2));
        assert_eq!(Fraction::new(1, 2).pow(3), Fraction::new(1, 8));
        assert_eq!(Fraction::new(9, 4).ceil(), 3);
        assert_eq!(Fraction::new(8, 4).ceil(), 2);
        assert!(b.checked_sub(a).is_none());
    }

    #[test]
    fn serde_uses_string_form() {
        let json = serde_json::to_string(&Fraction::new(2, 3)).unwrap();
        assert_eq!(json, "\"2/3\"");
        let back: Fraction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Fraction::new(2, 3));
    }
}
