//! Exact fractions for thresholds such as `νn`, `(1/2 − ε)n` and `γn²`.
//!
//! Parameters arrive as decimal strings ("0.05") or ratios ("1/16") and are
//! kept as exact rationals so that every degree comparison is reproducible.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(Ratio<i64>);

impl Fraction {
    pub fn new(num: i64, den: i64) -> Self {
        Fraction(Ratio::new(num, den))
    }

    pub fn zero() -> Self {
        Fraction(Ratio::zero())
    }

    pub fn one() -> Self {
        Fraction(Ratio::one())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    /// True when `0 < self < 1`.
    pub fn is_proper(&self) -> bool {
        self.0 > Ratio::zero() && self.0 < Ratio::one()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `self · n` compared against an integer count: `count ≥ self·n`.
    pub fn le_count(&self, n: usize, count: usize) -> bool {
        (count as i128) * (self.denom() as i128) >= (self.numer() as i128) * (n as i128)
    }

    /// `count ≤ self·n`.
    pub fn ge_count(&self, n: usize, count: usize) -> bool {
        (count as i128) * (self.denom() as i128) <= (self.numer() as i128) * (n as i128)
    }

    /// `⌊self · n⌋`, saturating at zero.
    pub fn floor_times(&self, n: usize) -> usize {
        let v = (self.numer() as i128 * n as i128).div_euclid(self.denom() as i128);
        v.max(0) as usize
    }

    /// `⌈self · n⌉`, saturating at zero.
    pub fn ceil_times(&self, n: usize) -> usize {
        let num = self.numer() as i128 * n as i128;
        let den = self.denom() as i128;
        let v = num.div_euclid(den) + i128::from(num.rem_euclid(den) != 0);
        v.max(0) as usize
    }

    pub fn mul(self, other: Fraction) -> Fraction {
        Fraction(self.0 * other.0)
    }

    pub fn add(self, other: Fraction) -> Fraction {
        Fraction(self.0 + other.0)
    }

    pub fn sub(self, other: Fraction) -> Fraction {
        Fraction(self.0 - other.0)
    }

    pub fn div_int(self, k: i64) -> Fraction {
        Fraction(self.0 / k)
    }

    pub fn mul_int(self, k: i64) -> Fraction {
        Fraction(self.0 * k)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("not a fraction: {s:?}"));
        if let Some((a, b)) = s.split_once('/') {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if b == 0 {
                return Err(bad());
            }
            return Ok(Fraction::new(a, b));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if frac_part.len() > 15 {
            return Err(bad());
        }
        let den = 10i64.pow(frac_part.len() as u32);
        let ip: i64 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| bad())? };
        let fp: i64 = if frac_part.is_empty() { 0 } else { frac_part.parse().map_err(|_| bad())? };
        let num = ip.checked_mul(den).and_then(|v| v.checked_add(fp)).ok_or_else(bad)?;
        Ok(Fraction::new(if neg { -num } else { num }, den))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            S(String),
            F(f64),
        }
        match Repr::deserialize(d)? {
            Repr::S(s) => s.parse().map_err(serde::de::Error::custom),
            // JSON numbers go through their shortest decimal rendering.
            Repr::F(v) => format!("{v}").parse().map_err(serde::de::Error::custom),
        }
    }
}
