//! Exact membership degrees in the unit interval.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

/// Largest number of fractional digits accepted when parsing decimals.
const MAX_DECIMAL_DIGITS: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("malformed degree `{0}`")]
    Malformed(String),
    #[error("degree `{0}` lies outside [0,1]")]
    OutOfRange(String),
}

/// A rational number in `[0, 1]`, always kept in lowest terms.
///
/// Ordering and equality are exact; cuts distinguish `>=` from `>` and any
/// rounding would move elements across a threshold.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(Ratio<i64>);

impl Degree {
    pub const ZERO: Degree = Degree(Ratio::new_raw(0, 1));
    pub const ONE: Degree = Degree(Ratio::new_raw(1, 1));

    /// Builds `num/den`, rejecting values outside the unit interval.
    pub fn new(num: i64, den: i64) -> Result<Self, DegreeError> {
        if den == 0 {
            return Err(DegreeError::Malformed(format!("{num}/{den}")));
        }
        Self::from_ratio(Ratio::new(num, den))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Result<Self, DegreeError> {
        if r < Ratio::zero() || r > Ratio::one() {
            return Err(DegreeError::OutOfRange(r.to_string()));
        }
        Ok(Degree(r))
    }

    /// Panicking constructor for literals known to be in range.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("degree literal out of range")
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    /// `1 - self`.
    pub fn complement(self) -> Self {
        Degree(Ratio::one() - self.0)
    }

    /// Midpoint of two degrees; stays inside `[0,1]`.
    pub fn midpoint(self, other: Degree) -> Self {
        Degree((self.0 + other.0) / Ratio::from_integer(2))
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }

    /// Lossy conversion for display and plotting only.
    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

/// Łukasiewicz residuum: `1` when `a <= b`, otherwise `1 - a + b`.
pub fn residuum(a: Degree, b: Degree) -> Degree {
    if a <= b {
        Degree::ONE
    } else {
        Degree(Ratio::one() - a.0 + b.0)
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Terminating decimals print as decimals (`0.3`), everything else as
/// `num/den`. Both forms parse back to the same value.
impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (self.numer(), self.denom());
        if d == 1 {
            return write!(f, "{n}");
        }
        let mut rest = d;
        let (mut twos, mut fives) = (0u32, 0u32);
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        while rest % 5 == 0 {
            rest /= 5;
            fives += 1;
        }
        if rest != 1 || twos.max(fives) as usize > MAX_DECIMAL_DIGITS {
            return write!(f, "{n}/{d}");
        }
        let digits = twos.max(fives);
        let scale = 10i128.pow(digits);
        let scaled = n as i128 * (scale / d as i128);
        let frac = format!("{:0width$}", scaled, width = digits as usize);
        write!(f, "0.{}", frac.trim_end_matches('0'))
    }
}

impl FromStr for Degree {
    type Err = DegreeError;

    /// Accepts `INT`, `DECIMAL` (`0.25`, `.5`) and `INT/INT`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let bad = || DegreeError::Malformed(text.to_string());
        if let Some((num, den)) = text.split_once('/') {
            let num: i64 = parse_digits(num).ok_or_else(bad)?;
            let den: i64 = parse_digits(den).ok_or_else(bad)?;
            if den == 0 {
                return Err(bad());
            }
            return Degree::from_ratio(Ratio::new(num, den))
                .map_err(|_| DegreeError::OutOfRange(text.to_string()));
        }
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if (int_part.is_empty() && frac_part.is_empty()) || frac_part.len() > MAX_DECIMAL_DIGITS {
            return Err(bad());
        }
        let int: i64 = if int_part.is_empty() {
            0
        } else {
            parse_digits(int_part).ok_or_else(bad)?
        };
        let frac: i64 = if frac_part.is_empty() {
            0
        } else {
            parse_digits(frac_part).ok_or_else(bad)?
        };
        let scale = 10i64.pow(frac_part.len() as u32);
        let num = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(|| DegreeError::OutOfRange(text.to_string()))?;
        Degree::from_ratio(Ratio::new(num, scale))
            .map_err(|_| DegreeError::OutOfRange(text.to_string()))
    }
}

fn parse_digits(s: &str) -> Option<i64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residuum_examples() {
        let d = |s: &str| s.parse::<Degree>().unwrap();
        assert_eq!(residuum(d("0.4"), d("0.4")), Degree::ONE);
        assert_eq!(residuum(Degree::ONE, Degree::ZERO), Degree::ZERO);
        // 1 - 7/10 + 2/5 = 7/10
        assert_eq!(residuum(d("7/10"), d("2/5")), d("0.7"));
    }

    #[test]
    fn parses_decimals_and_fractions_exactly() {
        assert_eq!("0.3".parse::<Degree>().unwrap(), Degree::frac(3, 10));
        assert_eq!("1/3".parse::<Degree>().unwrap(), Degree::frac(1, 3));
        assert_eq!(".5".parse::<Degree>().unwrap(), Degree::frac(1, 2));
        assert_eq!("1".parse::<Degree>().unwrap(), Degree::ONE);
        assert_eq!("2/4".parse::<Degree>().unwrap(), Degree::frac(1, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!("1.2".parse::<Degree>(), Err(DegreeError::OutOfRange(_))));
        assert!(matches!("4/3".parse::<Degree>(), Err(DegreeError::OutOfRange(_))));
        assert!(matches!("-0.1".parse::<Degree>(), Err(DegreeError::Malformed(_))));
        assert!(matches!("1/0".parse::<Degree>(), Err(DegreeError::Malformed(_))));
        assert!(matches!("abc".parse::<Degree>(), Err(DegreeError::Malformed(_))));
        assert!(matches!(".".parse::<Degree>(), Err(DegreeError::Malformed(_))));
    }

    #[test]
    fn display_prefers_decimals() {
        assert_eq!(Degree::frac(3, 10).to_string(), "0.3");
        assert_eq!(Degree::frac(1, 3).to_string(), "1/3");
        assert_eq!(Degree::frac(1, 8).to_string(), "0.125");
        assert_eq!(Degree::ZERO.to_string(), "0");
        assert_eq!(Degree::ONE.to_string(), "1");
    }

    #[test]
    fn complement_and_midpoint() {
        assert_eq!(Degree::frac(3, 5).complement(), Degree::frac(2, 5));
        assert_eq!(Degree::frac(3, 10).midpoint(Degree::frac(7, 10)), Degree::frac(1, 2));
    }
}
