//! Exact degrees in the unit interval.
//!
//! A [`Degree`] is stored as an integer count of thousandths. Every operation
//! the engine performs on degrees is `min`, `max` or `1 - x`, all of which are
//! closed over thousandths, so no rounding ever happens after parsing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Number of representable steps between 0 and 1.
pub const SCALE: u16 = 1000;

/// A possibility or membership degree in `[0, 1]`, exact to the thousandth.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Degree(u16);

impl Degree {
    pub const ZERO: Degree = Degree(0);
    pub const ONE: Degree = Degree(SCALE);

    /// Builds a degree from a count of thousandths (`0..=1000`).
    pub fn from_thousandths(thousandths: u16) -> Result<Self, Error> {
        if thousandths > SCALE {
            return Err(Error::DegreeOutOfRange(format!("{}/1000", thousandths)));
        }
        Ok(Degree(thousandths))
    }

    /// Rounds a float to the nearest thousandth.
    ///
    /// This is an input convenience; engine arithmetic never goes through
    /// floating point.
    pub fn from_f64(value: f64) -> Result<Self, Error> {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return Err(Error::DegreeOutOfRange(value.to_string()));
        }
        Ok(Degree((value * f64::from(SCALE)).round() as u16))
    }

    pub const fn thousandths(self) -> u16 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / f64::from(SCALE)
    }

    /// `1 - x`.
    #[must_use]
    pub const fn complement(self) -> Self {
        Degree(SCALE - self.0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == SCALE
    }

    /// True for 0 and 1.
    pub fn is_crisp(self) -> bool {
        self.0 == 0 || self.0 == SCALE
    }
}

/// Shorthand used throughout tests and examples. Panics on out-of-range input.
///
/// ```
/// use possibilist::fuzzy::deg;
/// assert_eq!(deg(0.6).to_string(), "0.6");
/// ```
pub fn deg(value: f64) -> Degree {
    Degree::from_f64(value).expect("degree literal outside [0, 1]")
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Exact shortest decimal form: `0`, `1`, `0.6`, `0.25`, `0.125`.
impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let whole = self.0 / SCALE;
        let frac = self.0 % SCALE;
        if frac == 0 {
            return write!(f, "{}", whole);
        }
        let digits = format!("{:03}", frac);
        write!(f, "{}.{}", whole, digits.trim_end_matches('0'))
    }
}

/// Why a decimal literal could not be read as a degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeParseError {
    Malformed,
    TooPrecise,
    OutOfRange,
}

impl fmt::Display for DegreeParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeParseError::Malformed => f.write_str("not a decimal number"),
            DegreeParseError::TooPrecise => f.write_str("more than three fractional digits"),
            DegreeParseError::OutOfRange => f.write_str("outside [0, 1]"),
        }
    }
}

impl std::error::Error for DegreeParseError {}

impl FromStr for Degree {
    type Err = DegreeParseError;

    /// Parses `d`, `d.`, `d.ddd` or `.ddd` with at most three fractional digits.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(DegreeParseError::Malformed);
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(DegreeParseError::Malformed);
        }
        let significant_frac = frac_part.trim_end_matches('0');
        if significant_frac.len() > 3 {
            return Err(DegreeParseError::TooPrecise);
        }
        let int_value: u64 = if int_part.is_empty() {
            0
        } else {
            // Long runs of digits are out of range, not malformed.
            match int_part.trim_start_matches('0') {
                "" => 0,
                t if t.len() > 4 => return Err(DegreeParseError::OutOfRange),
                t => t.parse().map_err(|_| DegreeParseError::Malformed)?,
            }
        };
        let mut frac_value: u64 = 0;
        for (i, b) in significant_frac.bytes().enumerate() {
            frac_value += u64::from(b - b'0') * 10u64.pow(2 - i as u32);
        }
        let total = int_value * u64::from(SCALE) + frac_value;
        if negative && total != 0 {
            return Err(DegreeParseError::OutOfRange);
        }
        if total > u64::from(SCALE) {
            return Err(DegreeParseError::OutOfRange);
        }
        Ok(Degree(total as u16))
    }
}

// Serialized as a JSON number whose shortest representation is the exact
// decimal (e.g. `0.6`); deserialization rounds back to thousandths.
impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_multiple_of(SCALE) {
            serializer.serialize_u64(u64::from(self.0 / SCALE))
        } else {
            serializer.serialize_f64(self.as_f64())
        }
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = f64::deserialize(deserializer)?;
        Degree::from_f64(value).map_err(serde::de::Error::custom)
    }
}

/// Minimum of a sequence; `ONE` for an empty sequence.
pub fn min_all<I: IntoIterator<Item = Degree>>(it: I) -> Degree {
    it.into_iter().fold(Degree::ONE, Degree::min)
}

/// Maximum of a sequence; `ZERO` for an empty sequence.
pub fn max_all<I: IntoIterator<Item = Degree>>(it: I) -> Degree {
    it.into_iter().fold(Degree::ZERO, Degree::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_is_shortest_exact_decimal() {
        assert_eq!(Degree::ZERO.to_string(), "0");
        assert_eq!(Degree::ONE.to_string(), "1");
        assert_eq!(deg(0.6).to_string(), "0.6");
        assert_eq!(deg(0.25).to_string(), "0.25");
        assert_eq!(deg(0.125).to_string(), "0.125");
        assert_eq!(deg(0.005).to_string(), "0.005");
    }

    #[test]
    fn parse_accepts_common_forms() {
        assert_eq!("0.6".parse::<Degree>().unwrap(), deg(0.6));
        assert_eq!(".5".parse::<Degree>().unwrap(), deg(0.5));
        assert_eq!("1".parse::<Degree>().unwrap(), Degree::ONE);
        assert_eq!("1.000".parse::<Degree>().unwrap(), Degree::ONE);
        assert_eq!("0.1000".parse::<Degree>().unwrap(), deg(0.1));
        assert_eq!("-0".parse::<Degree>().unwrap(), Degree::ZERO);
    }

    #[test]
    fn parse_rejects_bad_literals() {
        assert_eq!("1.2".parse::<Degree>(), Err(DegreeParseError::OutOfRange));
        assert_eq!("-0.2".parse::<Degree>(), Err(DegreeParseError::OutOfRange));
        assert_eq!("0.1234".parse::<Degree>(), Err(DegreeParseError::TooPrecise));
        assert_eq!("abc".parse::<Degree>(), Err(DegreeParseError::Malformed));
        assert_eq!(".".parse::<Degree>(), Err(DegreeParseError::Malformed));
        assert_eq!("".parse::<Degree>(), Err(DegreeParseError::Malformed));
        assert_eq!(
            "99999999999999999999".parse::<Degree>(),
            Err(DegreeParseError::OutOfRange)
        );
    }

    #[test]
    fn complement_examples() {
        assert_eq!(deg(0.3).complement(), deg(0.7));
        assert_eq!(Degree::ONE.complement(), Degree::ZERO);
    }

    #[test]
    fn empty_folds_are_neutral() {
        assert_eq!(min_all([]), Degree::ONE);
        assert_eq!(max_all([]), Degree::ZERO);
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(t in 0u16..=1000) {
            let d = Degree::from_thousandths(t).unwrap();
            prop_assert_eq!(d.to_string().parse::<Degree>().unwrap(), d);
        }

        #[test]
        fn json_round_trip(t in 0u16..=1000) {
            let d = Degree::from_thousandths(t).unwrap();
            let text = serde_json::to_string(&d).unwrap();
            prop_assert_eq!(&text, &d.to_string());
            prop_assert_eq!(serde_json::from_str::<Degree>(&text).unwrap(), d);
        }

        #[test]
        fn parse_never_panics(s in "\\PC{0,12}") {
            let _ = s.parse::<Degree>();
        }
    }
}
