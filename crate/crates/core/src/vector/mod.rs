//! Rational-vector things and exact hull membership.

mod fm;
pub mod hull;
pub mod presets;
mod simplex;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use hull::{member, member_convex_hull, member_positive_hull, HullKind, Route, FM_GENERATOR_LIMIT};
pub use presets::{preset_assessment, validate_horse_lottery, Preset};

pub type Rational = BigRational;

/// A finite vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalVector(coords.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    /// Coordinates given as `(numerator, denominator)` pairs.
    pub fn from_fracs(coords: &[(i64, i64)]) -> Self {
        RationalVector(
            coords
                .iter()
                .map(|&(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
                .collect(),
        )
    }

    /// Parses `"p/q"` or integer strings.
    pub fn parse<S: AsRef<str>>(coords: &[S]) -> Result<Self> {
        coords
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(RationalVector)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Every coordinate `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// Every coordinate `<= 0`.
    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|c| !c.is_positive())
    }

    pub fn min_coord(&self) -> Option<&Rational> {
        self.0.iter().min()
    }

    #[must_use]
    pub fn scale(&self, k: &Rational) -> Self {
        RationalVector(self.0.iter().map(|c| c * k).collect())
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    #[must_use]
    pub fn sub(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim())
        .map_err(|_| Error::MalformedDocument(format!("`{s}` is not a rational of the form p/q")))
}
