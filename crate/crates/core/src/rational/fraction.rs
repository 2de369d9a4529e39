use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational number `num/den` kept in lowest terms with `den > 0`.
///
/// Two fractions are equal exactly when their stored numerators and
/// denominators are equal, so derived `Eq`/`Hash` are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction(BigRational);

impl Fraction {
    /// Builds the reduced fraction `num/den`; the sign ends up on the numerator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::domain(format!("zero denominator in {num}/0")));
        }
        Ok(Fraction(BigRational::new(num, den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Fraction(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Fraction(BigRational::zero())
    }

    pub fn one() -> Self {
        Fraction(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `num·other.den − other.num·den`, the determinant of the two columns.
    pub fn cross(&self, other: &Fraction) -> BigInt {
        self.numer() * other.denom() - other.numer() * self.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Fraction {
    fn from(r: BigRational) -> Self {
        Fraction(r)
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Fraction::from_integer(n)
    }
}

impl Add for &Fraction {
    type Output = Fraction;
    fn add(self, rhs: &Fraction) -> Fraction {
        Fraction(&self.0 + &rhs.0)
    }
}

impl Sub for &Fraction {
    type Output = Fraction;
    fn sub(self, rhs: &Fraction) -> Fraction {
        Fraction(&self.0 - &rhs.0)
    }
}

impl Add<&BigInt> for &Fraction {
    type Output = Fraction;
    fn add(self, rhs: &BigInt) -> Fraction {
        Fraction(&self.0 + BigRational::from_integer(rhs.clone()))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `n` (meaning `n/1`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let int = |part: &str| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::parse(format!("invalid fraction '{s}'")))
        };
        match s.split_once('/') {
            Some((p, q)) => Fraction::new(int(p)?, int(q)?),
            None => Ok(Fraction::from_integer(int(s)?)),
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

/// True iff `|x.num·y.den − y.num·x.den| = 1`.
pub fn is_farey_neighbors(x: &Fraction, y: &Fraction) -> bool {
    x.cross(y).abs().is_one()
}

/// `(a+c)/(b+d)` for Farey neighbours `a/b`, `c/d`.
pub fn farey_mediant(x: &Fraction, y: &Fraction) -> Result<Fraction> {
    if !is_farey_neighbors(x, y) {
        return Err(Error::precondition(format!(
            "{x} and {y} are not Farey neighbours"
        )));
    }
    Fraction::new(x.numer() + y.numer(), x.denom() + y.denom())
}
