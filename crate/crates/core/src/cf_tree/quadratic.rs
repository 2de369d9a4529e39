//! Exact real quadratic irrationals `(P + B·√D)/Q`.
//!
//! `D` is kept exactly as produced (no square factors are pulled out), so
//! structural equality is only meaningful between values sharing the same
//! `D`. [`QuadraticIrrational::value_eq`] compares across radicands.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Fraction;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    p: BigInt,
    b: BigInt,
    q: BigInt,
    d: BigInt,
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

impl QuadraticIrrational {
    /// Builds `(p + b√d)/q` with `b, q > 0` and `d` a positive non-square,
    /// dividing out `gcd(p, b, q)`.
    pub fn new(
        p: impl Into<BigInt>,
        b: impl Into<BigInt>,
        q: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (p, b, q, d) = (p.into(), b.into(), q.into(), d.into());
        if !d.is_positive() || is_perfect_square(&d) {
            return Err(Error::domain(format!(
                "radicand {d} must be a positive non-square"
            )));
        }
        if !b.is_positive() || !q.is_positive() {
            return Err(Error::domain(format!(
                "need B > 0 and Q > 0, got B = {b}, Q = {q}"
            )));
        }
        let g = p.gcd(&b).gcd(&q);
        Ok(QuadraticIrrational {
            p: p / &g,
            b: b / &g,
            q: q / &g,
            d,
        })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// Equality of real values, valid across different radicands.
    ///
    /// With `√D` irrational, `P1/Q1 + (B1/Q1)√D1 = P2/Q2 + (B2/Q2)√D2` forces
    /// the rational parts to agree, and then the positive irrational parts
    /// agree iff their squares do.
    pub fn value_eq(&self, other: &QuadraticIrrational) -> bool {
        &self.p * &other.q == &other.p * &self.q
            && &self.b * &self.b * &self.d * &other.q * &other.q
                == &other.b * &other.b * &other.d * &self.q * &self.q
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let radical = if self.b.is_one() {
            format!("√{}", self.d)
        } else {
            format!("{}√{}", self.b, self.d)
        };
        let numerator = if self.p.is_zero() {
            radical
        } else {
            format!("{}+{}", self.p, radical)
        };
        if self.q.is_one() {
            f.write_str(&numerator)
        } else if self.p.is_zero() {
            write!(f, "{numerator}/{}", self.q)
        } else {
            write!(f, "({numerator})/{}", self.q)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    #[serde(rename = "P")]
    p: String,
    #[serde(rename = "B")]
    b: String,
    #[serde(rename = "Q")]
    q: String,
    #[serde(rename = "D")]
    d: String,
}

impl Serialize for QuadraticIrrational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            p: self.p.to_string(),
            b: self.b.to_string(),
            q: self.q.to_string(),
            d: self.d.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadraticIrrational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(deserializer)?;
        let int = |s: &str| s.parse::<BigInt>().map_err(serde::de::Error::custom);
        QuadraticIrrational::new(int(&w.p)?, int(&w.b)?, int(&w.q)?, int(&w.d)?)
            .map_err(serde::de::Error::custom)
    }
}

/// Exact comparison of a rational `r` with `x`, using integers only.
pub fn qi_compare(r: &Fraction, x: &QuadraticIrrational) -> Ordering {
    // r ⋚ (P + B√D)/Q  ⟺  a·Q − P·b ⋚ b·B·√D   with r = a/b, b > 0.
    let (a, b) = (r.numer(), r.denom());
    let lhs = a * &x.q - &x.p * b;
    if !lhs.is_positive() {
        // the right-hand side is strictly positive
        return Ordering::Less;
    }
    let rhs_sq = b * b * &x.b * &x.b * &x.d;
    // equality would make √D rational
    (&lhs * &lhs).cmp(&rhs_sq)
}

/// Compares `|r1 − x|` with `|r2 − x|` exactly.
pub fn compare_distance(r1: &Fraction, r2: &Fraction, x: &QuadraticIrrational) -> Ordering {
    let s1 = qi_compare(r1, x);
    let s2 = qi_compare(r2, x);
    match (s1, s2) {
        // same side: the one further from x in that direction is further away
        (Ordering::Greater, Ordering::Greater) => r1.cmp(r2),
        (Ordering::Less, Ordering::Less) => r2.cmp(r1),
        // opposite sides: |r1 − x| vs |r2 − x| ⟺ midpoint vs x
        (Ordering::Greater, _) => {
            let mid = midpoint(r1, r2);
            qi_compare(&mid, x)
        }
        (Ordering::Less, _) => {
            let mid = midpoint(r1, r2);
            qi_compare(&mid, x).reverse()
        }
        (Ordering::Equal, _) => unreachable!("a rational never equals an irrational"),
    }
}

fn midpoint(r1: &Fraction, r2: &Fraction) -> Fraction {
    let sum = r1 + r2;
    Fraction::new(sum.numer().clone(), sum.denom() * 2).expect("nonzero")
}

/// Whether `a2·x² + a1·x + a0 = 0` exactly.
pub fn qi_satisfies(x: &QuadraticIrrational, a2: &BigInt, a1: &BigInt, a0: &BigInt) -> bool {
    // Q²·(a2x² + a1x + a0) = [a2(P² + B²D) + a1PQ + a0Q²] + [2a2PB + a1BQ]√D
    let (p, b, q, d) = (&x.p, &x.b, &x.q, &x.d);
    let rational = a2 * (p * p + b * b * d) + a1 * p * q + a0 * q * q;
    let irrational: BigInt = a2 * p * b * 2 + a1 * b * q;
    rational.is_zero() && irrational.is_zero()
}
