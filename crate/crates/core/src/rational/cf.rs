//! Finite simple continued fractions with positive partial quotients.
//!
//! Words are usually kept in even-length form, so `2` is written `[1,1]`
//! rather than `[2]`. Even words have convergent matrices of determinant
//! `+1`, and concatenating two even words multiplies their matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Fraction, Mat2};
use crate::error::{Error, Result};

/// A non-empty word `[c_1, ..., c_k]` of partial quotients, every `c_i ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CFWord(Vec<BigUint>);

impl CFWord {
    pub fn new(quotients: Vec<BigUint>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::domain("empty continued-fraction word"));
        }
        if quotients.iter().any(Zero::is_zero) {
            return Err(Error::domain("partial quotients must be positive"));
        }
        Ok(CFWord(quotients))
    }

    pub fn from_slice(quotients: &[u64]) -> Result<Self> {
        CFWord::new(quotients.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn quotients(&self) -> &[BigUint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    // A CFWord is never empty; `len` is kept for slice-like ergonomics.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_even(&self) -> bool {
        self.0.len().is_multiple_of(2)
    }

    fn require_even(&self) -> Result<()> {
        if self.is_even() {
            Ok(())
        } else {
            Err(Error::precondition(format!(
                "continued-fraction word {self} has odd length {}",
                self.len()
            )))
        }
    }

    /// The `m`-fold self-concatenation `w^m`.
    pub fn power(&self, m: usize) -> Result<CFWord> {
        if m == 0 {
            return Err(Error::domain("word power must be at least 1"));
        }
        self.require_even()?;
        Ok(CFWord(
            self.0
                .iter()
                .cycle()
                .take(self.len() * m)
                .cloned()
                .collect(),
        ))
    }

    /// Formats the word as the purely periodic expansion `~[c_1,...,c_k]`.
    pub fn periodic(&self) -> Periodic<'_> {
        Periodic(self)
    }
}

/// Display adapter for the overlined (purely periodic) form of a word.
pub struct Periodic<'a>(&'a CFWord);

impl fmt::Display for Periodic<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "~{}", self.0)
    }
}

impl fmt::Display for CFWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for CFWord {
    type Err = Error;

    /// Parses `[c_1,...,c_k]`. A leading `~` (periodic marker) is accepted
    /// and ignored; use [`parse_periodic`] to keep track of it.
    fn from_str(s: &str) -> Result<Self> {
        parse_periodic(s).map(|(word, _)| word)
    }
}

/// Parses `[..]` or `~[..]`, returning the word and whether it was periodic.
pub fn parse_periodic(s: &str) -> Result<(CFWord, bool)> {
    let s = s.trim();
    let (periodic, rest) = match s.strip_prefix('~') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let inner = rest
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::parse(format!("expected [c1,...,ck], got '{s}'")))?;
    let quotients = inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<BigUint>()
                .map_err(|_| Error::parse(format!("invalid partial quotient '{c}' in '{s}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((CFWord::new(quotients)?, periodic))
}

impl Serialize for CFWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CFWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Even-length expansion of `x > 1`.
///
/// Runs the Euclidean algorithm (which ends in a quotient `≥ 2` unless the
/// word is a single integer) and, if the result has odd length, splits the
/// final quotient `c` into `c−1, 1`.
pub fn cf_expand_even(x: &Fraction) -> Result<CFWord> {
    if *x <= Fraction::one() {
        return Err(Error::domain(format!(
            "even-length expansion is only defined for x > 1, got {x}"
        )));
    }
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut quotients = Vec::new();
    while !den.is_zero() {
        let (q, r) = num.div_rem(&den);
        quotients.push(to_unsigned(q));
        num = den;
        den = r;
    }
    if quotients.len() % 2 == 1 {
        let last = quotients.pop().expect("non-empty expansion");
        quotients.push(last - BigUint::one());
        quotients.push(BigUint::one());
    }
    CFWord::new(quotients)
}

fn to_unsigned(n: BigInt) -> BigUint {
    n.to_biguint()
        .expect("quotients of a positive fraction are non-negative")
}

/// Product of the factors `(c_i, 1; 1, 0)` taken left to right, which equals
/// `(p_k, p_{k-1}; q_k, q_{k-1})` for the last two convergents.
pub fn convergent_matrix(w: &CFWord) -> Mat2 {
    // Multiply on the right column-wise instead of building each factor.
    let mut m = Mat2::identity();
    for c in w.quotients() {
        let c = BigInt::from_biguint(Sign::Plus, c.clone());
        let e11 = &c * &m.e11 + &m.e12;
        let e21 = &c * &m.e21 + &m.e22;
        m = Mat2 {
            e12: m.e11,
            e22: m.e21,
            e11,
            e21,
        };
    }
    m
}

/// Value `c_1 + 1/(c_2 + 1/(... + 1/c_k))`.
pub fn cf_eval(w: &CFWord) -> Fraction {
    let m = convergent_matrix(w);
    Fraction::new(m.e11, m.e21).expect("convergent denominators are positive")
}

/// Concatenation of two even-length words.
pub fn cf_concat(a: &CFWord, b: &CFWord) -> Result<CFWord> {
    a.require_even()?;
    b.require_even()?;
    let mut quotients = Vec::with_capacity(a.len() + b.len());
    quotients.extend_from_slice(a.quotients());
    quotients.extend_from_slice(b.quotients());
    Ok(CFWord(quotients))
}

/// `(-1)^len`, the determinant every convergent matrix must have.
pub fn expected_det(w: &CFWord) -> BigInt {
    if w.is_even() {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}
