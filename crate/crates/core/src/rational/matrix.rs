use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A 2×2 integer matrix `(e11, e12; e21, e22)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub e11: BigInt,
    pub e12: BigInt,
    pub e21: BigInt,
    pub e22: BigInt,
}

impl Mat2 {
    pub fn new(
        e11: impl Into<BigInt>,
        e12: impl Into<BigInt>,
        e21: impl Into<BigInt>,
        e22: impl Into<BigInt>,
    ) -> Self {
        Mat2 {
            e11: e11.into(),
            e12: e12.into(),
            e21: e21.into(),
            e22: e22.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.e11 * &self.e22 - &self.e12 * &self.e21
    }

    pub fn trace(&self) -> BigInt {
        &self.e11 + &self.e22
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 {
            e11: self.e11.clone(),
            e12: self.e21.clone(),
            e21: self.e12.clone(),
            e22: self.e22.clone(),
        }
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Mat2 {
        let mut base = self.clone();
        let mut acc = Mat2::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn rows(&self) -> [[&BigInt; 2]; 2] {
        [[&self.e11, &self.e12], [&self.e21, &self.e22]]
    }

    pub fn is_zero(&self) -> bool {
        self.e11.is_zero() && self.e12.is_zero() && self.e21.is_zero() && self.e22.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.e11.is_one() && self.e12.is_zero() && self.e21.is_zero() && self.e22.is_one()
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            e11: &self.e11 * &rhs.e11 + &self.e12 * &rhs.e21,
            e12: &self.e11 * &rhs.e12 + &self.e12 * &rhs.e22,
            e21: &self.e21 * &rhs.e11 + &self.e22 * &rhs.e21,
            e22: &self.e21 * &rhs.e12 + &self.e22 * &rhs.e22,
        }
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]]",
            self.e11, self.e12, self.e21, self.e22
        )
    }
}

// Entries outgrow 64 bits quickly, so JSON carries them as decimal strings.
impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows = [
            [self.e11.to_string(), self.e12.to_string()],
            [self.e21.to_string(), self.e22.to_string()],
        ];
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[String; 2]; 2]>::deserialize(deserializer)?;
        let int = |s: &str| s.parse::<BigInt>().map_err(serde::de::Error::custom);
        Ok(Mat2::new(int(&a)?, int(&b)?, int(&c)?, int(&d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_invariants() {
        let a = Mat2::new(1, 1, 1, 2);
        let b = Mat2::new(3, 2, 4, 3);
        let ab = &a * &b;
        assert_eq!(ab, Mat2::new(7, 5, 11, 8));
        assert_eq!(ab.det(), BigInt::one());
        assert_eq!(ab.trace(), BigInt::from(15));
        assert_eq!(ab.transpose(), Mat2::new(7, 11, 5, 8));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let m = Mat2::new(12, 7, 5, 3);
        let mut acc = Mat2::identity();
        for n in 0..7 {
            assert_eq!(m.pow(n), acc);
            acc = &acc * &m;
        }
        assert_eq!(m.pow(2), Mat2::new(179, 105, 75, 44));
    }

    #[test]
    fn json_uses_decimal_strings() {
        let m = Mat2::new(7, 5, 11, -8);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["7","5"],["11","-8"]]"#);
        assert_eq!(serde_json::from_str::<Mat2>(&json).unwrap(), m);
        assert_eq!(m.to_string(), "[[7,5],[11,-8]]");
    }
}
