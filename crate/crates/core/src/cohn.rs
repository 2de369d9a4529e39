//! Aigner's family of Cohn matrices `C_t(a)`.
//!
//! The seeds `A(a)` and `B(a)` sit at `t = 0/1` and `t = 1/1`; every interior
//! node is the product `left · right` of its parent regions. All matrices in
//! the tree have determinant 1 and trace `3·e12`, where `e12` is the Markov
//! number at that node.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{Fraction, Mat2};
use crate::topograph::{descend, enumerate_with, locate, NodeRecord, TreeLimits};

/// A determinant-1 matrix with `trace = 3·e12`, tagged with its family
/// parameter and (when it came from the tree) its coordinate `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohnMatrix {
    m: Mat2,
    a: i64,
    t: Option<Fraction>,
}

impl CohnMatrix {
    pub fn new(m: Mat2, a: i64, t: Option<Fraction>) -> Result<Self> {
        if !m.det().is_one() {
            return Err(Error::invariant(format!("det {m} = {} ≠ 1", m.det())));
        }
        if m.trace() != BigInt::from(3) * &m.e12 {
            return Err(Error::invariant(format!(
                "trace {m} = {} ≠ 3·{}",
                m.trace(),
                m.e12
            )));
        }
        Ok(CohnMatrix { m, a, t })
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn into_matrix(self) -> Mat2 {
        self.m
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn t(&self) -> Option<&Fraction> {
        self.t.as_ref()
    }
}

impl fmt::Display for CohnMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.m.fmt(f)
    }
}

/// `A(a) = (a, 1; 3a − a² − 1, 3 − a)`.
pub fn seed_a(a: i64) -> CohnMatrix {
    let a_big = BigInt::from(a);
    let m = Mat2::new(
        a_big.clone(),
        1,
        BigInt::from(3) * &a_big - &a_big * &a_big - 1,
        BigInt::from(3) - &a_big,
    );
    CohnMatrix::new(m, a, Some(Fraction::zero())).expect("A(a) is a Cohn matrix for every a")
}

/// `B(a) = (2a + 1, 2; −2a² + 4a + 2, 5 − 2a)`.
pub fn seed_b(a: i64) -> CohnMatrix {
    let a_big = BigInt::from(a);
    let m = Mat2::new(
        BigInt::from(2) * &a_big + 1,
        2,
        BigInt::from(-2) * &a_big * &a_big + BigInt::from(4) * &a_big + 2,
        BigInt::from(5) - BigInt::from(2) * &a_big,
    );
    CohnMatrix::new(m, a, Some(Fraction::one())).expect("B(a) is a Cohn matrix for every a")
}

/// Matrix product as a `combine` rule.
pub fn product_rule(left: &Mat2, right: &Mat2) -> Result<Mat2> {
    Ok(left * right)
}

/// `C_t(a)` for `0 ≤ t ≤ 1`.
pub fn cohn_at(t: &Fraction, a: i64) -> Result<CohnMatrix> {
    if *t == Fraction::zero() {
        return Ok(seed_a(a));
    }
    if *t == Fraction::one() {
        return Ok(seed_b(a));
    }
    if t.is_negative() || *t > Fraction::one() {
        return Err(Error::domain(format!(
            "Cohn matrices are indexed by t in [0, 1], got {t}"
        )));
    }
    let path = locate(t)?;
    let rec = descend(
        seed_a(a).into_matrix(),
        seed_b(a).into_matrix(),
        product_rule,
        &path,
    )?;
    CohnMatrix::new(rec.value, a, Some(t.clone()))
}

/// The Cohn tree for parameter `a`, as raw matrices.
pub fn cohn_tree(a: i64, depth: usize, limits: TreeLimits) -> Result<Vec<NodeRecord<Mat2>>> {
    enumerate_with(
        seed_a(a).into_matrix(),
        seed_b(a).into_matrix(),
        product_rule,
        depth,
        limits,
    )
}

/// Aigner's index `e11/e12`.
pub fn index(c: &CohnMatrix) -> Result<Fraction> {
    index_of(c.matrix())
}

pub fn index_of(m: &Mat2) -> Result<Fraction> {
    if m.e12.is_zero() {
        return Err(Error::domain(format!("index undefined: e12 = 0 in {m}")));
    }
    Fraction::new(m.e11.clone(), m.e12.clone())
}

/// `trace/3`, the Markov number of a Cohn matrix; must coincide with `e12`.
pub fn trace_map(c: &CohnMatrix) -> Result<BigInt> {
    trace_map_of(c.matrix())
}

pub fn trace_map_of(m: &Mat2) -> Result<BigInt> {
    let (m3, rem) = m.trace().div_rem(&BigInt::from(3));
    if !rem.is_zero() {
        return Err(Error::invariant(format!(
            "trace of {m} is not divisible by 3"
        )));
    }
    if m3 != m.e12 {
        return Err(Error::invariant(format!(
            "trace/3 = {m3} differs from e12 = {}",
            m.e12
        )));
    }
    Ok(m3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
        Mat2::new(a, b, c, d)
    }

    #[test]
    fn seeds() {
        assert_eq!(seed_a(1).matrix(), &m(1, 1, 1, 2));
        assert_eq!(seed_a(0).matrix(), &m(0, 1, -1, 3));
        assert_eq!(seed_a(2).matrix(), &m(2, 1, 1, 1));
        assert_eq!(seed_b(1).matrix(), &m(3, 2, 4, 3));
        assert_eq!(seed_b(0).matrix(), &m(1, 2, 2, 5));
        assert_eq!(seed_b(2).matrix(), &m(5, 2, 2, 1));
        for a in -50..50 {
            // construction validates det and trace
            let _ = (seed_a(a), seed_b(a));
        }
    }

    #[test]
    fn cohn_at_examples() {
        assert_eq!(cohn_at(&f(1, 2), 1).unwrap().matrix(), &m(7, 5, 11, 8));
        assert_eq!(cohn_at(&f(2, 3), 1).unwrap().matrix(), &m(41, 29, 65, 46));
        assert_eq!(cohn_at(&f(1, 3), 1).unwrap().matrix(), &m(18, 13, 29, 21));
        assert_eq!(cohn_at(&f(1, 2), 0).unwrap().matrix(), &m(2, 5, 5, 13));
        assert_eq!(cohn_at(&f(0, 1), 2).unwrap().matrix(), &m(2, 1, 1, 1));
        assert!(matches!(cohn_at(&f(3, 2), 0), Err(Error::Domain(_))));
        assert_eq!(cohn_at(&f(1, 2), 2).unwrap().t(), Some(&f(1, 2)));
    }

    #[test]
    fn index_examples() {
        let c = |mm| CohnMatrix::new(mm, 0, None).unwrap();
        assert_eq!(index(&c(m(1, 2, 2, 5))).unwrap(), f(1, 2));
        assert_eq!(index(&c(m(0, 1, -1, 3))).unwrap(), f(0, 1));
        assert_eq!(index(&c(m(5, 2, 2, 1))).unwrap(), f(5, 2));
        assert!(matches!(index_of(&m(1, 0, 0, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn trace_map_examples() {
        for (mm, n) in [
            (m(7, 5, 11, 8), 5),
            (m(41, 29, 65, 46), 29),
            (m(18, 13, 29, 21), 13),
        ] {
            let c = CohnMatrix::new(mm, 1, None).unwrap();
            assert_eq!(trace_map(&c).unwrap(), BigInt::from(n));
        }
        assert!(matches!(
            trace_map_of(&m(1, 0, 0, 1)),
            Err(Error::Invariant(_))
        ));
        assert!(matches!(
            trace_map_of(&m(2, 5, 1, 1)),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn rejects_non_cohn() {
        assert!(matches!(
            CohnMatrix::new(m(2, 1, 3, 2), 0, None),
            Err(Error::Invariant(_))
        ));
        assert!(matches!(
            CohnMatrix::new(m(1, 1, 0, 1), 0, None),
            Err(Error::Invariant(_))
        ));
    }
}
