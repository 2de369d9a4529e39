//! Continued fractions of Markov fractions.
//!
//! The representatives `2 + μ(t)` of Markov fractions in `[2, 5/2]` have
//! even-length expansions that are built by plain concatenation on the
//! mirrored tree: seeds `[2,2]` (value `5/2`, `t = 1`) on the left and
//! `[1,1]` (value `2`, `t = 0`) on the right, and a node is `left * right`.
//! Read periodically, the same words give the Markov irrationalities; their
//! powers give the left companions.

mod quadratic;

pub use quadratic::{
    compare_distance, is_perfect_square, qi_compare, qi_satisfies, QuadraticIrrational,
};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::{cf_concat, cf_eval, convergent_matrix, CFWord, Fraction};
use crate::topograph::{descend, enumerate_with, locate, mirror, NodeRecord, TreeLimits};

/// `([2,2], [1,1])`: the left and right seeds of the mirrored concatenation tree.
pub fn cf_seeds() -> (CFWord, CFWord) {
    (
        CFWord::from_slice(&[2, 2]).expect("valid word"),
        CFWord::from_slice(&[1, 1]).expect("valid word"),
    )
}

pub fn concat_rule(left: &CFWord, right: &CFWord) -> Result<CFWord> {
    cf_concat(left, right)
}

/// Even-length expansion of `2 + μ(t)`, built by concatenation.
pub fn markov_cf(t: &Fraction) -> Result<CFWord> {
    let (left, right) = cf_seeds();
    if *t == Fraction::zero() {
        return Ok(right);
    }
    if *t == Fraction::one() {
        return Ok(left);
    }
    if t.is_negative() || *t > Fraction::one() {
        return Err(Error::domain(format!("t must lie in [0, 1], got {t}")));
    }
    let path = mirror(&locate(t)?);
    Ok(descend(left, right, concat_rule, &path)?.value)
}

/// The concatenation tree in its own (mirrored) addressing: the record at
/// path `w` belongs to the Farey coordinate at `mirror(w)`.
pub fn cf_tree(depth: usize, limits: TreeLimits) -> Result<Vec<NodeRecord<CFWord>>> {
    let (left, right) = cf_seeds();
    enumerate_with(left, right, concat_rule, depth, limits)
}

/// Markov irrationality `(2p + q + √(9q² − 4))/(2q)` of `p/q ∈ [0, 1/2]`.
pub fn gamma(mf: &Fraction) -> Result<QuadraticIrrational> {
    let (p, q) = (mf.numer(), mf.denom());
    QuadraticIrrational::new(
        BigInt::from(2) * p + q,
        1,
        BigInt::from(2) * q,
        BigInt::from(9) * q * q - 4,
    )
}

/// Coefficients `(a2, a1, a0)` of `q_k x² + (q_{k−1} − p_k) x − p_{k−1}`, whose
/// root above 1 is the purely periodic continued fraction of `w`.
pub fn fixed_point_quadratic(w: &CFWord) -> (BigInt, BigInt, BigInt) {
    let m = convergent_matrix(w);
    (m.e21.clone(), &m.e22 - &m.e11, -m.e12)
}

/// Exact value of the purely periodic expansion `[w̄]`.
pub fn periodic_value(w: &CFWord) -> Result<QuadraticIrrational> {
    if !w.is_even() {
        return Err(Error::precondition(format!(
            "periodic words must have even length, got {w}"
        )));
    }
    let m = convergent_matrix(w);
    let (pk, pk1, qk, qk1) = (&m.e11, &m.e12, &m.e21, &m.e22);
    if qk <= &BigInt::from(0) {
        return Err(Error::domain(format!(
            "degenerate fixed-point quadratic for {w}"
        )));
    }
    // x = (p_k − q_{k−1} + √((p_k − q_{k−1})² + 4 q_k p_{k−1})) / (2 q_k)
    let lin = pk - qk1;
    let disc = &lin * &lin + BigInt::from(4) * qk * pk1;
    QuadraticIrrational::new(lin, 1, BigInt::from(2) * qk, disc)
}

/// Left companion `γ_m⁻`: the value of `markov_cf(t)` repeated `m` times.
pub fn left_companion(t: &Fraction, m: usize) -> Result<Fraction> {
    Ok(cf_eval(&markov_cf(t)?.power(m)?))
}
