//! Markov fractions, the Springborn function `μ`, and Markov triples.
//!
//! Markov fractions live on the same tree as the Farey fractions, seeded with
//! `0/1` and `1/2`, but new regions are filled by the Springborn mediant
//! `(p1q1 + p2q2)/(q1² + q2²)`. `μ` sends a Farey node to the Markov fraction
//! in the same position.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Fraction;
use crate::topograph::{descend, enumerate_with, locate, Letter, NodeRecord, PathWord, TreeLimits};

/// Springborn mediant of an ordered pair `lo < hi`, reduced by gcd.
pub fn springborn_mediant(lo: &Fraction, hi: &Fraction) -> Result<Fraction> {
    if lo >= hi {
        return Err(Error::precondition(format!(
            "Springborn mediant needs lo < hi, got {lo} and {hi}"
        )));
    }
    let (p1, q1) = (lo.numer(), lo.denom());
    let (p2, q2) = (hi.numer(), hi.denom());
    Fraction::new(p1 * q1 + p2 * q2, q1 * q1 + q2 * q2)
}

/// Springborn mediant computed with the tree divisor `d = p2q1 − p1q2`:
/// `p = (p1q1 + p2q2)/d`, `q = (q1² + q2²)/d`. Fails when either division is
/// inexact, which happens off the Markov tree.
pub fn springborn_mediant_by_divisor(lo: &Fraction, hi: &Fraction) -> Result<(BigInt, BigInt)> {
    let (p1, q1) = (lo.numer(), lo.denom());
    let (p2, q2) = (hi.numer(), hi.denom());
    let d = p2 * q1 - p1 * q2;
    if d <= BigInt::zero() {
        return Err(Error::precondition(format!(
            "{lo} and {hi} are not ordered"
        )));
    }
    let num = p1 * q1 + p2 * q2;
    let den = q1 * q1 + q2 * q2;
    match (exact_div(&num, &d), exact_div(&den, &d)) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(Error::invariant(format!(
            "{d} does not divide both {num} and {den}"
        ))),
    }
}

fn exact_div(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    let (q, r) = a.div_rem(b);
    r.is_zero().then_some(q)
}

pub fn markov_seeds() -> (Fraction, Fraction) {
    (Fraction::zero(), Fraction::new(1, 2).expect("nonzero"))
}

/// `μ(t)` for `0 ≤ t ≤ 1`.
pub fn mu(t: &Fraction) -> Result<Fraction> {
    let (lo, hi) = markov_seeds();
    if *t == Fraction::zero() {
        return Ok(lo);
    }
    if *t == Fraction::one() {
        return Ok(hi);
    }
    if t.is_negative() || *t > Fraction::one() {
        return Err(Error::domain(format!("mu is defined on [0, 1], got {t}")));
    }
    Ok(mu_at(&locate(t)?)?.value)
}

/// The Markov-fraction record at a tree path.
pub fn mu_at(path: &PathWord) -> Result<NodeRecord<Fraction>> {
    let (lo, hi) = markov_seeds();
    descend(lo, hi, springborn_mediant, path)
}

pub fn markov_tree(depth: usize, limits: TreeLimits) -> Result<Vec<NodeRecord<Fraction>>> {
    let (lo, hi) = markov_seeds();
    enumerate_with(lo, hi, springborn_mediant, depth, limits)
}

/// A positive solution of `x² + y² + z² = 3xyz`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MarkovTriple {
    #[serde(serialize_with = "crate::export::ser_decimal")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::export::ser_decimal")]
    pub y: BigInt,
    #[serde(serialize_with = "crate::export::ser_decimal")]
    pub z: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    X,
    Y,
    Z,
}

impl MarkovTriple {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Result<Self> {
        let t = MarkovTriple {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        };
        if t.x <= BigInt::zero() || t.y <= BigInt::zero() || t.z <= BigInt::zero() {
            return Err(Error::domain(format!("{t} has a non-positive entry")));
        }
        if !t.satisfies_markov() {
            return Err(Error::invariant(format!(
                "{t} does not satisfy x²+y²+z² = 3xyz"
            )));
        }
        Ok(t)
    }

    pub fn satisfies_markov(&self) -> bool {
        is_markov_triple(&self.x, &self.y, &self.z)
    }

    pub fn as_tuple(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.x, &self.y, &self.z)
    }
}

pub fn is_markov_triple(x: &BigInt, y: &BigInt, z: &BigInt) -> bool {
    x * x + y * y + z * z == BigInt::from(3) * x * y * z
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Vieta involution on one coordinate: `c ↦ 3·(product of the others) − c`,
/// cross-checked against `(sum of squares of the others)/c`.
pub fn vieta_flip(t: &MarkovTriple, position: Position) -> Result<MarkovTriple> {
    let (a, b, c) = match position {
        Position::X => (&t.y, &t.z, &t.x),
        Position::Y => (&t.x, &t.z, &t.y),
        Position::Z => (&t.x, &t.y, &t.z),
    };
    let linear = BigInt::from(3) * a * b - c;
    let (quadratic, rem) = (a * a + b * b).div_rem(c);
    if !rem.is_zero() || quadratic != linear {
        return Err(Error::invariant(format!(
            "Vieta formulas disagree on {t}: 3ab−c = {linear}, (a²+b²)/c = {quadratic} rem {rem}"
        )));
    }
    let mut out = t.clone();
    match position {
        Position::X => out.x = linear,
        Position::Y => out.y = linear,
        Position::Z => out.z = linear,
    }
    Ok(out)
}

/// Region state of the Vieta walk: the two parent numbers and the number
/// across the edge between them.
#[derive(Clone, Debug)]
struct VietaState {
    triple: MarkovTriple, // (left, right, opposite)
}

impl VietaState {
    fn seed() -> Self {
        // Regions 1 and 2 share an edge whose far side carries 1 (the region of 1/0).
        VietaState {
            triple: MarkovTriple {
                x: BigInt::one(),
                y: BigInt::from(2),
                z: BigInt::one(),
            },
        }
    }

    /// Flips the opposite number into the node number: `(left, right, node)`.
    fn node(&self) -> Result<MarkovTriple> {
        vieta_flip(&self.triple, Position::Z)
    }

    fn step(node: &MarkovTriple, letter: Letter) -> VietaState {
        let MarkovTriple { x: l, y: r, z: n } = node.clone();
        let triple = match letter {
            Letter::L => MarkovTriple { x: l, y: n, z: r },
            Letter::R => MarkovTriple { x: n, y: r, z: l },
        };
        VietaState { triple }
    }
}

/// `(left parent, right parent, node)` Markov numbers at a path, obtained by
/// Vieta flips from the seed regions 1 and 2.
pub fn markov_triple_at(path: &PathWord) -> Result<MarkovTriple> {
    let mut node = VietaState::seed().node()?;
    for &letter in path.letters() {
        node = VietaState::step(&node, letter).node()?;
    }
    Ok(node)
}

/// Breadth-first Vieta walk: one `(left, right, node)` triple per path of
/// length `≤ depth`, in the same order as [`enumerate_with`].
pub fn triple_tree(depth: usize, limits: TreeLimits) -> Result<Vec<(PathWord, MarkovTriple)>> {
    limits.check(depth)?;
    let mut out = vec![(PathWord::root(), VietaState::seed().node()?)];
    let mut start = 0;
    for _ in 0..depth {
        let end = out.len();
        for i in start..end {
            for letter in [Letter::L, Letter::R] {
                let (path, node) = &out[i];
                let child = VietaState::step(node, letter).node()?;
                let path = path.child(letter);
                out.push((path, child));
            }
        }
        start = end;
    }
    Ok(out)
}

/// The five fractions around a node: parents `p1/q1` (left), `p2/q2` (right),
/// the node `p3/q3`, and the two children `p1'/q1'` (replacing the left
/// parent, i.e. the `R` child) and `p2'/q2'` (the `L` child).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovNodeRelations {
    pub f1: Fraction,
    pub f2: Fraction,
    pub f3: Fraction,
    pub f1_prime: Fraction,
    pub f2_prime: Fraction,
}

impl MarkovNodeRelations {
    pub fn from_record(r: &NodeRecord<Fraction>) -> Result<Self> {
        Ok(MarkovNodeRelations {
            f1: r.left_parent.clone(),
            f2: r.right_parent.clone(),
            f3: r.value.clone(),
            f1_prime: springborn_mediant(&r.value, &r.right_parent)?,
            f2_prime: springborn_mediant(&r.left_parent, &r.value)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const RELATION_NAMES: [&str; 6] = ["rel12a", "rel12b", "rel3", "rel1'", "rel2'", "markov"];

/// Evaluates the local relations between the five fractions around a node.
/// Inexact divisions are reported as failures.
pub fn check_relations(node: &MarkovNodeRelations) -> RelationReport {
    let (p1, q1) = (node.f1.numer(), node.f1.denom());
    let (p2, q2) = (node.f2.numer(), node.f2.denom());
    let (p3, q3) = (node.f3.numer(), node.f3.denom());
    let three = BigInt::from(3);
    let mut checks = Vec::with_capacity(RELATION_NAMES.len());

    let lhs = p2 * q3 - p3 * q2;
    checks.push(RelationCheck {
        name: "rel12a",
        pass: &lhs == q1,
        detail: format!("p2q3 - p3q2 = {lhs}, q1 = {q1}"),
    });

    let lhs = p3 * q1 - p1 * q3;
    checks.push(RelationCheck {
        name: "rel12b",
        pass: &lhs == q2,
        detail: format!("p3q1 - p1q3 = {lhs}, q2 = {q2}"),
    });

    let lhs = p2 * q1 - p1 * q2;
    let by_vieta = &three * q1 * q2 - q3;
    let by_squares = exact_div(&(q1 * q1 + q2 * q2), q3);
    checks.push(RelationCheck {
        name: "rel3",
        pass: by_squares.as_ref() == Some(&lhs) && lhs == by_vieta,
        detail: format!(
            "p2q1 - p1q2 = {lhs}, (q1²+q2²)/q3 = {}, 3q1q2 - q3 = {by_vieta}",
            show_div(&by_squares)
        ),
    });

    let p1p = exact_div(&(p2 * q2 + p3 * q3), q1);
    let q1p = exact_div(&(q2 * q2 + q3 * q3), q1);
    checks.push(RelationCheck {
        name: "rel1'",
        pass: p1p.as_ref() == Some(node.f1_prime.numer())
            && q1p.as_ref() == Some(node.f1_prime.denom()),
        detail: format!(
            "(p2q2+p3q3)/q1 = {}, (q2²+q3²)/q1 = {}, p1'/q1' = {}",
            show_div(&p1p),
            show_div(&q1p),
            node.f1_prime
        ),
    });

    let p2p = exact_div(&(p1 * q1 + p3 * q3), q2);
    let q2p = exact_div(&(q1 * q1 + q3 * q3), q2);
    checks.push(RelationCheck {
        name: "rel2'",
        pass: p2p.as_ref() == Some(node.f2_prime.numer())
            && q2p.as_ref() == Some(node.f2_prime.denom()),
        detail: format!(
            "(p1q1+p3q3)/q2 = {}, (q1²+q3²)/q2 = {}, p2'/q2' = {}",
            show_div(&p2p),
            show_div(&q2p),
            node.f2_prime
        ),
    });

    checks.push(RelationCheck {
        name: "markov",
        pass: is_markov_triple(q1, q2, q3),
        detail: format!("(q1, q2, q3) = ({q1}, {q2}, {q3})"),
    });

    RelationReport { checks }
}

fn show_div(v: &Option<BigInt>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "inexact".to_string(),
    }
}
