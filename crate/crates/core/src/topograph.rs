//! Addressing and traversal of the trivalent topograph tree.
//!
//! A node is reached from the root edge between two seed regions by a word
//! over `{L, R}`. At each step the current pair `(left, right)` produces the
//! node value `combine(left, right)`; `L` continues with `(left, node)` and
//! `R` with `(node, right)`. In the Farey tree `L` therefore moves towards
//! the smaller boundary fraction.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{farey_mediant, Fraction};

/// Default hard cap on enumeration depth.
pub const DEFAULT_MAX_DEPTH: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::L => Letter::R,
            Letter::R => Letter::L,
        }
    }

    fn as_char(self) -> char {
        match self {
            Letter::L => 'L',
            Letter::R => 'R',
        }
    }
}

/// A finite word over `{L, R}`; the empty word addresses the root node.
///
/// Ordering is breadth-first: shorter words first, then lexicographic with
/// `L < R`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathWord(Vec<Letter>);

impl PathWord {
    pub fn root() -> Self {
        PathWord(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        PathWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, letter: Letter) -> PathWord {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.extend_from_slice(&self.0);
        letters.push(letter);
        PathWord(letters)
    }
}

impl Ord for PathWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PathWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PathWord {
    type Err = Error;

    /// Accepts `-` (or the empty string) for the root, otherwise `L`/`R` letters.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(PathWord::root());
        }
        s.chars()
            .map(|c| match c {
                'L' => Ok(Letter::L),
                'R' => Ok(Letter::R),
                _ => Err(Error::parse(format!("invalid path letter '{c}' in '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PathWord)
    }
}

impl Serialize for PathWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PathWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A node of an enumerated tree together with the two regions it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeRecord<V> {
    pub path: PathWord,
    pub left_parent: V,
    pub right_parent: V,
    pub value: V,
}

impl<V> NodeRecord<V> {
    pub fn map<W>(self, mut f: impl FnMut(V) -> W) -> NodeRecord<W> {
        NodeRecord {
            path: self.path,
            left_parent: f(self.left_parent),
            right_parent: f(self.right_parent),
            value: f(self.value),
        }
    }
}

fn at_position(position: usize) -> impl FnOnce(Error) -> Error {
    move |e| Error::AtPath {
        position,
        source: Box::new(e),
    }
}

/// Walks `path` from the seed pair and returns the record at its end.
pub fn descend<V, F>(
    seed_left: V,
    seed_right: V,
    combine: F,
    path: &PathWord,
) -> Result<NodeRecord<V>>
where
    V: Clone,
    F: Fn(&V, &V) -> Result<V>,
{
    let mut left = seed_left;
    let mut right = seed_right;
    let mut node = combine(&left, &right).map_err(at_position(0))?;
    for (i, letter) in path.letters().iter().enumerate() {
        match letter {
            Letter::L => right = node,
            Letter::R => left = node,
        }
        node = combine(&left, &right).map_err(at_position(i + 1))?;
    }
    Ok(NodeRecord {
        path: path.clone(),
        left_parent: left,
        right_parent: right,
        value: node,
    })
}

/// Path of `t` in the Farey tree seeded with `0/1`, `1/1`.
pub fn locate(t: &Fraction) -> Result<PathWord> {
    let mut lo = Fraction::zero();
    let mut hi = Fraction::one();
    if *t <= lo || *t >= hi {
        return Err(Error::domain(format!(
            "{t} is not an interior node of the Farey tree on (0, 1)"
        )));
    }
    let mut letters = Vec::new();
    loop {
        let m = farey_mediant(&lo, &hi)?;
        match t.cmp(&m) {
            Ordering::Equal => return Ok(PathWord(letters)),
            Ordering::Less => {
                letters.push(Letter::L);
                hi = m;
            }
            Ordering::Greater => {
                letters.push(Letter::R);
                lo = m;
            }
        }
    }
}

/// Letterwise `L ↔ R`.
pub fn mirror(path: &PathWord) -> PathWord {
    PathWord(path.0.iter().map(|l| l.flip()).collect())
}

/// Enumeration settings: depth cap and whether levels are computed on the
/// rayon pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeLimits {
    pub max_depth: usize,
    pub parallel: bool,
}

impl Default for TreeLimits {
    fn default() -> Self {
        TreeLimits {
            max_depth: DEFAULT_MAX_DEPTH,
            parallel: false,
        }
    }
}

impl TreeLimits {
    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn check(&self, depth: usize) -> Result<()> {
        if depth > self.max_depth {
            Err(Error::DepthLimit {
                requested: depth,
                max: self.max_depth,
            })
        } else {
            Ok(())
        }
    }
}

/// All `2^(depth+1) − 1` records with path length `≤ depth`, breadth-first
/// with `L` before `R`.
pub fn enumerate<V, F>(
    seed_left: V,
    seed_right: V,
    combine: F,
    depth: usize,
) -> Result<Vec<NodeRecord<V>>>
where
    V: Clone + Send + Sync,
    F: Fn(&V, &V) -> Result<V> + Sync,
{
    enumerate_with(seed_left, seed_right, combine, depth, TreeLimits::default())
}

/// [`enumerate`] with explicit limits. The parallel variant produces the
/// same records in the same order as the sequential one.
pub fn enumerate_with<V, F>(
    seed_left: V,
    seed_right: V,
    combine: F,
    depth: usize,
    limits: TreeLimits,
) -> Result<Vec<NodeRecord<V>>>
where
    V: Clone + Send + Sync,
    F: Fn(&V, &V) -> Result<V> + Sync,
{
    limits.check(depth)?;
    let root_value = combine(&seed_left, &seed_right).map_err(at_position(0))?;
    let mut out = Vec::with_capacity((1usize << (depth + 1)) - 1);
    out.push(NodeRecord {
        path: PathWord::root(),
        left_parent: seed_left,
        right_parent: seed_right,
        value: root_value,
    });

    let children = |r: &NodeRecord<V>| -> Result<[NodeRecord<V>; 2]> {
        let position = r.path.len() + 1;
        let left = combine(&r.left_parent, &r.value).map_err(at_position(position))?;
        let right = combine(&r.value, &r.right_parent).map_err(at_position(position))?;
        Ok([
            NodeRecord {
                path: r.path.child(Letter::L),
                left_parent: r.left_parent.clone(),
                right_parent: r.value.clone(),
                value: left,
            },
            NodeRecord {
                path: r.path.child(Letter::R),
                left_parent: r.value.clone(),
                right_parent: r.right_parent.clone(),
                value: right,
            },
        ])
    };

    let mut level_start = 0;
    for _ in 0..depth {
        let level = &out[level_start..];
        let next: Vec<NodeRecord<V>> = if limits.parallel {
            level
                .par_iter()
                .map(children)
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect()
        } else {
            let mut next = Vec::with_capacity(level.len() * 2);
            for r in level {
                next.extend(children(r)?);
            }
            next
        };
        level_start = out.len();
        out.extend(next);
    }
    Ok(out)
}

/// Farey mediant as a `combine` rule.
pub fn farey_rule(x: &Fraction, y: &Fraction) -> Result<Fraction> {
    farey_mediant(x, y)
}

/// The Farey tree on `(0, 1)`.
pub fn farey_tree(depth: usize, limits: TreeLimits) -> Result<Vec<NodeRecord<Fraction>>> {
    enumerate_with(Fraction::zero(), Fraction::one(), farey_rule, depth, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    fn p(s: &str) -> PathWord {
        s.parse().unwrap()
    }

    fn farey_at(path: &str) -> NodeRecord<Fraction> {
        descend(Fraction::zero(), Fraction::one(), farey_rule, &p(path)).unwrap()
    }

    #[test]
    fn descend_farey() {
        assert_eq!(farey_at("-").value, f(1, 2));
        assert_eq!(farey_at("LRR").value, f(3, 7));
        assert_eq!(farey_at("R").value, f(2, 3));
        let r = farey_at("LR");
        assert_eq!(
            (r.left_parent, r.right_parent, r.value),
            (f(1, 3), f(1, 2), f(2, 5))
        );
    }

    #[test]
    fn descend_reports_failing_position() {
        let fail_late = |x: &Fraction, y: &Fraction| {
            let m = farey_mediant(x, y)?;
            if *m.denom() > 3.into() {
                Err(Error::domain("too deep"))
            } else {
                Ok(m)
            }
        };
        let err = descend(Fraction::zero(), Fraction::one(), fail_late, &p("LLL")).unwrap_err();
        assert!(matches!(err, Error::AtPath { position: 2, .. }), "{err:?}");
    }

    #[test]
    fn locate_examples() {
        assert_eq!(locate(&f(1, 2)).unwrap(), PathWord::root());
        assert_eq!(locate(&f(1, 3)).unwrap(), p("L"));
        assert_eq!(locate(&f(3, 7)).unwrap(), p("LRR"));
        assert_eq!(locate(&f(1, 5)).unwrap(), p("LLL"));
        for bad in [f(0, 1), f(1, 1), f(3, 2), f(-1, 2)] {
            assert!(matches!(locate(&bad), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn enumerate_levels() {
        let values = |d| -> Vec<Fraction> {
            farey_tree(d, TreeLimits::default())
                .unwrap()
                .into_iter()
                .map(|r| r.value)
                .collect()
        };
        assert_eq!(values(0), vec![f(1, 2)]);
        assert_eq!(values(1), vec![f(1, 2), f(1, 3), f(2, 3)]);
        assert_eq!(
            values(2),
            vec![
                f(1, 2),
                f(1, 3),
                f(2, 3),
                f(1, 4),
                f(2, 5),
                f(3, 5),
                f(3, 4)
            ]
        );
    }

    #[test]
    fn enumerate_guard() {
        let limits = TreeLimits {
            max_depth: 3,
            parallel: false,
        };
        assert_eq!(
            farey_tree(4, limits).unwrap_err(),
            Error::DepthLimit {
                requested: 4,
                max: 3
            }
        );
        assert!(matches!(
            farey_tree(25, TreeLimits::default()),
            Err(Error::DepthLimit { max: 24, .. })
        ));
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = farey_tree(9, TreeLimits::default()).unwrap();
        let par = farey_tree(9, TreeLimits::default().parallel(true)).unwrap();
        assert_eq!(seq, par);
        let mut sorted = par.clone();
        sorted.sort_by(|a, b| a.path.cmp(&b.path));
        assert_eq!(sorted, seq);
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror(&p("-")), p("-"));
        assert_eq!(mirror(&p("L")), p("R"));
        assert_eq!(mirror(&p("LRR")), p("RLL"));
    }

    #[test]
    fn path_text_form() {
        assert_eq!(PathWord::root().to_string(), "-");
        assert_eq!(p("").to_string(), "-");
        assert_eq!(p("LRL").to_string(), "LRL");
        assert!("LX".parse::<PathWord>().is_err());
    }
}
