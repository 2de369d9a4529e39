//! Invariant suites over the enumerated trees.
//!
//! Each suite walks one or more trees to a given depth, evaluates a set of
//! named checks at every node and tallies the outcome. The first failing
//! check is kept together with its path so it can be replayed.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cf_tree::{
    cf_tree, compare_distance, fixed_point_quadratic, gamma, is_perfect_square, periodic_value,
    qi_satisfies,
};
use crate::cohn::{cohn_tree, index_of, seed_a, seed_b};
use crate::error::{Error, Result};
use crate::markov::{
    check_relations, is_markov_triple, markov_tree, mu, springborn_mediant,
    springborn_mediant_by_divisor, triple_tree, MarkovNodeRelations,
};
use crate::rational::{
    cf_eval, cf_expand_even, convergent_matrix, is_farey_neighbors, CFWord, Fraction, Mat2,
};
use crate::topograph::{farey_tree, locate, mirror, NodeRecord, PathWord, TreeLimits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Prop21,
    Thm31,
    Thm41,
    Periodization,
    Companions,
    Monotonicity,
    FrobeniusScan,
    Homomorphism,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Prop21,
        Suite::Thm31,
        Suite::Thm41,
        Suite::Periodization,
        Suite::Companions,
        Suite::Monotonicity,
        Suite::FrobeniusScan,
        Suite::Homomorphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop21 => "prop21",
            Suite::Thm31 => "thm31",
            Suite::Thm41 => "thm41",
            Suite::Periodization => "periodization",
            Suite::Companions => "companions",
            Suite::Monotonicity => "monotonicity",
            Suite::FrobeniusScan => "frobenius-scan",
            Suite::Homomorphism => "homomorphism",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub depth: usize,
    /// Family parameters for the Cohn suites.
    pub a_values: Vec<i64>,
    /// Largest companion power `m` checked by the companions suite.
    pub max_power: u32,
    pub limits: TreeLimits,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            depth: 10,
            a_values: (-2..=3).collect(),
            max_power: 8,
            limits: TreeLimits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub path: PathWord,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub depth: usize,
    pub params: BTreeMap<String, String>,
    pub nodes: u64,
    pub passed: bool,
    pub checks: Vec<CheckTally>,
    pub counterexample: Option<Counterexample>,
    pub wall_time_ms: f64,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckTally> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn total_failed(&self) -> u64 {
        self.checks.iter().map(|c| c.failed).sum()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(
            f,
            "suite {}: {} (depth {}, {} nodes{}{}, {:.1} ms)",
            self.suite,
            if self.passed { "PASS" } else { "FAIL" },
            self.depth,
            self.nodes,
            if params.is_empty() { "" } else { ", " },
            params.join(", "),
            self.wall_time_ms
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  {:<38} {:>8} passed {:>6} failed",
                c.name, c.passed, c.failed
            )?;
        }
        if let Some(ce) = &self.counterexample {
            writeln!(
                f,
                "  first failure: {} at path {}: {}",
                ce.check, ce.path, ce.detail
            )?;
        }
        Ok(())
    }
}

/// Collects check outcomes in first-seen order.
#[derive(Default)]
struct Recorder {
    checks: Vec<CheckTally>,
    counterexample: Option<Counterexample>,
}

impl Recorder {
    fn record(&mut self, name: &str, path: &PathWord, ok: bool, detail: impl FnOnce() -> String) {
        let pos = match self.checks.iter().position(|c| c.name == name) {
            Some(pos) => pos,
            None => {
                self.checks.push(CheckTally {
                    name: name.to_string(),
                    passed: 0,
                    failed: 0,
                });
                self.checks.len() - 1
            }
        };
        let tally = &mut self.checks[pos];
        if ok {
            tally.passed += 1;
        } else {
            tally.failed += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(Counterexample {
                    check: name.to_string(),
                    path: path.clone(),
                    detail: detail(),
                });
            }
        }
    }

    /// Records a fallible computation; an error counts as a failure.
    fn record_result<T>(&mut self, name: &str, path: &PathWord, result: Result<T>) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(name, path, false, || e.to_string());
                None
            }
        }
    }

    fn finish(
        self,
        suite: Suite,
        config: &SuiteConfig,
        params: BTreeMap<String, String>,
        nodes: usize,
        started: Instant,
    ) -> VerifyReport {
        let passed = self.checks.iter().all(|c| c.failed == 0) && !self.checks.is_empty();
        VerifyReport {
            suite: suite.name().to_string(),
            depth: config.depth,
            params,
            nodes: nodes as u64,
            passed,
            checks: self.checks,
            counterexample: self.counterexample,
            wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<VerifyReport> {
    config.limits.check(config.depth)?;
    match suite {
        Suite::Prop21 => prop21(config),
        Suite::Thm31 => thm31(config),
        Suite::Thm41 => thm41(config),
        Suite::Periodization => periodization(config),
        Suite::Companions => companions(config),
        Suite::Monotonicity => monotonicity(config),
        Suite::FrobeniusScan => frobenius_scan(config),
        Suite::Homomorphism => homomorphism(config),
    }
}

fn no_params() -> BTreeMap<String, String> {
    BTreeMap::new()
}

fn a_params(a_values: &[i64]) -> BTreeMap<String, String> {
    let list: Vec<String> = a_values.iter().map(i64::to_string).collect();
    BTreeMap::from([("a".to_string(), list.join(","))])
}

/// Mirrored concatenation tree keyed by the Farey path it describes.
fn cf_words_by_farey_path(config: &SuiteConfig) -> Result<HashMap<PathWord, NodeRecord<CFWord>>> {
    Ok(cf_tree(config.depth, config.limits)?
        .into_iter()
        .map(|r| (mirror(&r.path), r))
        .collect())
}

/// Local relations around every Markov node, the divisor form of the
/// Springborn mediant, intertwining with the Farey mediant, and Markov
/// triples from the Vieta walk.
pub fn prop21(config: &SuiteConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let mut rec = Recorder::default();
    let farey = farey_tree(config.depth, config.limits)?;
    let markov = markov_tree(config.depth, config.limits)?;
    let triples = triple_tree(config.depth, config.limits)?;

    for ((f, m), (tpath, triple)) in farey.iter().zip(&markov).zip(&triples) {
        let path = &m.path;
        debug_assert!(f.path == *path && tpath == path);

        if let Some(node) =
            rec.record_result("relations", path, MarkovNodeRelations::from_record(m))
        {
            let report = check_relations(&node);
            for c in &report.checks {
                rec.record(c.name, path, c.pass, || c.detail.clone());
            }
        }

        let divisor = springborn_mediant_by_divisor(&m.left_parent, &m.right_parent);
        let ok = matches!(&divisor, Ok((p, q)) if p == m.value.numer() && q == m.value.denom());
        rec.record("mediant divisor form", path, ok, || {
            format!("{:?} vs {}", divisor, m.value)
        });

        // μ evaluated pointwise on the Farey parents and node
        let intertwined = mu(&f.value).and_then(|node| {
            let lo = mu(&f.left_parent)?;
            let hi = mu(&f.right_parent)?;
            Ok((node, springborn_mediant(&lo, &hi)?))
        });
        if let Some((node, mediant)) = rec.record_result("intertwining", path, intertwined) {
            rec.record("intertwining", path, node == mediant, || {
                format!("mu({}) = {node}, mediant of parents = {mediant}", f.value)
            });
        }

        let q = (
            m.left_parent.denom(),
            m.right_parent.denom(),
            m.value.denom(),
        );
        rec.record(
            "denominators = Vieta triple",
            path,
            triple.as_tuple() == q,
            || format!("Vieta {triple}, denominators ({}, {}, {})", q.0, q.1, q.2),
        );
        rec.record("Markov equation", path, triple.satisfies_markov(), || {
            triple.to_string()
        });
    }
    Ok(rec.finish(Suite::Prop21, config, no_params(), markov.len(), started))
}

/// Index of the Cohn matrices against `μ`, entry formulas, and monotonicity
/// and distinctness of each Cohn tree.
pub fn thm31(config: &SuiteConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let mut rec = Recorder::default();
    let farey = farey_tree(config.depth, config.limits)?;
    let markov = markov_tree(config.depth, config.limits)?;
    let three = BigInt::from(3);

    for &a in &config.a_values {
        let cohn = cohn_tree(a, config.depth, config.limits)?;
        let a_big = BigInt::from(a);
        let mut by_t: Vec<(Fraction, Fraction, PathWord)> = Vec::with_capacity(cohn.len() + 2);
        let (sa, sb) = (seed_a(a), seed_b(a));
        let mut seen: HashSet<&Mat2> = HashSet::with_capacity(cohn.len() + 2);
        seen.insert(sa.matrix());
        seen.insert(sb.matrix());

        for ((f, mk), c) in farey.iter().zip(&markov).zip(&cohn) {
            let path = &c.path;
            let m = &c.value;
            let mu_t = &mk.value;
            let (p, q) = (mu_t.numer(), mu_t.denom());
            let Some(idx) = rec.record_result("index defined", path, index_of(m)) else {
                continue;
            };
            if a == 0 {
                rec.record("index(C_t(0)) = mu(t)", path, &idx == mu_t, || {
                    format!("t = {}: index {idx}, mu {mu_t}", f.value)
                });
            }
            let shifted = mu_t + &a_big;
            rec.record("index(C_t(a)) = a + mu(t)", path, idx == shifted, || {
                format!("t = {}, a = {a}: index {idx}, a + mu = {shifted}", f.value)
            });
            rec.record("e11 = a*q + p", path, m.e11 == &a_big * q + p, || {
                format!("a = {a}: {m} vs mu = {mu_t}")
            });
            rec.record("e12 = q", path, &m.e12 == q, || {
                format!("{m} vs mu = {mu_t}")
            });
            rec.record("det = 1", path, m.det().is_one(), || format!("{m}"));
            rec.record("trace = 3*e12", path, m.trace() == &three * &m.e12, || {
                format!("{m}")
            });
            if a == 0 {
                let (c21, rem) = (&three * p * q - p * p - 1u32).div_rem(q);
                let ok = rem.is_zero() && c21 == m.e21 && m.e22 == &three * q - p;
                rec.record("second row from (p, q)", path, ok, || {
                    format!("{m} vs p/q = {mu_t}")
                });
            }
            rec.record("matrices distinct", path, seen.insert(m), || {
                format!("a = {a}: {m} repeated")
            });
            by_t.push((f.value.clone(), idx, path.clone()));
        }

        by_t.push((Fraction::zero(), index_of(sa.matrix())?, PathWord::root()));
        by_t.push((Fraction::one(), index_of(sb.matrix())?, PathWord::root()));
        by_t.sort();
        for pair in by_t.windows(2) {
            let (t0, i0, _) = &pair[0];
            let (t1, i1, path) = &pair[1];
            rec.record("index strictly increasing in t", path, i0 < i1, || {
                format!("a = {a}: index({t0}) = {i0}, index({t1}) = {i1}")
            });
        }
    }
    Ok(rec.finish(
        Suite::Thm31,
        config,
        a_params(&config.a_values),
        farey.len(),
        started,
    ))
}

/// The concatenation tree against the direct expansion of `2 + μ(t)`.
pub fn thm41(config: &SuiteConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let mut rec = Recorder::default();
    let farey = farey_tree(config.depth, config.limits)?;
    let markov = markov_tree(config.depth, config.limits)?;
    let cohn2 = cohn_tree(2, config.depth, config.limits)?;
    let words = cf_words_by_farey_path(config)?;
    let two = BigInt::from(2);

    for ((f, mk), c2) in farey.iter().zip(&markov).zip(&cohn2) {
        let path = &f.path;
        let Some(cf) = words.get(path) else {
            rec.record("word present", path, false, || "missing".into());
            continue;
        };
        let word = &cf.value;
        let rep = &mk.value + &two;
        let value = cf_eval(word);
        rec.record("cf_eval(word) = 2 + mu", path, value == rep, || {
            format!("t = {}: {word} = {value}, 2 + mu = {rep}", f.value)
        });
        if let Some(expanded) =
            rec.record_result("word = expand(2 + mu)", path, cf_expand_even(&rep))
        {
            rec.record("word = expand(2 + mu)", path, &expanded == word, || {
                format!("tree {word}, Euclid {expanded}")
            });
        }
        rec.record("even length", path, word.is_even(), || word.to_string());
        rec.record(
            "length additive",
            path,
            word.len() == cf.left_parent.len() + cf.right_parent.len(),
            || format!("{word} from {} * {}", cf.left_parent, cf.right_parent),
        );
        let m = convergent_matrix(word);
        let cohn_t = c2.value.transpose();
        rec.record("M(word) = C_t(2)^T", path, m == cohn_t, || {
            format!("{m} vs {cohn_t}")
        });
    }
    Ok(rec.finish(Suite::Thm41, config, no_params(), farey.len(), started))
}

/// Periodic words against the closed form of the Markov irrationalities.
pub fn periodization(config: &SuiteConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let mut rec = Recorder::default();
    let markov = markov_tree(config.depth, config.limits)?;
    let words = cf_words_by_farey_path(config)?;

    for mk in &markov {
        let path = &mk.path;
        let Some(cf) = words.get(path) else {
            rec.record("word present", path, false, || "missing".into());
            continue;
        };
        let word = &cf.value;
        let q = mk.value.denom();
        let Some(g) = rec.record_result("gamma defined", path, gamma(&mk.value)) else {
            continue;
        };
        if let Some(x) = rec.record_result("periodic value = gamma", path, periodic_value(word)) {
            rec.record("periodic value = gamma", path, x == g, || {
                format!("~{word} = {x}, gamma({}) = {g}", mk.value)
            });
        }
        let (a2, a1, a0) = fixed_point_quadratic(word);
        rec.record(
            "gamma solves fixed-point quadratic",
            path,
            qi_satisfies(&g, &a2, &a1, &a0),
            || format!("{g} vs {a2}x² + {a1}x + {a0}"),
        );
        let d = BigInt::from(9) * q * q - 4;
        rec.record("D = 9q² - 4", path, g.d() == &d, || {
            format!("{g}, q = {q}")
        });
        rec.record("D non-square", path, !is_perfect_square(&d), || {
            d.to_string()
        });
    }
    Ok(rec.finish(
        Suite::Periodization,
        config,
        no_params(),
        markov.len(),
        started,
    ))
}

/// Left companions `γ_m⁻` approach `γ` strictly monotonically, and their
/// convergent matrices are powers of the base word's.
pub fn companions(config: &SuiteConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let mut rec = Recorder::default();
    let markov = markov_tree(config.depth, config.limits)?;
    let words = cf_words_by_farey_path(config)?;
    for mk in &markov {
        let Some(cf) = words.get(&mk.path) else {
            rec.record("word present", &mk.path, false, || "missing".into());
            continue;
        };
        companion_checks(&mut rec, &mk.path, &mk.value, &cf.value, config.max_power);
    }
    let params = BTreeMap::from([("max_power".to_string(), config.max_power.to_string())]);
    Ok(rec.finish(Suite::Companions, config, params, markov.len(), started))
}

/// The companion checks for explicit coordinates `t`.
pub fn companions_at(ts: &[Fraction], max_power: u32) -> Result<VerifyReport> {
    let started = Instant::now();
    let mut rec = Recorder::default();
    for t in ts {
        let path = if *t == Fraction::zero() || *t == Fraction::one() {
            PathWord::root()
        } else {
            locate(t)?
        };
        let word = crate::cf_tree::markov_cf(t)?;
        companion_checks(&mut rec, &path, &mu(t)?, &word, max_power);
    }
    let list: Vec<String> = ts.iter().map(Fraction::to_string).collect();
    let params = BTreeMap::from([
        ("t".to_string(), list.join(",")),
        ("max_power".to_string(), max_power.to_string()),
    ]);
    let config = SuiteConfig {
        depth: 0,
        ..SuiteConfig::default()
    };
    Ok(rec.finish(Suite::Companions, &config, params, ts.len(), started))
}

fn companion_checks(
    rec: &mut Recorder,
    path: &PathWord,
    mu_t: &Fraction,
    word: &CFWord,
    max_power: u32,
) {
    let Some(g) = rec.record_result("gamma defined", path, gamma(mu_t)) else {
        return;
    };
    let base = convergent_matrix(word);
    let rep = mu_t + &BigInt::from(2);
    let mut previous: Option<Fraction> = None;
    for m in 1..=max_power {
        let Some(wm) = rec.record_result("word power", path, word.power(m as usize)) else {
            return;
        };
        let direct = convergent_matrix(&wm);
        rec.record("M(w^m) = M(w)^m", path, direct == base.pow(m), || {
            format!("m = {m}: {direct}")
        });
        let value = cf_eval(&wm);
        if m == 1 {
            rec.record("gamma_1 = 2 + mu", path, value == rep, || {
                format!("{value} vs {rep}")
            });
        }
        if let Some(prev) = &previous {
            let ord = compare_distance(&value, prev, &g);
            rec.record(
                "|gamma_m - gamma| strictly decreasing",
                path,
                ord.is_lt(),
                || format!("m = {m}: {value} not closer to {g} than {prev}"),
            );
        }
        previous = Some(value);
    }
}

/// `μ` is strictly increasing in `t` and stays in `[0, 1/2]`; Farey
/// addressing round-trips and preserves neighbours.
pub fn monotonicity(config: &SuiteConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let mut rec = Recorder::default();
    let farey = farey_tree(config.depth, config.limits)?;
    let markov = markov_tree(config.depth, config.limits)?;
    let half = Fraction::new(1, 2)?;

    let mut by_t = Vec::with_capacity(farey.len() + 2);
    for (f, mk) in farey.iter().zip(&markov) {
        let path = &f.path;
        let located = locate(&f.value);
        rec.record(
            "locate(descend(w)) = w",
            path,
            located.as_ref() == Ok(path),
            || format!("{} located at {:?}", f.value, located),
        );
        let neighbours = is_farey_neighbors(&f.left_parent, &f.right_parent)
            && is_farey_neighbors(&f.left_parent, &f.value)
            && is_farey_neighbors(&f.value, &f.right_parent);
        rec.record("Farey neighbours preserved", path, neighbours, || {
            format!("{} | {} | {}", f.left_parent, f.value, f.right_parent)
        });
        let mu_t = &mk.value;
        let in_range = !mu_t.is_negative() && *mu_t <= half;
        rec.record("0 <= mu <= 1/2", path, in_range, || mu_t.to_string());
        by_t.push((f.value.clone(), mu_t.clone(), path.clone()));
    }
    by_t.push((Fraction::zero(), mu(&Fraction::zero())?, PathWord::root()));
    by_t.push((Fraction::one(), mu(&Fraction::one())?, PathWord::root()));
    by_t.sort();
    for pair in by_t.windows(2) {
        let (t0, m0, _) = &pair[0];
        let (t1, m1, path) = &pair[1];
        rec.record("mu strictly increasing", path, m0 < m1, || {
            format!("mu({t0}) = {m0}, mu({t1}) = {m1}")
        });
    }
    Ok(rec.finish(
        Suite::Monotonicity,
        config,
        no_params(),
        farey.len(),
        started,
    ))
}

/// All Markov numbers produced by the Vieta walk are pairwise distinct.
pub fn frobenius_scan(config: &SuiteConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let mut rec = Recorder::default();
    let triples = triple_tree(config.depth, config.limits)?;
    let mut seen: HashSet<&BigInt> = HashSet::with_capacity(triples.len() + 2);
    let (one, two) = (BigInt::one(), BigInt::from(2));
    seen.insert(&one);
    seen.insert(&two);
    for (path, t) in &triples {
        rec.record(
            "Markov equation",
            path,
            is_markov_triple(&t.x, &t.y, &t.z),
            || t.to_string(),
        );
        rec.record("Markov number unseen", path, seen.insert(&t.z), || {
            format!("{} already produced", t.z)
        });
    }
    let mut params = no_params();
    params.insert("distinct".to_string(), (seen.len() - 2).to_string());
    Ok(rec.finish(Suite::FrobeniusScan, config, params, triples.len(), started))
}

/// Convergent matrices turn concatenation into multiplication, and the
/// mirrored Cohn tree for `a = 2` is the transposed concatenation tree.
pub fn homomorphism(config: &SuiteConfig) -> Result<VerifyReport> {
    let started = Instant::now();
    let mut rec = Recorder::default();
    let cf = cf_tree(config.depth, config.limits)?;
    let cohn2: HashMap<PathWord, Mat2> = cohn_tree(2, config.depth, config.limits)?
        .into_iter()
        .map(|r| (r.path, r.value))
        .collect();

    for r in &cf {
        let path = &r.path;
        let m = convergent_matrix(&r.value);
        let product = &convergent_matrix(&r.left_parent) * &convergent_matrix(&r.right_parent);
        rec.record("M(a*b) = M(a)M(b)", path, m == product, || {
            format!("{} = {} * {}", r.value, r.left_parent, r.right_parent)
        });
        rec.record("det M(w) = 1", path, m.det().is_one(), || format!("{m}"));
        match cohn2.get(&mirror(path)) {
            Some(c) => {
                let ct = c.transpose();
                rec.record("mirror + transpose of C(2) tree", path, ct == m, || {
                    format!("{ct} vs {m}")
                });
            }
            None => rec.record("mirror + transpose of C(2) tree", path, false, || {
                "missing mirrored node".into()
            }),
        }
    }
    Ok(rec.finish(Suite::Homomorphism, config, no_params(), cf.len(), started))
}
