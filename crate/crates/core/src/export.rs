//! Flat-file exports of the enumerated trees: JSON, CSV and Graphviz DOT.
//!
//! Big integers are written as decimal strings; fractions as `"p/q"`,
//! matrices as `[["a","b"],["c","d"]]` and quadratic irrationals as
//! `{"P","B","Q","D"}`. Output is deterministic: nodes come in
//! breadth-first order and no timestamps are written.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::io;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::cf_tree::{cf_tree, periodic_value, QuadraticIrrational};
use crate::cohn::cohn_tree;
use crate::error::{Error, Result};
use crate::markov::{markov_tree, springborn_mediant, triple_tree, MarkovTriple};
use crate::rational::{cf_concat, farey_mediant, CFWord, Fraction, Mat2};
use crate::topograph::{farey_tree, Letter, NodeRecord, PathWord, TreeLimits};

pub(crate) fn ser_decimal<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeKind {
    Farey,
    Markov,
    Triple,
    Cohn,
    Cf,
    Irrational,
}

impl TreeKind {
    pub const ALL: [TreeKind; 6] = [
        TreeKind::Farey,
        TreeKind::Markov,
        TreeKind::Triple,
        TreeKind::Cohn,
        TreeKind::Cf,
        TreeKind::Irrational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TreeKind::Farey => "farey",
            TreeKind::Markov => "markov",
            TreeKind::Triple => "triple",
            TreeKind::Cohn => "cohn",
            TreeKind::Cf => "cf",
            TreeKind::Irrational => "irrational",
        }
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TreeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown tree kind '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeValue {
    Text(String),
    Matrix([[String; 2]; 2]),
    Irrational {
        #[serde(rename = "P")]
        p: String,
        #[serde(rename = "B")]
        b: String,
        #[serde(rename = "Q")]
        q: String,
        #[serde(rename = "D")]
        d: String,
    },
}

impl From<&Fraction> for NodeValue {
    fn from(x: &Fraction) -> Self {
        NodeValue::Text(x.to_string())
    }
}

impl From<&CFWord> for NodeValue {
    fn from(w: &CFWord) -> Self {
        NodeValue::Text(w.to_string())
    }
}

impl From<&BigInt> for NodeValue {
    fn from(n: &BigInt) -> Self {
        NodeValue::Text(n.to_string())
    }
}

impl From<&MarkovTriple> for NodeValue {
    fn from(t: &MarkovTriple) -> Self {
        NodeValue::Text(t.to_string())
    }
}

impl From<&Mat2> for NodeValue {
    fn from(m: &Mat2) -> Self {
        NodeValue::Matrix([
            [m.e11.to_string(), m.e12.to_string()],
            [m.e21.to_string(), m.e22.to_string()],
        ])
    }
}

impl From<&QuadraticIrrational> for NodeValue {
    fn from(x: &QuadraticIrrational) -> Self {
        NodeValue::Irrational {
            p: x.p().to_string(),
            b: x.b().to_string(),
            q: x.q().to_string(),
            d: x.d().to_string(),
        }
    }
}

impl NodeValue {
    pub fn to_fraction(&self) -> Result<Fraction> {
        self.text()?.parse()
    }

    pub fn to_word(&self) -> Result<CFWord> {
        self.text()?.parse()
    }

    pub fn to_integer(&self) -> Result<BigInt> {
        parse_int(self.text()?)
    }

    pub fn to_triple(&self) -> Result<MarkovTriple> {
        let s = self.text()?;
        let inner = s
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::parse(format!("expected (x, y, z), got '{s}'")))?;
        let parts = inner
            .split(',')
            .map(|p| parse_int(p.trim()))
            .collect::<Result<Vec<_>>>()?;
        match <[BigInt; 3]>::try_from(parts) {
            Ok([x, y, z]) => MarkovTriple::new(x, y, z),
            Err(_) => Err(Error::parse(format!("expected three entries in '{s}'"))),
        }
    }

    pub fn to_matrix(&self) -> Result<Mat2> {
        match self {
            NodeValue::Matrix([[a, b], [c, d]]) => Ok(Mat2::new(
                parse_int(a)?,
                parse_int(b)?,
                parse_int(c)?,
                parse_int(d)?,
            )),
            other => Err(Error::parse(format!("expected a matrix, got {other}"))),
        }
    }

    pub fn to_irrational(&self) -> Result<QuadraticIrrational> {
        match self {
            NodeValue::Irrational { p, b, q, d } => {
                QuadraticIrrational::new(parse_int(p)?, parse_int(b)?, parse_int(q)?, parse_int(d)?)
            }
            other => Err(Error::parse(format!(
                "expected a quadratic irrational, got {other}"
            ))),
        }
    }

    fn text(&self) -> Result<&str> {
        match self {
            NodeValue::Text(s) => Ok(s),
            other => Err(Error::parse(format!(
                "expected a string value, got {other}"
            ))),
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| Error::parse(format!("invalid integer '{s}'")))
}

impl fmt::Display for NodeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeValue::Text(s) => f.write_str(s),
            NodeValue::Matrix([[a, b], [c, d]]) => write!(f, "[[{a},{b}],[{c},{d}]]"),
            NodeValue::Irrational { .. } => match self.to_irrational() {
                Ok(x) => x.fmt(f),
                Err(_) => f.write_str("<invalid>"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportNode {
    pub path: PathWord,
    pub value: NodeValue,
    pub left: NodeValue,
    pub right: NodeValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeExport {
    pub kind: TreeKind,
    pub depth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    pub nodes: Vec<ExportNode>,
}

fn nodes_from<V>(records: &[NodeRecord<V>]) -> Vec<ExportNode>
where
    for<'v> &'v V: Into<NodeValue>,
{
    records
        .iter()
        .map(|r| ExportNode {
            path: r.path.clone(),
            value: (&r.value).into(),
            left: (&r.left_parent).into(),
            right: (&r.right_parent).into(),
        })
        .collect()
}

/// Enumerates a tree and packages it for export. `cf` and `irrational`
/// use the addressing of the mirrored concatenation tree.
pub fn build_tree_export(
    kind: TreeKind,
    depth: usize,
    a: Option<i64>,
    limits: TreeLimits,
) -> Result<TreeExport> {
    limits.check(depth)?;
    let nodes = match kind {
        TreeKind::Farey => nodes_from(&farey_tree(depth, limits)?),
        TreeKind::Markov => nodes_from(&markov_tree(depth, limits)?),
        TreeKind::Cohn => {
            let a = a.ok_or_else(|| Error::precondition("the cohn tree needs a parameter a"))?;
            nodes_from(&cohn_tree(a, depth, limits)?)
        }
        TreeKind::Cf => nodes_from(&cf_tree(depth, limits)?),
        TreeKind::Triple => {
            let markov = markov_tree(depth, limits)?;
            let triples = triple_tree(depth, limits)?;
            markov
                .iter()
                .zip(&triples)
                .map(|(m, (path, t))| ExportNode {
                    path: path.clone(),
                    value: t.into(),
                    left: m.left_parent.denom().into(),
                    right: m.right_parent.denom().into(),
                })
                .collect()
        }
        TreeKind::Irrational => {
            let words = cf_tree(depth, limits)?;
            let mut nodes = Vec::with_capacity(words.len());
            for r in &words {
                let value = periodic_value(&r.value)?;
                let left = periodic_value(&r.left_parent)?;
                let right = periodic_value(&r.right_parent)?;
                nodes.push(ExportNode {
                    path: r.path.clone(),
                    value: (&value).into(),
                    left: (&left).into(),
                    right: (&right).into(),
                });
            }
            nodes
        }
    };
    Ok(TreeExport {
        kind,
        depth,
        a: if kind == TreeKind::Cohn { a } else { None },
        nodes,
    })
}

/// Path of the region bounding `path` on the given side, `None` for a seed.
fn parent_path(path: &PathWord, side: Letter) -> Option<PathWord> {
    // the left parent is the last node we left by going R, and vice versa
    let turn = side.flip();
    let letters = path.letters();
    letters
        .iter()
        .rposition(|&l| l == turn)
        .map(|i| PathWord::new(letters[..i].to_vec()))
}

impl TreeExport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| Error::invariant(format!("JSON serialization failed: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<TreeExport> {
        serde_json::from_str(s).map_err(|e| Error::parse(format!("invalid tree export: {e}")))
    }

    pub fn write_csv<W: io::Write>(&self, writer: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["path", "value", "left", "right"])?;
        for n in &self.nodes {
            w.write_record([
                n.path.to_string(),
                n.value.to_string(),
                n.left.to_string(),
                n.right.to_string(),
            ])?;
        }
        w.flush()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .map_err(|e| Error::invariant(format!("CSV serialization failed: {e}")))?;
        String::from_utf8(buf).map_err(|e| Error::invariant(e.to_string()))
    }

    /// Undirected graph on regions: every node is joined to its two parent
    /// regions, and the two seeds to each other.
    pub fn to_dot(&self) -> String {
        let id = |p: Option<PathWord>, seed: &str| match p {
            Some(p) if p.is_empty() => "n_root".to_string(),
            Some(p) => format!("n_{p}"),
            None => seed.to_string(),
        };
        let label = |v: &NodeValue| v.to_string().replace('\\', "\\\\").replace('"', "\\\"");

        let mut out = String::new();
        let _ = writeln!(out, "graph {} {{", self.kind);
        let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
        if let Some(root) = self.nodes.iter().find(|n| n.path.is_empty()) {
            let _ = writeln!(
                out,
                "  seedL [label=\"{}\", style=dashed];",
                label(&root.left)
            );
            let _ = writeln!(
                out,
                "  seedR [label=\"{}\", style=dashed];",
                label(&root.right)
            );
            let _ = writeln!(out, "  seedL -- seedR;");
        }
        for n in &self.nodes {
            let me = id(Some(n.path.clone()), "");
            let _ = writeln!(out, "  {me} [label=\"{}\"];", label(&n.value));
            let l = id(parent_path(&n.path, Letter::L), "seedL");
            let r = id(parent_path(&n.path, Letter::R), "seedR");
            let _ = writeln!(out, "  {me} -- {l};");
            let _ = writeln!(out, "  {me} -- {r};");
        }
        out.push_str("}\n");
        out
    }

    /// Checks node count, path uniqueness, parent links and the combine rule.
    pub fn validate(&self) -> Result<()> {
        let expected = (1usize << (self.depth + 1)) - 1;
        if self.nodes.len() != expected {
            return Err(Error::invariant(format!(
                "{} nodes at depth {}, expected {expected}",
                self.nodes.len(),
                self.depth
            )));
        }
        let mut by_path: HashMap<&PathWord, &ExportNode> = HashMap::with_capacity(self.nodes.len());
        for n in &self.nodes {
            if n.path.len() > self.depth {
                return Err(Error::invariant(format!(
                    "path {} deeper than {}",
                    n.path, self.depth
                )));
            }
            if by_path.insert(&n.path, n).is_some() {
                return Err(Error::invariant(format!("duplicate path {}", n.path)));
            }
        }
        for n in &self.nodes {
            let fail = |what: &str| Error::invariant(format!("{what} at path {}", n.path));
            for (side, given) in [(Letter::L, &n.left), (Letter::R, &n.right)] {
                if let Some(p) = parent_path(&n.path, side) {
                    let parent = by_path
                        .get(&p)
                        .ok_or_else(|| fail("missing parent region"))?;
                    if &self.region_value(parent)? != given {
                        return Err(fail("parent value mismatch"));
                    }
                }
            }
            if !self.combine_holds(n)? {
                return Err(fail("combine rule violated"));
            }
        }
        Ok(())
    }

    /// What a child records for this node as its parent region.
    fn region_value(&self, n: &ExportNode) -> Result<NodeValue> {
        match self.kind {
            TreeKind::Triple => Ok((&n.value.to_triple()?.z).into()),
            _ => Ok(n.value.clone()),
        }
    }

    fn combine_holds(&self, n: &ExportNode) -> Result<bool> {
        Ok(match self.kind {
            TreeKind::Farey => {
                farey_mediant(&n.left.to_fraction()?, &n.right.to_fraction()?)?
                    == n.value.to_fraction()?
            }
            TreeKind::Markov => {
                springborn_mediant(&n.left.to_fraction()?, &n.right.to_fraction()?)?
                    == n.value.to_fraction()?
            }
            TreeKind::Cohn => {
                &n.left.to_matrix()? * &n.right.to_matrix()? == n.value.to_matrix()?
            }
            TreeKind::Cf => {
                cf_concat(&n.left.to_word()?, &n.right.to_word()?)? == n.value.to_word()?
            }
            TreeKind::Triple => {
                let t = n.value.to_triple()?;
                t.x == n.left.to_integer()? && t.y == n.right.to_integer()?
            }
            // values are not closed under a rule of their own; parent links were checked
            TreeKind::Irrational => {
                n.value.to_irrational()?;
                true
            }
        })
    }
}
