//! Exact arithmetic on the Conway topograph.
//!
//! Farey fractions, Markov fractions, Markov triples, Cohn matrices and the
//! continued fractions of Markov numbers all live on the regions of the same
//! infinite binary tree. Each is produced by [`topograph::descend`] or
//! [`topograph::enumerate_with`] from two seeds and a combine rule:
//!
//! | tree      | seeds                 | rule                    |
//! |-----------|-----------------------|-------------------------|
//! | Farey     | `0/1`, `1/1`          | Farey mediant           |
//! | Markov    | `0/1`, `1/2`          | Springborn mediant      |
//! | Cohn      | `A(a)`, `B(a)`        | matrix product          |
//! | CF        | `[2,2]`, `[1,1]`      | concatenation (mirrored)|
//!
//! ```
//! use topomarkov::{mu, Fraction};
//!
//! let t: Fraction = "4/5".parse().unwrap();
//! assert_eq!(mu(&t).unwrap().to_string(), "408/985");
//! ```

pub mod cf_tree;
pub mod cohn;
pub mod error;
pub mod export;
pub mod markov;
pub mod rational;
pub mod topograph;
pub mod verify;

pub use cf_tree::{gamma, left_companion, markov_cf, periodic_value, QuadraticIrrational};
pub use cohn::{cohn_at, index, trace_map, CohnMatrix};
pub use error::{Error, Result};
pub use export::{build_tree_export, TreeExport, TreeKind};
pub use markov::{markov_triple_at, mu, springborn_mediant, MarkovTriple};
pub use rational::{cf_eval, cf_expand_even, convergent_matrix, CFWord, Fraction, Mat2};
pub use topograph::{descend, locate, mirror, Letter, NodeRecord, PathWord, TreeLimits};
pub use verify::{run_suite, Suite, SuiteConfig, VerifyReport};
