//! Exact rationals, Farey operations, continued-fraction words and their
//! convergent matrices.

mod cf;
mod fraction;
mod matrix;

pub use cf::{
    cf_concat, cf_eval, cf_expand_even, convergent_matrix, expected_det, parse_periodic, CFWord,
    Periodic,
};
pub use fraction::{farey_mediant, is_farey_neighbors, Fraction};
pub use matrix::Mat2;
