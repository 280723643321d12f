//! Exact descendant invariants by string, divisor and WDVV reductions.

pub mod cache;
pub mod engine;
pub mod query;

pub use cache::MemoCache;
pub use engine::{
    compute_invariant, divisor_reduce, one_point_value, plane_curve_count_table, string_reduce,
    BaseSource, Engine,
};
pub use query::{InvariantQuery, InvariantValue, Method};
