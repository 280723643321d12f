pub mod check;
pub mod cli;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod ragrug;
pub mod wdvv;

pub use error::{Error, Result};
pub use exact::Rational;
pub use wdvv::{compute_invariant, InvariantQuery, InvariantValue};
