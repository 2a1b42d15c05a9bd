//! Supercongruence checking for truncated central binomial sums.

pub mod cli;
pub mod error;
pub mod padic;
pub mod quadform;
pub mod registry;
pub mod seqlib;
pub mod sums;
pub mod wzcert;

pub use error::{Error, Result};
