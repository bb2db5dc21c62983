//! Comma sequences in base `b >= 2`.
//!
//! A comma sequence starts at `s >= 1`; each next term is the smallest `k'`
//! with `k' - k = d·b + e`, where `d` is the last digit of `k` and `e` the
//! first digit of `k'`. The sequence ends at a number with no such `k'`.
//!
//! The jump-ahead engine in [`runner`] runs sequences of `10^17` terms in
//! milliseconds; [`classifier`] gives closed forms for the graph structure.

pub mod base3;
pub mod classifier;
pub mod error;
pub mod kangaroo;
pub mod numeral;
pub mod paths;
pub mod runner;
pub mod stepper;
pub mod transform;

pub use error::{CommaError, Result};
pub use numeral::{BaseNumber, Natural, Radix};
pub use paths::{ChoiceString, PathOutcome, PathReport};
pub use runner::{run_fast, run_naive, term_at, RunLimits, RunOutcome, RunStatus};
pub use stepper::{comma_children, comma_parent, comma_successor, CommaNumber};
