//! Exact enumeration of Rademacher sign sums `±a_1 ± … ± a_n`.
//!
//! Probabilities over the uniform signs are exact dyadic rationals and the
//! norm `‖a‖` is never materialized: every comparison is done on integer
//! squares, so the boundary `|a·ε| = ‖a‖` is always classified correctly.

pub mod coeff;
pub mod compare;
pub mod conjectures;
pub mod dominance;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod ledger;
pub mod search;
pub mod sign;

pub use coeff::CoeffVec;
pub use error::{Error, Result};
pub use exact::{DyadicProb, Position, Rational};
pub use sign::SignAssignment;
