//! Exact truncated q-series, Bailey pairs and indefinite theta sums, with a
//! registry of checkable identities between mock theta type double sums.

pub mod bailey;
pub mod error;
pub mod functions;
pub mod hecke;
pub mod identities;
pub mod pairs;
pub mod poch;
pub mod report;
pub mod series;

pub use bailey::BaileyPair;
pub use error::{Error, Result};
pub use report::{Params, Status, VerificationReport};
pub use series::{eq_to_order, rat, Coefficient, Den, Monomial, Series, Verdict};
