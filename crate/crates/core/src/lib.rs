//! Exact window-sum relation toolkit for integer linear recurrences.
//!
//! The crate generates recurrence sequences in exact arithmetic, verifies
//! the window-sum and shift identities they satisfy, searches window
//! lengths for fixed integer-multiple relations, computes periods under a
//! modulus, and cross-validates the order-(k+1) families against board
//! tilings. Everything compares exactly; nothing is floated.
//!
//! - [`sequences`]: recurrence specs, term generation, companion matrices
//! - [`quad`]: exact arithmetic in quadratic extensions, closed forms
//! - [`identities`]: finite-range verifiers returning reports
//! - [`relations`]: window-relation search and classification
//! - [`pisano`]: periods modulo m and parity certificates
//! - [`higher`]: order-(k+1) and order-k scans and growth bounds
//! - [`tilings`]: exhaustive and dynamic-programming board counts
//! - [`acceptance`]: the combined sweep behind `winsum accept`

pub mod acceptance;
pub mod error;
pub mod higher;
pub mod identities;
pub mod pisano;
pub mod quad;
pub mod relations;
pub mod report;
pub mod sequences;
pub mod tilings;

pub use error::{Error, Result};
pub use report::{Counterexample, VerificationReport};
pub use sequences::{builtin, CompanionMatrix, RecurrenceSpec, TermTable};
