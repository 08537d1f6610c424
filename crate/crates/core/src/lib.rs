//! Euler-Maclaurin expansions of sums involving logarithms, extraction of the
//! constants they define, and exact checks of the combinatorial identities
//! around them.

pub mod accel;
pub mod budget;
pub mod constants;
pub mod error;
pub mod exact;
pub mod expansions;
pub mod identity;
pub mod metazeta;
pub mod norlund;
pub mod polylog;
pub mod real;
pub mod suites;

pub use error::{Error, Result};
