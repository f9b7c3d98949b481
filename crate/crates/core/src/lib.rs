//! Exact Wigner 3j, 6j, 9j and 12j symbols, the asymptotic 12j symbol with one
//! small spin, and a harness comparing the two.

pub mod asymptotics;
pub mod dmatrix;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod harness;
pub mod par;
pub mod spin;

pub use error::{Error, Result};
pub use exact::{ExactValue, Symbol12Args};
pub use spin::{ExactRational, SemiclassicalLength, Spin};
