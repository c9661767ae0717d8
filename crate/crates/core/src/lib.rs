//! Exact evaluation of the floor-power sums `S_r(n, m)`, the weighted-remainder
//! function `W`, and classical and generalized Dedekind sums, each by a
//! definitional route and by closed forms, plus sweeps that check the
//! identities relating them.

pub mod cli;
pub mod dedekind;
pub mod error;
pub mod exact_arith;
pub mod floor_sums;
pub mod verify;
pub mod w_function;

#[cfg(test)]
mod oracle;

pub use error::{Error, Result};
pub use exact_arith::{Int, Rat};
