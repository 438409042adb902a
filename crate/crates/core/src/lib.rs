//! Canonical coin systems for the change-making problem.
//!
//! A coin system is *canonical* when the cashier's greedy rule always pays an
//! amount with the fewest possible coins. This crate decides canonicity in
//! several independent ways and cross-checks them:
//!
//! * [`oracle`]: greedy against dynamic programming over the finite window
//!   where the smallest counterexample must live.
//! * [`charact`]: closed-form tests for three, four and five coins.
//! * [`algos`]: the general `O(m^3)` candidate search and the `O(m^2)` test
//!   for tight systems.
//! * [`props`]: executable structural statements about smallest
//!   counterexamples, used for corpus sweeps.

pub mod algos;
pub mod bench;
pub mod charact;
pub mod error;
pub mod gen;
pub mod method;
pub mod oracle;
pub mod props;
pub mod repr;
pub mod system;

pub use error::{Error, Result};
pub use method::{check, Method};
pub use repr::{greedy, optimal, optimal_all, Budget, DpTable, OptimalSet};
pub use system::{CoinSystem, Counterexample, Representation, Verdict};
