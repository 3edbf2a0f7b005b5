//! Antlion random walks: `X_t = alpha X_{t-1} + xi_t` with `xi_t = +-1`.
//!
//! Exact enumeration over rational `alpha`, Monte Carlo simulation, distance
//! to the normal law, residence times, reachability, and a two-armed bandit
//! driven by the walk.

pub mod analysis;
pub mod bandit;
pub mod cli;
pub mod error;
pub mod exact;
pub mod mc;
pub mod reach;
pub mod table;
pub mod walk;

pub use error::{Error, Result};
pub use walk::{Alpha, Rational, Step, WalkParams};
