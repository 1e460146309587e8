//! Exact combinatorics of multi-dimensional partitions and the q-series
//! built from them.
//!
//! The crate has three layers:
//!
//! * exact truncated power series over big rationals, with plethystic
//!   exp/log, rational-function reconstruction and the q -> 1/q symmetry
//!   test ([`series`], [`ratfun`]);
//! * enumeration and counting of r-dimensional and punctual r-dimensional
//!   partitions, twice over: a layered DP ([`partitions`]) and the
//!   monomial-ideal staircase DFS it is cross-checked against
//!   ([`staircase`]), plus the boxed plane-partition machinery ([`boxed`]);
//! * the Euler-number partition functions assembled from those series and
//!   the two conjecture checkers ([`moduli`]).

pub mod boxed;
pub mod error;
pub mod moduli;
pub mod partitions;
pub mod ratfun;
pub mod rational;
pub mod series;
pub mod staircase;

pub use error::{Error, Result};
pub use rational::Coeff;
pub use series::TruncatedSeries;
