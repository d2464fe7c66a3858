//! Operational tooling for the `rdmpf` crate: the security estimator, the
//! micro-scale brute-force oracle, the benchmark harness and the
//! accept/reject timing probe. The `rdmpf` binary in this package exposes
//! all of it on the command line.

pub mod bench;
pub mod bruteforce;
pub mod estimator;
pub mod timing;

#[cfg(doctest)]
mod book;
