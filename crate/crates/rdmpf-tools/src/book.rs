//! Doctest bridge for the mdbook guide in `book/`.
//!
//! mdbook cannot run Rust listings as tests by itself, so each chapter is
//! included here as documentation and `cargo test --doc` compiles and
//! runs every ```rust block. The guide and the crates cannot drift apart
//! without a test failure. This module only exists under
//! `cfg(doctest)` — it is invisible to normal builds and docs.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/matrix-power-function.md")]
mod matrix_power_function {}

#[doc = include_str!("../../../book/src/rank-deficiency.md")]
mod rank_deficiency {}

#[doc = include_str!("../../../book/src/kem.md")]
mod kem {}

#[doc = include_str!("../../../book/src/signatures.md")]
mod signatures {}

#[doc = include_str!("../../../book/src/wire-formats.md")]
mod wire_formats {}

#[doc = include_str!("../../../book/src/security-estimation.md")]
mod security_estimation {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
