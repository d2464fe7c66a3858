//! Rank-deficient matrix power function (RDMPF) toolkit: a post-quantum
//! KEM and digital signature built from modular matrix exponentiation.
//!
//! **Research code. Not audited, no security guarantees — do not deploy.**
//!
//! The library provides:
//!
//! * [`algebra`] — arithmetic over GF(p) and the exponent ring Z_{p−1},
//!   and the matrix power function with the σ variant and rank-deficient
//!   base construction.
//! * [`kem`] — a key encapsulation mechanism hardened by the
//!   Fujisaki–Okamoto transform with implicit rejection: decapsulation
//!   re-encrypts and, on any mismatch, returns a deterministic
//!   pseudorandom key instead of an error.
//! * [`dsa`] — a deterministic signature wrapper with the same implicit
//!   rejection discipline, over a pluggable inner signature scheme
//!   (a Merkle-tree one-time-signature scheme ships as the default).
//! * [`hashing`] — the single SHAKE256-based XOF behind every hash, with
//!   a closed domain-label registry.
//! * [`codec`] — bit-exact serialization for keys, ciphertexts and
//!   signatures, plus the known-answer-test file format in [`kat`].
//!
//! # Quick start
//!
//! ```
//! use rdmpf::kem;
//! use rdmpf::params::Params;
//!
//! let params = Params::toy_997();
//! let (pk, sk) = kem::keygen(&[7u8; 32], &params);
//! let (ct, key_sender) = kem::encaps(&pk, &[42u8; 8]);
//! let key_receiver = kem::decaps(&sk, &ct);
//! assert_eq!(key_sender, key_receiver);
//! ```
//!
//! A narrative guide lives in the `book/` directory of the repository
//! (`mdbook build book`); its code listings double as this crate's
//! doctest suite.

pub mod algebra;
pub mod codec;
pub mod dsa;
pub mod error;
pub mod hashing;
pub mod kat;
pub mod kem;
pub mod params;
pub mod probe;

pub use error::{Error, Result};
