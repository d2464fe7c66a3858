//! Domain-separated hash suite.
//!
//! Every hash, key-derivation and seed-expansion step in the toolkit is one
//! primitive — SHAKE256 — invoked under a label from a closed registry.
//! The input framing is bit-exact and normative:
//!
//! ```text
//! SHAKE256( len(label) as u8 ∥ label ∥ data )
//! ```
//!
//! The single-byte length prefix makes the (label, data) encoding injective,
//! so no two registered domains can collide by concatenation. On top of the
//! raw XOF sit the three named oracles of the protocols:
//!
//! * `h1` — 256-bit, label `"mask"`: encapsulation masks, rejection
//!   randomness, signing randomness.
//! * `h2` — 256-bit, label `"tag"`: authentication tags and the reject*
//!   placeholder.
//! * `kdf` — caller-sized, label `"key"`: shared-secret derivation.

use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

use crate::probe;

/// The closed registry of hash domains.
///
/// Labels are pairwise distinct byte strings. `R`, `T` and `Z` are the
/// protocol-level prefixes that appear *inside* hash inputs (they are
/// single literal bytes in the signing and rejection transcripts, and are
/// registered here so the domain inventory is complete). `Rej` and `Pkh`
/// are reserved and currently unused: rejection keys are derived through
/// the `mask`/`key` path with explicit separator bytes, and public keys
/// are hashed in full rather than pre-hashed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainLabel {
    /// `"r"` — signing-randomness prefix (in-data).
    R,
    /// `"t"` — tag prefix (in-data).
    T,
    /// `"z"` — reject*-placeholder prefix (in-data).
    Z,
    /// `"XY"` — message-to-matrix expansion.
    Xy,
    /// `"mask"` — the H1 oracle.
    Mask,
    /// `"tag"` — the H2 oracle.
    Tag,
    /// `"key"` — the KDF.
    Key,
    /// `"rej"` — reserved.
    Rej,
    /// `"pkh"` — reserved.
    Pkh,
    /// `"Wgen"` — public group matrix expansion from a key seed.
    Wgen,
    /// `"Agen"` — left singular base seed derivation.
    Agen,
    /// `"Bgen"` — right singular base seed derivation.
    Bgen,
    /// `"UVgen"` — secret polynomial coefficient expansion.
    UvGen,
    /// `"zsec"` — implicit-rejection fallback secret derivation.
    Zsec,
}

impl DomainLabel {
    /// Label bytes as hashed on the wire.
    pub fn as_bytes(self) -> &'static [u8] {
        match self {
            DomainLabel::R => b"r",
            DomainLabel::T => b"t",
            DomainLabel::Z => b"z",
            DomainLabel::Xy => b"XY",
            DomainLabel::Mask => b"mask",
            DomainLabel::Tag => b"tag",
            DomainLabel::Key => b"key",
            DomainLabel::Rej => b"rej",
            DomainLabel::Pkh => b"pkh",
            DomainLabel::Wgen => b"Wgen",
            DomainLabel::Agen => b"Agen",
            DomainLabel::Bgen => b"Bgen",
            DomainLabel::UvGen => b"UVgen",
            DomainLabel::Zsec => b"zsec",
        }
    }

    /// Every registered label. Registry tests enumerate this.
    pub fn registry() -> &'static [DomainLabel] {
        &[
            DomainLabel::R,
            DomainLabel::T,
            DomainLabel::Z,
            DomainLabel::Xy,
            DomainLabel::Mask,
            DomainLabel::Tag,
            DomainLabel::Key,
            DomainLabel::Rej,
            DomainLabel::Pkh,
            DomainLabel::Wgen,
            DomainLabel::Agen,
            DomainLabel::Bgen,
            DomainLabel::UvGen,
            DomainLabel::Zsec,
        ]
    }
}

fn framed_shake(label: DomainLabel, data: &[u8]) -> Shake256 {
    let bytes = label.as_bytes();
    debug_assert!(bytes.len() <= u8::MAX as usize);
    let mut shake = Shake256::default();
    shake.update(&[bytes.len() as u8]);
    shake.update(bytes);
    shake.update(data);
    shake
}

/// Extendable-output hash under a registered domain label.
///
/// `out_bits` must be a positive multiple of 8. Labels come from the closed
/// [`DomainLabel`] registry, so the "unregistered label" failure mode is
/// unrepresentable here.
pub fn xof(label: DomainLabel, data: &[u8], out_bits: usize) -> Vec<u8> {
    assert!(
        out_bits > 0 && out_bits.is_multiple_of(8),
        "out_bits must be a positive multiple of 8"
    );
    probe::count_xof();
    let mut out = vec![0u8; out_bits / 8];
    framed_shake(label, data).finalize_xof().read(&mut out);
    out
}

/// Unbounded byte stream under a registered domain label.
///
/// Same framing as [`xof`]; used wherever rejection sampling needs an
/// open-ended supply of deterministic bytes.
pub fn xof_stream(label: DomainLabel, data: &[u8]) -> XofStream {
    probe::count_xof();
    XofStream {
        reader: Box::new(framed_shake(label, data).finalize_xof()),
    }
}

/// Deterministic byte stream with uniform integer sampling.
pub struct XofStream {
    reader: Box<dyn XofReader>,
}

impl XofStream {
    /// Byte stream over raw, unframed seed material. For internal expansion
    /// of seeds that were already domain-separated by the caller.
    pub(crate) fn from_raw_seed(seed: &[u8]) -> XofStream {
        probe::count_xof();
        let mut shake = Shake256::default();
        shake.update(seed);
        XofStream {
            reader: Box::new(shake.finalize_xof()),
        }
    }

    /// Next `buf.len()` bytes of the stream.
    pub fn fill(&mut self, buf: &mut [u8]) {
        self.reader.read(buf);
    }

    fn next_u64(&mut self) -> u64 {
        let mut buf = [0u8; 8];
        self.reader.read(&mut buf);
        u64::from_be_bytes(buf)
    }

    /// Uniform draw from [0, bound), by rejection so there is no modulo
    /// bias. `bound` must be nonzero.
    pub fn uniform(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        // Largest multiple of `bound` that fits in a u64.
        let limit = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let v = self.next_u64();
            if v <= limit {
                return v % bound;
            }
        }
    }
}

/// H1: 256-bit random oracle (label `"mask"`).
pub fn h1(data: &[u8]) -> Vec<u8> {
    xof(DomainLabel::Mask, data, RHO_BITS)
}

/// H2: 256-bit tag oracle (label `"tag"`).
pub fn h2(data: &[u8]) -> Vec<u8> {
    xof(DomainLabel::Tag, data, KAPPA_TAG_BITS)
}

/// KDF: κ-bit key derivation (label `"key"`).
pub fn kdf(data: &[u8], kappa_bits: usize) -> Vec<u8> {
    xof(DomainLabel::Key, data, kappa_bits)
}

/// Output width of [`h1`] — and of the signing randomness ρ.
pub const RHO_BITS: usize = 256;

/// Output width of [`h2`] — the tag length.
pub const KAPPA_TAG_BITS: usize = 256;
