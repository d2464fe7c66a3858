//! Bit-exact serialization.
//!
//! All integers are big-endian, fixed width: one field element takes
//! `entry_bytes = ceil(bits(p)/8)` bytes. Matrices are row-major, rounds
//! concatenated in order r = 1..R. Object layouts:
//!
//! ```text
//! pk  = params-id ∥ A ∥ B ∥ W ∥ TB_1..R
//! sk  = params-id ∥ seed (32 bytes) ∥ z (32 bytes)
//! ct  = TA_enc ∥ c_mask (κ/8 bytes) ∥ tag (32 bytes)
//! sig = len(σ_0) as u32 ∥ σ_0 ∥ t (32 bytes)
//! ```
//!
//! The 1-byte params-id pins the profile; decoding an unknown id is a
//! framing error, as is any length mismatch. Custom (unnamed) parameter
//! sets encode with id 0x00 and cannot be decoded.
//!
//! Decoding group matrices is deliberately lenient about entry ranges:
//! a ciphertext whose TA entries fall outside [1, p−1] still decodes —
//! entries are reduced into range — but carries a `false` validity flag,
//! which decapsulation folds into its implicit-rejection decision. That
//! keeps malformed ciphertexts on the same code path as tampered ones.

use crate::algebra::{ExponentMatrix, GroupMatrix};
use crate::dsa::Signature;
use crate::error::{Error, Result};
use crate::kem::{Ciphertext, KemPublicKey, KemSecretKey};
use crate::params::{Params, Profile};

/// params-id byte used when a custom parameter set is encoded.
pub const CUSTOM_PARAMS_ID: u8 = 0x00;

fn push_entry(out: &mut Vec<u8>, value: u64, entry_bytes: usize) {
    let be = value.to_be_bytes();
    out.extend_from_slice(&be[8 - entry_bytes..]);
}

fn read_entry(bytes: &[u8], entry_bytes: usize) -> u64 {
    let mut be = [0u8; 8];
    be[8 - entry_bytes..].copy_from_slice(&bytes[..entry_bytes]);
    u64::from_be_bytes(be)
}

fn encode_entries(out: &mut Vec<u8>, entries: &[u64], entry_bytes: usize) {
    for &e in entries {
        push_entry(out, e, entry_bytes);
    }
}

fn decode_raw_entries(bytes: &[u8], entry_bytes: usize) -> Vec<u64> {
    bytes
        .chunks_exact(entry_bytes)
        .map(|c| read_entry(c, entry_bytes))
        .collect()
}

/// Encodes a sequence of group matrices (`Encode(TA_1, …, TA_R)`).
///
/// Output length is `count · n² · entry_bytes`.
pub fn encode_group_matrices(ms: &[GroupMatrix], params: &Params) -> Vec<u8> {
    let eb = params.entry_bytes();
    let mut out = Vec::with_capacity(ms.len() * params.n() * params.n() * eb);
    for m in ms {
        debug_assert_eq!(m.dim(), params.n());
        encode_entries(&mut out, m.entries(), eb);
    }
    out
}

/// Decodes R group matrices, tolerating out-of-range entries.
///
/// A wrong total length is a hard framing error. Entries outside
/// [1, p−1] are reduced mod p (with 0 mapped to 1) and flip the returned
/// validity flag to `false`; the KEM consumes that flag to force implicit
/// rejection while still executing the full computation path.
pub fn decode_group_matrices(bytes: &[u8], params: &Params) -> Result<(Vec<GroupMatrix>, bool)> {
    let n = params.n();
    let eb = params.entry_bytes();
    let expected = params.rounds() * n * n * eb;
    if bytes.len() != expected {
        return Err(Error::Framing {
            expected,
            actual: bytes.len(),
        });
    }
    let p = params.p();
    let mut valid = true;
    let mut out = Vec::with_capacity(params.rounds());
    for chunk in bytes.chunks_exact(n * n * eb) {
        let entries: Vec<u64> = decode_raw_entries(chunk, eb)
            .into_iter()
            .map(|e| {
                if e == 0 || e >= p {
                    valid = false;
                    let r = e % p;
                    if r == 0 {
                        1
                    } else {
                        r
                    }
                } else {
                    e
                }
            })
            .collect();
        out.push(GroupMatrix::from_entries(n, entries, p).expect("entries reduced into range"));
    }
    Ok((out, valid))
}

fn decode_exponent_matrix(bytes: &[u8], params: &Params) -> Result<ExponentMatrix> {
    let entries = decode_raw_entries(bytes, params.entry_bytes());
    ExponentMatrix::from_entries(params.n(), entries, params.exp_modulus())
}

fn decode_strict_group_matrix(bytes: &[u8], params: &Params) -> Result<GroupMatrix> {
    let entries = decode_raw_entries(bytes, params.entry_bytes());
    GroupMatrix::from_entries(params.n(), entries, params.p())
}

/// Serialized public key length for a parameter set.
pub fn pk_len(params: &Params) -> usize {
    let mat = params.n() * params.n() * params.entry_bytes();
    1 + (3 + params.rounds()) * mat
}

/// Serialized secret key length (params-id ∥ seed ∥ z).
pub const SK_BODY_LEN: usize = 64;

/// Serialized ciphertext length for a parameter set.
pub fn ct_len(params: &Params) -> usize {
    params.rounds() * params.n() * params.n() * params.entry_bytes() + params.kappa_bytes() + 32
}

/// Encodes a public key: params-id ∥ A ∥ B ∥ W ∥ TB_1..R.
pub fn encode_pk(pk: &KemPublicKey) -> Vec<u8> {
    let params = pk.params();
    let eb = params.entry_bytes();
    let mut out = Vec::with_capacity(pk_len(params));
    out.push(params.profile().map_or(CUSTOM_PARAMS_ID, Profile::id));
    encode_entries(&mut out, pk.base_left().entries(), eb);
    encode_entries(&mut out, pk.base_right().entries(), eb);
    encode_entries(&mut out, pk.w().entries(), eb);
    for tb in pk.tb() {
        encode_entries(&mut out, tb.entries(), eb);
    }
    out
}

/// Decodes a public key, validating lengths, entry ranges and the
/// singular-base null vectors.
pub fn decode_pk(bytes: &[u8]) -> Result<KemPublicKey> {
    if bytes.is_empty() {
        return Err(Error::Framing {
            expected: 1,
            actual: 0,
        });
    }
    let params = Params::named(Profile::from_id(bytes[0])?);
    let expected = pk_len(&params);
    if bytes.len() != expected {
        return Err(Error::Framing {
            expected,
            actual: bytes.len(),
        });
    }
    let mat = params.n() * params.n() * params.entry_bytes();
    let mut off = 1;
    let mut take = |len: usize| {
        let s = &bytes[off..off + len];
        off += len;
        s
    };
    let a = decode_exponent_matrix(take(mat), &params)?;
    let b = decode_exponent_matrix(take(mat), &params)?;
    let w = decode_strict_group_matrix(take(mat), &params)?;
    let mut tb = Vec::with_capacity(params.rounds());
    for _ in 0..params.rounds() {
        tb.push(decode_strict_group_matrix(take(mat), &params)?);
    }
    KemPublicKey::assemble(params, a, b, w, tb)
}

/// Encodes a secret key: params-id ∥ seed ∥ z. Decapsulation re-expands
/// the round secrets from the seed, so this is all a secret key is.
pub fn encode_sk(sk: &KemSecretKey) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + SK_BODY_LEN);
    out.push(
        sk.pk()
            .params()
            .profile()
            .map_or(CUSTOM_PARAMS_ID, Profile::id),
    );
    out.extend_from_slice(sk.seed());
    out.extend_from_slice(sk.fallback());
    out
}

/// Decodes a secret key and rebuilds the paired public key from the seed.
///
/// The fallback secret z is taken from the wire, not re-derived.
pub fn decode_sk(bytes: &[u8]) -> Result<KemSecretKey> {
    if bytes.is_empty() {
        return Err(Error::Framing {
            expected: 1 + SK_BODY_LEN,
            actual: 0,
        });
    }
    let params = Params::named(Profile::from_id(bytes[0])?);
    if bytes.len() != 1 + SK_BODY_LEN {
        return Err(Error::Framing {
            expected: 1 + SK_BODY_LEN,
            actual: bytes.len(),
        });
    }
    let mut seed = [0u8; 32];
    seed.copy_from_slice(&bytes[1..33]);
    let mut z = [0u8; 32];
    z.copy_from_slice(&bytes[33..65]);
    let (_, sk) = crate::kem::keygen(&seed, &params);
    Ok(sk.with_fallback(z))
}

/// Encodes a ciphertext: TA_enc ∥ c_mask ∥ tag.
pub fn encode_ct(ct: &Ciphertext) -> Vec<u8> {
    let mut out = Vec::with_capacity(ct.ta_enc().len() + ct.c_mask().len() + 32);
    out.extend_from_slice(ct.ta_enc());
    out.extend_from_slice(ct.c_mask());
    out.extend_from_slice(ct.tag());
    out
}

/// Splits a ciphertext by the fixed section lengths of `params`.
pub fn decode_ct(bytes: &[u8], params: &Params) -> Result<Ciphertext> {
    let expected = ct_len(params);
    if bytes.len() != expected {
        return Err(Error::Framing {
            expected,
            actual: bytes.len(),
        });
    }
    let ta_len = params.rounds() * params.n() * params.n() * params.entry_bytes();
    let kb = params.kappa_bytes();
    let mut tag = [0u8; 32];
    tag.copy_from_slice(&bytes[ta_len + kb..]);
    Ok(Ciphertext::from_parts(
        bytes[..ta_len].to_vec(),
        bytes[ta_len..ta_len + kb].to_vec(),
        tag,
    ))
}

/// Encodes a signature: len(σ_0) as big-endian u32 ∥ σ_0 ∥ t.
pub fn encode_sig(sig: &Signature) -> Vec<u8> {
    let sigma0 = sig.sigma0();
    let mut out = Vec::with_capacity(4 + sigma0.len() + 32);
    out.extend_from_slice(&(sigma0.len() as u32).to_be_bytes());
    out.extend_from_slice(sigma0);
    out.extend_from_slice(sig.tag());
    out
}

/// Decodes a signature, validating the total length against the prefix.
pub fn decode_sig(bytes: &[u8]) -> Result<Signature> {
    if bytes.len() < 4 + 32 {
        return Err(Error::Framing {
            expected: 4 + 32,
            actual: bytes.len(),
        });
    }
    let len = u32::from_be_bytes(bytes[..4].try_into().expect("4 bytes")) as usize;
    let expected = 4 + len + 32;
    if bytes.len() != expected {
        return Err(Error::Framing {
            expected,
            actual: bytes.len(),
        });
    }
    let mut tag = [0u8; 32];
    tag.copy_from_slice(&bytes[4 + len..]);
    Ok(Signature::from_parts(bytes[4..4 + len].to_vec(), tag))
}
