//! Deterministic signing with implicit rejection.
//!
//! This module is a combinator: it takes any inner signature scheme whose
//! signing accepts explicit randomness, derandomizes it, binds each
//! signature to its message and public key with a tag, and replaces the
//! verifier's failure branch with a pseudorandom placeholder:
//!
//! ```text
//! Sign(sk, M):    r = H1('r' ∥ M ∥ pk)          — hash-derived randomness
//!                 σ₀ = InnerSign(sk, M; r)
//!                 t = H2('t' ∥ σ₀ ∥ M ∥ pk)
//!                 σ = (σ₀, t)
//!
//! Verify(pk, M, σ): run InnerVerify AND recompute t — always both —
//!                 accept iff both hold, otherwise return reject* carrying
//!                 H2('z' ∥ z ∥ σ₀ ∥ M), a 32-byte value the caller cannot
//!                 tell apart from a valid tag.
//! ```
//!
//! Signing the same message twice yields bit-identical signatures; there
//! is no nonce to misuse. The placeholder is deterministic in (z, σ₀, M),
//! so a forger probing the verifier learns nothing from the reject path.
//!
//! The default inner scheme, [`MerkleLamport`], is a hash-based one-time
//! signature tree: bit-length chains at the leaves (with the usual
//! flip-protection checksum) compressed under a Merkle root. The leaf
//! index is derived from the signing randomness, so distinct messages can
//! land on the same leaf — acceptable for a desk-scale stand-in, not for
//! production use of the one-time scheme.

use subtle::ConstantTimeEq;

use crate::hashing::{h1, h2, xof, DomainLabel};

mod merkle_lamport;

pub use merkle_lamport::MerkleLamport;

/// An inner signature scheme with externalized signing randomness.
pub trait InnerSignatureScheme {
    /// Verification key (becomes the public key of the combinator).
    type VerifyKey: Clone;
    /// Signing key.
    type SignKey;

    /// Deterministic key generation from a 32-byte seed.
    fn inner_keygen(&self, seed: &[u8; 32]) -> (Self::VerifyKey, Self::SignKey);

    /// Signs `msg` using the supplied randomness. Must be a deterministic
    /// function of (key, msg, randomness).
    fn inner_sign(&self, key: &Self::SignKey, msg: &[u8], randomness: &[u8; 32]) -> Vec<u8>;

    /// Verifies an inner signature. Must not panic on malformed input.
    fn inner_verify(&self, key: &Self::VerifyKey, msg: &[u8], sigma0: &[u8]) -> bool;

    /// Fixed σ₀ length for this scheme instance.
    fn signature_len(&self) -> usize;

    /// Canonical byte encoding of a verification key, as bound into the
    /// signing and tag transcripts.
    fn verify_key_bytes(&self, key: &Self::VerifyKey) -> Vec<u8>;
}

/// A signature: the inner σ₀ plus the 32-byte binding tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    sigma0: Vec<u8>,
    tag: [u8; 32],
}

impl Signature {
    pub(crate) fn from_parts(sigma0: Vec<u8>, tag: [u8; 32]) -> Self {
        Signature { sigma0, tag }
    }

    /// Inner signature bytes.
    pub fn sigma0(&self) -> &[u8] {
        &self.sigma0
    }

    /// Binding tag t.
    pub fn tag(&self) -> &[u8; 32] {
        &self.tag
    }
}

/// Fixed-length pseudorandom stand-in returned on rejection. Exactly as
/// long as a tag and deterministic per (z, σ₀, M).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RejectToken(pub [u8; 32]);

/// Verification result. Rejection is a value, never an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyOutcome {
    /// The inner signature and the tag both check out.
    Accept,
    /// reject* — carries the pseudorandom placeholder.
    RejectStar(RejectToken),
}

impl VerifyOutcome {
    /// True for [`VerifyOutcome::Accept`].
    pub fn is_accept(&self) -> bool {
        matches!(self, VerifyOutcome::Accept)
    }
}

/// Public key of the combinator: the inner verification key, its cached
/// encoding, and the rejection secret z.
///
/// z is held with the key pair. A verifier that was not handed z derives
/// a local one with [`DsaPublicKey::with_local_reject_secret`]; the
/// placeholder is never checked by counterparties, so the substitution is
/// observable only by whoever compares placeholders.
#[derive(Clone)]
pub struct DsaPublicKey<S: InnerSignatureScheme> {
    scheme: S,
    verify_key: S::VerifyKey,
    encoded: Vec<u8>,
    z: [u8; 32],
}

impl<S: InnerSignatureScheme> DsaPublicKey<S> {
    /// Canonical encoding of the verification key (z is not part of it).
    pub fn encoded(&self) -> &[u8] {
        &self.encoded
    }

    /// The inner verification key.
    pub fn verify_key(&self) -> &S::VerifyKey {
        &self.verify_key
    }

    /// The scheme instance this key belongs to.
    pub fn scheme(&self) -> &S {
        &self.scheme
    }

    /// Replaces z with one derived from a verifier-local seed.
    pub fn with_local_reject_secret(mut self, local_seed: &[u8; 32]) -> Self {
        let z = xof(DomainLabel::Zsec, local_seed, 256);
        self.z.copy_from_slice(&z);
        self
    }
}

/// Secret key of the combinator.
pub struct DsaSecretKey<S: InnerSignatureScheme> {
    sign_key: S::SignKey,
    pk: DsaPublicKey<S>,
}

impl<S: InnerSignatureScheme> DsaSecretKey<S> {
    /// The paired public key.
    pub fn pk(&self) -> &DsaPublicKey<S> {
        &self.pk
    }
}

/// Key generation: delegates to the inner scheme and derives the
/// rejection secret z from the same seed.
pub fn keygen_ds<S: InnerSignatureScheme + Clone>(
    scheme: &S,
    seed: &[u8; 32],
) -> (DsaPublicKey<S>, DsaSecretKey<S>) {
    let (verify_key, sign_key) = scheme.inner_keygen(seed);
    let encoded = scheme.verify_key_bytes(&verify_key);
    let mut z = [0u8; 32];
    z.copy_from_slice(&xof(DomainLabel::Zsec, seed, 256));
    let pk = DsaPublicKey {
        scheme: scheme.clone(),
        verify_key,
        encoded,
        z,
    };
    let sk = DsaSecretKey {
        sign_key,
        pk: pk.clone(),
    };
    (pk, sk)
}

/// Deterministic signing: same (key, M) — same signature, bit for bit.
pub fn sign_ds<S: InnerSignatureScheme>(sk: &DsaSecretKey<S>, msg: &[u8]) -> Signature {
    let pk = &sk.pk;
    let mut r_input = DomainLabel::R.as_bytes().to_vec();
    r_input.extend_from_slice(msg);
    r_input.extend_from_slice(pk.encoded());
    let r_bytes = h1(&r_input);
    let mut randomness = [0u8; 32];
    randomness.copy_from_slice(&r_bytes);

    let sigma0 = pk.scheme.inner_sign(&sk.sign_key, msg, &randomness);
    debug_assert_eq!(sigma0.len(), pk.scheme.signature_len());
    let tag = compute_tag(&sigma0, msg, pk.encoded());
    Signature { sigma0, tag }
}

fn compute_tag(sigma0: &[u8], msg: &[u8], pk_bytes: &[u8]) -> [u8; 32] {
    let mut input = DomainLabel::T.as_bytes().to_vec();
    input.extend_from_slice(sigma0);
    input.extend_from_slice(msg);
    input.extend_from_slice(pk_bytes);
    let mut tag = [0u8; 32];
    tag.copy_from_slice(&h2(&input));
    tag
}

/// Verification with implicit rejection.
///
/// The inner verification, the tag recomputation and the placeholder are
/// all computed unconditionally; the tag comparison is constant-time.
pub fn verify_ds<S: InnerSignatureScheme>(
    pk: &DsaPublicKey<S>,
    msg: &[u8],
    sig: &Signature,
) -> VerifyOutcome {
    let valid = pk.scheme.inner_verify(&pk.verify_key, msg, &sig.sigma0);
    let tag_prime = compute_tag(&sig.sigma0, msg, pk.encoded());

    let mut placeholder_input = DomainLabel::Z.as_bytes().to_vec();
    placeholder_input.extend_from_slice(&pk.z);
    placeholder_input.extend_from_slice(&sig.sigma0);
    placeholder_input.extend_from_slice(msg);
    let placeholder_bytes = h2(&placeholder_input);
    let mut placeholder = [0u8; 32];
    placeholder.copy_from_slice(&placeholder_bytes);

    let tags_match: bool = tag_prime.ct_eq(&sig.tag).into();
    if valid && tags_match {
        VerifyOutcome::Accept
    } else {
        VerifyOutcome::RejectStar(RejectToken(placeholder))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probe;

    fn scheme() -> MerkleLamport {
        MerkleLamport::with_height(4)
    }

    #[test]
    fn keygen_is_deterministic_and_seed_sensitive() {
        let s = scheme();
        let (pk1, _) = keygen_ds(&s, &[1u8; 32]);
        let (pk2, _) = keygen_ds(&s, &[1u8; 32]);
        let (pk3, _) = keygen_ds(&s, &[2u8; 32]);
        assert_eq!(pk1.encoded(), pk2.encoded());
        assert_ne!(pk1.encoded(), pk3.encoded());
        assert_eq!(pk1.z.len(), 32);
    }

    #[test]
    fn signing_is_deterministic() {
        let (_, sk) = keygen_ds(&scheme(), &[3u8; 32]);
        let sig1 = sign_ds(&sk, b"hello");
        let sig2 = sign_ds(&sk, b"hello");
        assert_eq!(sig1, sig2);
    }

    #[test]
    fn honest_signatures_accept() {
        let (pk, sk) = keygen_ds(&scheme(), &[4u8; 32]);
        for msg in [&b"alpha"[..], b"beta", b""] {
            assert!(verify_ds(&pk, msg, &sign_ds(&sk, msg)).is_accept());
        }
    }

    #[test]
    fn nearby_messages_get_different_signatures() {
        let (_, sk) = keygen_ds(&scheme(), &[5u8; 32]);
        let sig_a = sign_ds(&sk, b"message 0");
        let sig_b = sign_ds(&sk, b"message 1");
        assert_ne!(sig_a.sigma0(), sig_b.sigma0());
        assert_ne!(sig_a.tag(), sig_b.tag());
    }

    #[test]
    fn tampered_message_rejects_with_stable_placeholder() {
        let (pk, sk) = keygen_ds(&scheme(), &[6u8; 32]);
        let sig = sign_ds(&sk, b"payload");
        let o1 = verify_ds(&pk, b"pay1oad", &sig);
        let o2 = verify_ds(&pk, b"pay1oad", &sig);
        match (o1, o2) {
            (VerifyOutcome::RejectStar(a), VerifyOutcome::RejectStar(b)) => assert_eq!(a, b),
            other => panic!("expected reject*, got {other:?}"),
        }
    }

    #[test]
    fn tampered_tag_rejects() {
        let (pk, sk) = keygen_ds(&scheme(), &[7u8; 32]);
        let sig = sign_ds(&sk, b"payload");
        let mut tag = *sig.tag();
        tag[0] ^= 0x01;
        let forged = Signature::from_parts(sig.sigma0().to_vec(), tag);
        assert!(!verify_ds(&pk, b"payload", &forged).is_accept());
    }

    #[test]
    fn placeholders_differ_across_sigma0_and_z() {
        let (pk, sk) = keygen_ds(&scheme(), &[8u8; 32]);
        let sig_a = sign_ds(&sk, b"a");
        let sig_b = sign_ds(&sk, b"b");
        // Cross-wire the signatures so both reject.
        let ra = match verify_ds(&pk, b"b", &sig_a) {
            VerifyOutcome::RejectStar(t) => t,
            _ => panic!("expected reject*"),
        };
        let rb = match verify_ds(&pk, b"a", &sig_b) {
            VerifyOutcome::RejectStar(t) => t,
            _ => panic!("expected reject*"),
        };
        assert_ne!(ra, rb);

        let pk_local = pk.clone().with_local_reject_secret(&[9u8; 32]);
        let ra_local = match verify_ds(&pk_local, b"b", &sig_a) {
            VerifyOutcome::RejectStar(t) => t,
            _ => panic!("expected reject*"),
        };
        assert_ne!(ra, ra_local);
    }

    #[test]
    fn verify_runs_inner_check_on_both_paths() {
        let (pk, sk) = keygen_ds(&scheme(), &[10u8; 32]);
        let sig = sign_ds(&sk, b"counted");

        let before = probe::snapshot();
        let _ = verify_ds(&pk, b"counted", &sig);
        let accept_work = probe::snapshot().since(&before);

        let before = probe::snapshot();
        let _ = verify_ds(&pk, b"c0unted", &sig);
        let reject_work = probe::snapshot().since(&before);

        assert_eq!(accept_work.inner_verify, 1);
        assert_eq!(reject_work.inner_verify, 1);
        assert_eq!(accept_work.xof, reject_work.xof);
    }

    #[test]
    fn placeholder_bits_look_balanced() {
        // Coarse sanity check only: across many placeholders, the ones
        // density should be near one half.
        let (pk, sk) = keygen_ds(&scheme(), &[11u8; 32]);
        let mut ones = 0u32;
        let mut total = 0u32;
        for i in 0..64u8 {
            let sig = sign_ds(&sk, &[i]);
            if let VerifyOutcome::RejectStar(RejectToken(t)) = verify_ds(&pk, &[i, 1], &sig) {
                ones += t.iter().map(|b| b.count_ones()).sum::<u32>();
                total += 256;
            }
        }
        let density = f64::from(ones) / f64::from(total);
        assert!((0.45..0.55).contains(&density), "density {density}");
    }
}
