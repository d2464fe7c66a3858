//! Key encapsulation with re-encryption verification and implicit
//! rejection.
//!
//! The scheme is the matrix-power analogue of a hashed-ElGamal KEM run
//! through the Fujisaki–Okamoto transform. One round works like this
//! (R rounds run independently in parallel):
//!
//! * **KeyGen** — from a 32-byte seed derive singular bases A (left) and
//!   B (right), a public unit matrix W, and, per round, secret exponent
//!   matrices U_r = q_u(A), V_r = q_v(B) sampled as zero-constant-term
//!   polynomials of the bases. Publish TB_r = rdmpf(U_r, W, V_r); keep
//!   (seed, z) where z is the implicit-rejection fallback secret.
//! * **Encaps** — hash the message m (the caller's κ-bit coins) to
//!   polynomial matrices X_r = q_x(A), Y_r = q_y(B); send
//!   TA_r = rdmpf(X_r, W, Y_r) plus m masked under a hash of the shared
//!   value S_r = rdmpf(X_r, TB_r, Y_r) and an authentication tag.
//! * **Decaps** — recover S'_r = rdmpf(U_r, TA_r, V_r), unmask a
//!   candidate m′, *re-encrypt* it, and accept only if the re-encryption
//!   reproduces TA_enc and the tag matches. On any mismatch the output is
//!   not an error but kdf(h1(z ∥ ct ∥ 0xFF) ∥ ct ∥ 0x01) — a key that is
//!   deterministic in (z, ct) and useless to a decryption oracle.
//!
//! Correctness rests on the composition law: S′ and S are the two nesting
//! orders of the same double application, equal because polynomials in a
//! shared base commute. Both decapsulation branches are always computed
//! and the result is chosen by constant-time selection.

use subtle::{Choice, ConditionallySelectable, ConstantTimeEq};

use crate::algebra::{
    gen_singular_base, poly_eval_matrix, rdmpf, sample_coeffs, BaseSide, ExponentMatrix,
    GroupMatrix,
};
use crate::codec;
use crate::error::{Error, Result};
use crate::hashing::{h1, h2, kdf, xof, xof_stream, DomainLabel, RHO_BITS};
use crate::params::Params;

/// Public key: the parameter set, both singular bases, the public unit
/// matrix W and the per-round commitments TB_r. The serialized form is
/// cached at construction because every hash in the protocols binds it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KemPublicKey {
    params: Params,
    a: ExponentMatrix,
    b: ExponentMatrix,
    w: GroupMatrix,
    tb: Vec<GroupMatrix>,
    encoded: Vec<u8>,
}

impl KemPublicKey {
    /// Assembles and validates a public key from its parts.
    ///
    /// Checks dimensions, the round count, and the singular-base
    /// invariants 𝟙·A ≡ 0 and B·𝟙ᵀ ≡ 0 (mod p−1).
    pub fn assemble(
        params: Params,
        a: ExponentMatrix,
        b: ExponentMatrix,
        w: GroupMatrix,
        tb: Vec<GroupMatrix>,
    ) -> Result<Self> {
        let n = params.n();
        for dim in [a.dim(), b.dim(), w.dim()]
            .into_iter()
            .chain(tb.iter().map(|m| m.dim()))
        {
            if dim != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: dim,
                });
            }
        }
        if tb.len() != params.rounds() {
            return Err(Error::DimensionMismatch {
                expected: params.rounds(),
                actual: tb.len(),
            });
        }
        let m = params.exp_modulus();
        if a.ones_row_product(m).iter().any(|&v| v != 0) {
            return Err(Error::InvalidKey(
                "left base is not annihilated by the ones vector",
            ));
        }
        if b.ones_col_product(m).iter().any(|&v| v != 0) {
            return Err(Error::InvalidKey(
                "right base does not annihilate the ones vector",
            ));
        }
        let mut pk = KemPublicKey {
            params,
            a,
            b,
            w,
            tb,
            encoded: Vec::new(),
        };
        pk.encoded = codec::encode_pk(&pk);
        Ok(pk)
    }

    /// Parameter set the key was generated under.
    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Left singular base A (𝟙·A ≡ 0 mod p−1).
    pub fn base_left(&self) -> &ExponentMatrix {
        &self.a
    }

    /// Right singular base B (B·𝟙ᵀ ≡ 0 mod p−1).
    pub fn base_right(&self) -> &ExponentMatrix {
        &self.b
    }

    /// Public group matrix W.
    pub fn w(&self) -> &GroupMatrix {
        &self.w
    }

    /// Round commitments TB_r = rdmpf(U_r, W, V_r).
    pub fn tb(&self) -> &[GroupMatrix] {
        &self.tb
    }

    /// Cached serialized form (the byte string hashed in transcripts).
    pub fn encoded(&self) -> &[u8] {
        &self.encoded
    }
}

/// Secret key: the 32-byte expansion seed, the fallback secret z, and the
/// paired public key. U_r and V_r are re-expanded from the seed on use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KemSecretKey {
    seed: [u8; 32],
    z: [u8; 32],
    pk: KemPublicKey,
}

impl KemSecretKey {
    /// The expansion seed.
    pub fn seed(&self) -> &[u8; 32] {
        &self.seed
    }

    /// The implicit-rejection fallback secret, stored separately from the
    /// seed-expansion path.
    pub fn fallback(&self) -> &[u8; 32] {
        &self.z
    }

    /// The paired public key.
    pub fn pk(&self) -> &KemPublicKey {
        &self.pk
    }

    /// Replaces the fallback secret (wire decoding keeps the transmitted
    /// z rather than re-deriving it).
    pub(crate) fn with_fallback(mut self, z: [u8; 32]) -> Self {
        self.z = z;
        self
    }

    /// Expands the seed to the per-round secret pairs (U_r, V_r) — the
    /// same expansion decapsulation performs.
    pub fn round_secrets(&self) -> Vec<(ExponentMatrix, ExponentMatrix)> {
        expand_round_secrets(
            &self.seed,
            self.pk.base_left(),
            self.pk.base_right(),
            self.pk.params(),
        )
    }
}

/// Ciphertext: encoded TA matrices, the masked message, and the tag.
/// Section lengths are fixed by the profile; constructors enforce them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    ta_enc: Vec<u8>,
    c_mask: Vec<u8>,
    tag: [u8; 32],
}

impl Ciphertext {
    pub(crate) fn from_parts(ta_enc: Vec<u8>, c_mask: Vec<u8>, tag: [u8; 32]) -> Self {
        Ciphertext {
            ta_enc,
            c_mask,
            tag,
        }
    }

    /// Encode(TA_1, …, TA_R).
    pub fn ta_enc(&self) -> &[u8] {
        &self.ta_enc
    }

    /// m XOR mask — κ/8 bytes.
    pub fn c_mask(&self) -> &[u8] {
        &self.c_mask
    }

    /// Authentication tag.
    pub fn tag(&self) -> &[u8; 32] {
        &self.tag
    }
}

/// The κ-bit shared secret.
#[derive(Clone, PartialEq, Eq)]
pub struct SharedKey(Vec<u8>);

impl SharedKey {
    /// Key bytes (κ/8 of them).
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl core::fmt::Debug for SharedKey {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "SharedKey({})", hex::encode(&self.0))
    }
}

fn expand_round_secrets(
    seed: &[u8; 32],
    a: &ExponentMatrix,
    b: &ExponentMatrix,
    params: &Params,
) -> Vec<(ExponentMatrix, ExponentMatrix)> {
    let m = params.exp_modulus();
    let mut rounds = Vec::with_capacity(params.rounds());
    for r in 1..=params.rounds() {
        let mut data = seed.to_vec();
        data.push(r as u8);
        let mut stream = xof_stream(DomainLabel::UvGen, &data);
        let cu = sample_coeffs(&mut stream, params);
        let cv = sample_coeffs(&mut stream, params);
        let u = poly_eval_matrix(&cu, a, m).expect("sampler never returns all-zero");
        let v = poly_eval_matrix(&cv, b, m).expect("sampler never returns all-zero");
        rounds.push((u, v));
    }
    rounds
}

/// Deterministic key generation from a 32-byte seed.
pub fn keygen(seed: &[u8; 32], params: &Params) -> (KemPublicKey, KemSecretKey) {
    let a_seed = xof(DomainLabel::Agen, seed, 256);
    let b_seed = xof(DomainLabel::Bgen, seed, 256);
    let a = gen_singular_base(&a_seed, BaseSide::Left, params);
    let b = gen_singular_base(&b_seed, BaseSide::Right, params);

    let n = params.n();
    let mut w_stream = xof_stream(DomainLabel::Wgen, seed);
    let w_entries: Vec<u64> = (0..n * n)
        .map(|_| w_stream.uniform(params.p() - 1) + 1)
        .collect();
    let w = GroupMatrix::from_entries(n, w_entries, params.p()).expect("entries in [1, p-1]");

    let rounds = expand_round_secrets(seed, &a, &b, params);
    let tb = rounds
        .iter()
        .map(|(u, v)| rdmpf(u, &w, v, params).expect("matched dimensions"))
        .collect();

    let pk = KemPublicKey::assemble(params.clone(), a, b, w, tb)
        .expect("generated keys satisfy the invariants");
    let mut z = [0u8; 32];
    z.copy_from_slice(&xof(DomainLabel::Zsec, seed, 256));
    let sk = KemSecretKey {
        seed: *seed,
        z,
        pk: pk.clone(),
    };
    (pk, sk)
}

/// Expands a κ-bit message to the per-round pairs (X_r, Y_r).
///
/// X_r and Y_r are zero-constant-term polynomials of the public bases, so
/// X_r commutes with U_r and Y_r with V_r — the property decapsulation
/// relies on — and both inherit the bases' null vectors.
pub fn map_to_xy(m: &[u8], pk: &KemPublicKey) -> Vec<(ExponentMatrix, ExponentMatrix)> {
    let params = pk.params();
    assert_eq!(
        m.len(),
        params.kappa_bytes(),
        "message must be exactly kappa bits"
    );
    let modulus = params.exp_modulus();
    let mut out = Vec::with_capacity(params.rounds());
    for r in 1..=params.rounds() {
        let mut data = Vec::with_capacity(m.len() + pk.encoded().len() + 1);
        data.extend_from_slice(m);
        data.extend_from_slice(pk.encoded());
        data.push(r as u8);
        let mut stream = xof_stream(DomainLabel::Xy, &data);
        let cx = sample_coeffs(&mut stream, params);
        let cy = sample_coeffs(&mut stream, params);
        let x = poly_eval_matrix(&cx, pk.base_left(), modulus).expect("non-zero coeffs");
        let y = poly_eval_matrix(&cy, pk.base_right(), modulus).expect("non-zero coeffs");
        out.push((x, y));
    }
    out
}

fn mask_bytes(z_key: &[u8], ta_enc: &[u8], pk: &KemPublicKey) -> Vec<u8> {
    let kappa = pk.params().kappa();
    let mut data = Vec::with_capacity(z_key.len() + ta_enc.len() + pk.encoded().len());
    data.extend_from_slice(z_key);
    data.extend_from_slice(ta_enc);
    data.extend_from_slice(pk.encoded());
    // mask[0..κ−1] of the 256-bit h1 output; widened when κ > 256.
    xof(DomainLabel::Mask, &data, RHO_BITS.max(kappa))
}

fn tag_bytes(m: &[u8], ta_enc: &[u8], pk: &KemPublicKey) -> [u8; 32] {
    let mut data = Vec::with_capacity(m.len() + ta_enc.len() + pk.encoded().len());
    data.extend_from_slice(m);
    data.extend_from_slice(ta_enc);
    data.extend_from_slice(pk.encoded());
    let mut tag = [0u8; 32];
    tag.copy_from_slice(&h2(&data));
    tag
}

fn xor_into(dst: &mut [u8], src: &[u8]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Encapsulation. `coins` are the κ-bit message m; the whole computation
/// is a deterministic function of (pk, coins).
pub fn encaps(pk: &KemPublicKey, coins: &[u8]) -> (Ciphertext, SharedKey) {
    let params = pk.params();
    assert_eq!(
        coins.len(),
        params.kappa_bytes(),
        "coins must be exactly kappa bits"
    );
    let kappa = params.kappa();

    let xy = map_to_xy(coins, pk);
    let mut ta = Vec::with_capacity(params.rounds());
    let mut s = Vec::with_capacity(params.rounds());
    for ((x, y), tb) in xy.iter().zip(pk.tb()) {
        ta.push(rdmpf(x, pk.w(), y, params).expect("matched dimensions"));
        s.push(rdmpf(x, tb, y, params).expect("matched dimensions"));
    }
    let ta_enc = codec::encode_group_matrices(&ta, params);
    let s_enc = codec::encode_group_matrices(&s, params);

    let z_key = kdf(&s_enc, kappa);
    let mask = mask_bytes(&z_key, &ta_enc, pk);
    let mut c_mask = coins.to_vec();
    xor_into(&mut c_mask, &mask);
    let tag = tag_bytes(coins, &ta_enc, pk);

    let ct = Ciphertext {
        ta_enc,
        c_mask,
        tag,
    };
    let ct_bytes = codec::encode_ct(&ct);

    let mut k_input = z_key;
    k_input.extend_from_slice(&ct_bytes);
    k_input.push(0x00);
    let k = kdf(&k_input, kappa);
    (ct, SharedKey(k))
}

/// Encapsulation with caller-injected randomness: draws the κ coin bits
/// from `rng` and delegates to [`encaps`].
pub fn encaps_with_rng(
    pk: &KemPublicKey,
    rng: &mut (impl rand_core::CryptoRngCore + ?Sized),
) -> (Ciphertext, SharedKey) {
    let mut coins = vec![0u8; pk.params().kappa_bytes()];
    rng.fill_bytes(&mut coins);
    encaps(pk, &coins)
}

/// Decapsulation with an explicit secret-matrix list, fallback secret and
/// validity flag. [`decaps`] wraps this with seed expansion; the
/// brute-force oracle calls it directly with a recovered equivalent key.
///
/// Both the accept and reject keys are always computed; the output is
/// chosen by constant-time selection on the comparison results.
pub fn decaps_with_rounds(
    pk: &KemPublicKey,
    rounds: &[(ExponentMatrix, ExponentMatrix)],
    fallback: &[u8; 32],
    ct: &Ciphertext,
) -> SharedKey {
    let params = pk.params();
    let kappa = params.kappa();
    assert_eq!(rounds.len(), params.rounds());

    let (ta, ta_valid) =
        codec::decode_group_matrices(&ct.ta_enc, params).expect("ciphertext framing");

    let s_prime: Vec<GroupMatrix> = rounds
        .iter()
        .zip(&ta)
        .map(|((u, v), ta_r)| rdmpf(u, ta_r, v, params).expect("matched dimensions"))
        .collect();
    let s_enc = codec::encode_group_matrices(&s_prime, params);
    let z_key = kdf(&s_enc, kappa);

    let mask = mask_bytes(&z_key, &ct.ta_enc, pk);
    let mut m_prime = ct.c_mask.clone();
    xor_into(&mut m_prime, &mask);

    let xy = map_to_xy(&m_prime, pk);
    let ta2: Vec<GroupMatrix> = xy
        .iter()
        .map(|(x, y)| rdmpf(x, pk.w(), y, params).expect("matched dimensions"))
        .collect();
    let ta2_enc = codec::encode_group_matrices(&ta2, params);
    let tag_prime = tag_bytes(&m_prime, &ct.ta_enc, pk);

    let ct_bytes = codec::encode_ct(ct);

    let mut accept_input = z_key;
    accept_input.extend_from_slice(&ct_bytes);
    accept_input.push(0x00);
    let k_accept = kdf(&accept_input, kappa);

    let mut rho_input = fallback.to_vec();
    rho_input.extend_from_slice(&ct_bytes);
    rho_input.push(0xFF);
    let rho = h1(&rho_input);
    let mut reject_input = rho;
    reject_input.extend_from_slice(&ct_bytes);
    reject_input.push(0x01);
    let k_reject = kdf(&reject_input, kappa);

    let accept: Choice =
        ta2_enc.ct_eq(&ct.ta_enc) & tag_prime.ct_eq(&ct.tag) & Choice::from(ta_valid as u8);

    let k: Vec<u8> = k_reject
        .iter()
        .zip(&k_accept)
        .map(|(&r, &a)| u8::conditional_select(&r, &a, accept))
        .collect();
    SharedKey(k)
}

/// Decapsulation. Never fails on semantically invalid ciphertexts — any
/// failed check yields the deterministic rejection key instead.
pub fn decaps(sk: &KemSecretKey, ct: &Ciphertext) -> SharedKey {
    decaps_with_rounds(&sk.pk, &sk.round_secrets(), &sk.z, ct)
}

/// Returns the fallback secret z in constant time (it is a fixed field
/// read; no secret-dependent branching exists on this path).
pub fn secret_fallback(sk: &KemSecretKey) -> [u8; 32] {
    sk.z
}
