//! Hash-based one-time signatures under a Merkle tree.
//!
//! Each leaf holds 265 one-step hash chains: 256 for the bits of a
//! SHAKE256 message digest and 9 for the checksum that prevents 0→1 digit
//! flips. A digit q reveals the chain value after q applications of the
//! chain hash, so the verifier can always reach the chain end, rebuild
//! the leaf, and walk the authentication path to the root. The root is
//! the verification key.
//!
//! The leaf index comes from the combinator's hash-derived randomness
//! (r mod 2^h). Two distinct messages can therefore land on the same
//! leaf; with one-time keys at the leaves that is a real reuse and this
//! instantiation is a test-scale stand-in, not a hardened scheme.

use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

use super::InnerSignatureScheme;
use crate::probe;

const HASH_LEN: usize = 32;
const DIGEST_BITS: usize = 256;
const CHECKSUM_DIGITS: usize = 9; // ceil(log2(256 + 1))
const CHAINS: usize = DIGEST_BITS + CHECKSUM_DIGITS;

// Internal domain tags. All ≥ 0x80 so they can never collide with the
// length-prefixed label framing of the protocol XOF (first byte ≤ 5).
const TAG_SECRET: u8 = 0x80;
const TAG_CHAIN: u8 = 0x81;
const TAG_LEAF: u8 = 0x82;
const TAG_NODE: u8 = 0x83;
const TAG_MSG: u8 = 0x84;

fn tagged_hash(tag: u8, parts: &[&[u8]]) -> [u8; HASH_LEN] {
    let mut shake = Shake256::default();
    shake.update(&[tag]);
    for part in parts {
        shake.update(part);
    }
    let mut out = [0u8; HASH_LEN];
    shake.finalize_xof().read(&mut out);
    out
}

/// The default inner scheme: one-time hash chains under a Merkle tree of
/// height `h`, giving 2^h leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MerkleLamport {
    height: u32,
}

impl MerkleLamport {
    /// Scheme with the default tree height of 10 (1024 leaves).
    pub fn new() -> Self {
        MerkleLamport { height: 10 }
    }

    /// Scheme with an explicit tree height in [1, 20].
    pub fn with_height(height: u32) -> Self {
        assert!((1..=20).contains(&height), "tree height must be in [1, 20]");
        MerkleLamport { height }
    }

    /// Tree height h.
    pub fn height(&self) -> u32 {
        self.height
    }

    fn leaves(&self) -> u32 {
        1 << self.height
    }

    fn chain_secret(seed: &[u8; 32], leaf: u32, chain: u16) -> [u8; HASH_LEN] {
        tagged_hash(
            TAG_SECRET,
            &[seed, &leaf.to_be_bytes(), &chain.to_be_bytes()],
        )
    }

    fn chain_step(leaf: u32, chain: u16, value: &[u8; HASH_LEN]) -> [u8; HASH_LEN] {
        tagged_hash(
            TAG_CHAIN,
            &[&leaf.to_be_bytes(), &chain.to_be_bytes(), value],
        )
    }

    fn leaf_hash(leaf: u32, ends: &[[u8; HASH_LEN]]) -> [u8; HASH_LEN] {
        let mut shake = Shake256::default();
        shake.update(&[TAG_LEAF]);
        shake.update(&leaf.to_be_bytes());
        for end in ends {
            shake.update(end);
        }
        let mut out = [0u8; HASH_LEN];
        shake.finalize_xof().read(&mut out);
        out
    }

    fn node_hash(index: u32, left: &[u8; HASH_LEN], right: &[u8; HASH_LEN]) -> [u8; HASH_LEN] {
        tagged_hash(TAG_NODE, &[&index.to_be_bytes(), left, right])
    }

    /// 265 digits: the 256 digest bits (MSB first) followed by the 9-bit
    /// checksum Σ(1 − bit), also MSB first.
    fn digits(root: &[u8; HASH_LEN], leaf: u32, msg: &[u8]) -> [u8; CHAINS] {
        let digest = tagged_hash(TAG_MSG, &[root, &leaf.to_be_bytes(), msg]);
        let mut digits = [0u8; CHAINS];
        let mut checksum: u16 = 0;
        for (i, d) in digits.iter_mut().take(DIGEST_BITS).enumerate() {
            *d = (digest[i / 8] >> (7 - i % 8)) & 1;
            checksum += u16::from(1 - *d);
        }
        for j in 0..CHECKSUM_DIGITS {
            digits[DIGEST_BITS + j] = ((checksum >> (CHECKSUM_DIGITS - 1 - j)) & 1) as u8;
        }
        digits
    }

    fn chain_ends(seed: &[u8; 32], leaf: u32) -> Vec<[u8; HASH_LEN]> {
        (0..CHAINS as u16)
            .map(|chain| {
                let secret = Self::chain_secret(seed, leaf, chain);
                Self::chain_step(leaf, chain, &secret)
            })
            .collect()
    }
}

impl Default for MerkleLamport {
    fn default() -> Self {
        MerkleLamport::new()
    }
}

/// Verification key: the Merkle root plus the tree height.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MerkleVerifyKey {
    root: [u8; HASH_LEN],
    height: u32,
}

impl MerkleVerifyKey {
    /// The Merkle root.
    pub fn root(&self) -> &[u8; HASH_LEN] {
        &self.root
    }
}

/// Signing key: the chain seed plus the full precomputed tree (heap
/// layout, node 1 is the root) for authentication paths.
pub struct MerkleSignKey {
    seed: [u8; 32],
    tree: Vec<[u8; HASH_LEN]>,
    height: u32,
}

impl InnerSignatureScheme for MerkleLamport {
    type VerifyKey = MerkleVerifyKey;
    type SignKey = MerkleSignKey;

    fn inner_keygen(&self, seed: &[u8; 32]) -> (MerkleVerifyKey, MerkleSignKey) {
        let leaves = self.leaves();
        let mut tree = vec![[0u8; HASH_LEN]; 2 * leaves as usize];
        for leaf in 0..leaves {
            let ends = Self::chain_ends(seed, leaf);
            tree[(leaves + leaf) as usize] = Self::leaf_hash(leaf, &ends);
        }
        for index in (1..leaves as usize).rev() {
            tree[index] = Self::node_hash(index as u32, &tree[2 * index], &tree[2 * index + 1]);
        }
        let vk = MerkleVerifyKey {
            root: tree[1],
            height: self.height,
        };
        let sk = MerkleSignKey {
            seed: *seed,
            tree,
            height: self.height,
        };
        (vk, sk)
    }

    fn inner_sign(&self, key: &MerkleSignKey, msg: &[u8], randomness: &[u8; 32]) -> Vec<u8> {
        probe::count_inner_sign();
        debug_assert_eq!(key.height, self.height);
        let leaves = self.leaves();
        let leaf = u32::from_be_bytes(randomness[..4].try_into().expect("4 bytes")) % leaves;
        let root = key.tree[1];
        let digits = Self::digits(&root, leaf, msg);

        let mut sigma = Vec::with_capacity(self.signature_len());
        sigma.extend_from_slice(&leaf.to_be_bytes());
        for (chain, &digit) in digits.iter().enumerate() {
            let mut value = Self::chain_secret(&key.seed, leaf, chain as u16);
            if digit == 1 {
                value = Self::chain_step(leaf, chain as u16, &value);
            }
            sigma.extend_from_slice(&value);
        }
        let mut index = leaves + leaf;
        while index > 1 {
            sigma.extend_from_slice(&key.tree[(index ^ 1) as usize]);
            index /= 2;
        }
        sigma
    }

    fn inner_verify(&self, key: &MerkleVerifyKey, msg: &[u8], sigma0: &[u8]) -> bool {
        probe::count_inner_verify();
        if sigma0.len() != self.signature_len() {
            return false;
        }
        let leaves = self.leaves();
        let leaf = u32::from_be_bytes(sigma0[..4].try_into().expect("4 bytes"));
        if leaf >= leaves {
            return false;
        }
        let digits = Self::digits(&key.root, leaf, msg);

        let mut ends = Vec::with_capacity(CHAINS);
        for (chain, &digit) in digits.iter().enumerate() {
            let offset = 4 + chain * HASH_LEN;
            let mut value = [0u8; HASH_LEN];
            value.copy_from_slice(&sigma0[offset..offset + HASH_LEN]);
            if digit == 0 {
                value = Self::chain_step(leaf, chain as u16, &value);
            }
            ends.push(value);
        }

        let mut node = Self::leaf_hash(leaf, &ends);
        let mut index = leaves + leaf;
        let mut offset = 4 + CHAINS * HASH_LEN;
        while index > 1 {
            let mut sibling = [0u8; HASH_LEN];
            sibling.copy_from_slice(&sigma0[offset..offset + HASH_LEN]);
            offset += HASH_LEN;
            node = if index.is_multiple_of(2) {
                Self::node_hash(index / 2, &node, &sibling)
            } else {
                Self::node_hash(index / 2, &sibling, &node)
            };
            index /= 2;
        }
        node == key.root
    }

    fn signature_len(&self) -> usize {
        4 + (CHAINS + self.height as usize) * HASH_LEN
    }

    fn verify_key_bytes(&self, key: &MerkleVerifyKey) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + HASH_LEN);
        out.push(key.height as u8);
        out.extend_from_slice(&key.root);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_verify_round_trip() {
        let scheme = MerkleLamport::with_height(3);
        let (vk, sk) = scheme.inner_keygen(&[1u8; 32]);
        let sigma = scheme.inner_sign(&sk, b"round trip", &[0x42; 32]);
        assert_eq!(sigma.len(), scheme.signature_len());
        assert!(scheme.inner_verify(&vk, b"round trip", &sigma));
    }

    #[test]
    fn flipping_one_revealed_byte_rejects() {
        let scheme = MerkleLamport::with_height(3);
        let (vk, sk) = scheme.inner_keygen(&[2u8; 32]);
        let mut sigma = scheme.inner_sign(&sk, b"tamper", &[0x11; 32]);
        sigma[100] ^= 0x01; // inside a chain value
        assert!(!scheme.inner_verify(&vk, b"tamper", &sigma));
    }

    #[test]
    fn wrong_length_and_oversized_leaf_index_reject_cleanly() {
        let scheme = MerkleLamport::with_height(3);
        let (vk, sk) = scheme.inner_keygen(&[3u8; 32]);
        let sigma = scheme.inner_sign(&sk, b"m", &[0x07; 32]);
        assert!(!scheme.inner_verify(&vk, b"m", &sigma[..sigma.len() - 1]));
        let mut forged = sigma.clone();
        forged[0] = 0xFF; // leaf index far beyond 2^3
        assert!(!scheme.inner_verify(&vk, b"m", &forged));
    }

    #[test]
    fn signature_length_depends_only_on_height() {
        assert_eq!(
            MerkleLamport::with_height(3).signature_len(),
            4 + (265 + 3) * 32
        );
        assert_eq!(MerkleLamport::new().signature_len(), 4 + (265 + 10) * 32);
    }

    #[test]
    fn randomness_selects_the_leaf() {
        let scheme = MerkleLamport::with_height(3);
        let (vk, sk) = scheme.inner_keygen(&[4u8; 32]);
        let mut r = [0u8; 32];
        r[3] = 5;
        let sigma = scheme.inner_sign(&sk, b"leaf", &r);
        assert_eq!(u32::from_be_bytes(sigma[..4].try_into().unwrap()), 5);
        assert!(scheme.inner_verify(&vk, b"leaf", &sigma));
    }
}
