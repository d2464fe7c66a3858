//! Exhaustive key recovery at micro scale.
//!
//! The attack the security table prices out: walk every coefficient pair
//! the secret sampler could have drawn, evaluate U′ = q_u(A), V′ = q_v(B),
//! and test rdmpf(U′, W, V′) against the published TB_r. Any hit is an
//! equivalent key — it decapsulates everything the true key does, whether
//! or not the coefficients match the planted ones. The search space is
//! ((expMax+1)^d − 1)² pairs per round and a hard guard refuses anything
//! above 2^24, which keeps this honest: it is a validation instrument for
//! the micro profile, not an attack on real parameters.

use std::fmt;

use rdmpf::algebra::{poly_eval_matrix, rdmpf, ExponentMatrix};
use rdmpf::kem::{self, Ciphertext, KemPublicKey, SharedKey};

/// Hard ceiling on the number of (U′, V′) pairs per round.
pub const SEARCH_SPACE_LIMIT: u128 = 1 << 24;

/// Why a recovery attempt was refused or failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForceError {
    /// The coefficient space is too large for a desk-scale search.
    SearchSpaceExceeded {
        /// Candidate pairs the parameters would require.
        pairs: u128,
        /// The enforced ceiling.
        limit: u128,
    },
    /// No candidate reproduced TB_r. Cannot happen for honestly generated
    /// keys (the planted coefficients are inside the space).
    NoEquivalentKey { round: usize },
}

impl fmt::Display for BruteForceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BruteForceError::SearchSpaceExceeded { pairs, limit } => {
                write!(f, "search space of {pairs} pairs exceeds the {limit} limit")
            }
            BruteForceError::NoEquivalentKey { round } => {
                write!(f, "no equivalent key found for round {round}")
            }
        }
    }
}

impl std::error::Error for BruteForceError {}

/// An equivalent secret recovered by exhaustive search.
#[derive(Debug, Clone)]
pub struct RecoveredKey {
    /// Per-round coefficient vectors (u, v) that reproduce TB_r.
    pub coefficients: Vec<(Vec<u64>, Vec<u64>)>,
    /// The matrices those coefficients evaluate to.
    pub rounds: Vec<(ExponentMatrix, ExponentMatrix)>,
    /// Candidate pairs examined across all rounds.
    pub pairs_tried: u64,
}

impl RecoveredKey {
    /// Decapsulates a ciphertext with the recovered matrices. The
    /// fallback secret is not recoverable from pk, so rejected
    /// ciphertexts yield a key the true owner would not produce —
    /// honest ciphertexts decapsulate identically.
    pub fn decaps(&self, pk: &KemPublicKey, ct: &Ciphertext) -> SharedKey {
        kem::decaps_with_rounds(pk, &self.rounds, &[0u8; 32], ct)
    }
}

fn coefficient_vectors(d: usize, exp_max: u64) -> Vec<Vec<u64>> {
    // Odometer enumeration of [0, expMax]^d, all-zero excluded.
    let mut out = Vec::new();
    let mut current = vec![0u64; d];
    loop {
        if current.iter().any(|&c| c != 0) {
            out.push(current.clone());
        }
        let mut pos = d;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if current[pos] < exp_max {
                current[pos] += 1;
                current[pos + 1..].fill(0);
                break;
            }
        }
    }
}

/// Recovers an equivalent secret for every round of `pk` by exhaustive
/// search over the polynomial coefficient space.
pub fn brute_force_recover(pk: &KemPublicKey) -> Result<RecoveredKey, BruteForceError> {
    let params = pk.params();
    let candidates_per_side = (u128::from(params.exp_max()) + 1).pow(params.d() as u32) - 1;
    let pairs = candidates_per_side * candidates_per_side;
    if pairs > SEARCH_SPACE_LIMIT {
        return Err(BruteForceError::SearchSpaceExceeded {
            pairs,
            limit: SEARCH_SPACE_LIMIT,
        });
    }

    let modulus = params.exp_modulus();
    let vectors = coefficient_vectors(params.d(), params.exp_max());
    let u_candidates: Vec<(Vec<u64>, ExponentMatrix)> = vectors
        .iter()
        .map(|c| {
            (
                c.clone(),
                poly_eval_matrix(c, pk.base_left(), modulus).expect("non-zero"),
            )
        })
        .collect();
    let v_candidates: Vec<(Vec<u64>, ExponentMatrix)> = vectors
        .iter()
        .map(|c| {
            (
                c.clone(),
                poly_eval_matrix(c, pk.base_right(), modulus).expect("non-zero"),
            )
        })
        .collect();

    let mut coefficients = Vec::with_capacity(params.rounds());
    let mut rounds = Vec::with_capacity(params.rounds());
    let mut pairs_tried = 0u64;
    for (round, tb) in pk.tb().iter().enumerate() {
        let mut hit = None;
        'search: for (cu, u) in &u_candidates {
            for (cv, v) in &v_candidates {
                pairs_tried += 1;
                let candidate = rdmpf(u, pk.w(), v, params).expect("matched dimensions");
                if candidate == *tb {
                    hit = Some(((cu.clone(), cv.clone()), (u.clone(), v.clone())));
                    break 'search;
                }
            }
        }
        match hit {
            Some((coeffs, matrices)) => {
                coefficients.push(coeffs);
                rounds.push(matrices);
            }
            None => return Err(BruteForceError::NoEquivalentKey { round }),
        }
    }
    Ok(RecoveredKey {
        coefficients,
        rounds,
        pairs_tried,
    })
}
