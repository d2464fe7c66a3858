//! Brute-force security estimates for the core matrix function.
//!
//! Recovering the private material behind one public round means solving
//! for one full n×n matrix (W) and two rank-deficient matrices with
//! (n−1)² free parameters each:
//!
//! ```text
//! unknowns(n) = n² + 2(n−1)² = 3n² − 4n + 2
//! ```
//!
//! With 32-bit entries the classical search cost is 32·unknowns bits and
//! the quantum cost is half that (Grover). The reported NIST level maps
//! every parameter set with ≥ 512 classical bits to level 5; the halved
//! quantum figure is carried alongside so readers can apply their own
//! judgement to that mapping.

/// One row of the security table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SecurityEstimate {
    /// Matrix dimension n.
    pub n: u64,
    /// Unknown entries to brute-force: 3n² − 4n + 2.
    pub unknowns: u64,
    /// Bits per unknown entry.
    pub bits_per_entry: u64,
    /// Classical search cost in bits.
    pub bits_classical: u64,
    /// Quantum (Grover-halved) cost in bits.
    pub bits_quantum: u64,
    /// Claimed NIST PQC classical security level.
    pub nist_level: u8,
}

/// Computes the estimate for dimension `n` (n ≥ 2) and a given entry width.
pub fn security_estimate(n: u64, bits_per_entry: u64) -> SecurityEstimate {
    assert!(n >= 2, "estimate is defined for n >= 2");
    let unknowns = 3 * n * n - 4 * n + 2;
    let bits_classical = bits_per_entry * unknowns;
    let bits_quantum = bits_classical / 2;
    let nist_level = if bits_classical >= 512 {
        5
    } else if bits_quantum >= 192 {
        3
    } else if bits_quantum >= 128 {
        1
    } else {
        0
    };
    SecurityEstimate {
        n,
        unknowns,
        bits_per_entry,
        bits_classical,
        bits_quantum,
        nist_level,
    }
}

/// Dimensions listed in the reference security table.
pub const TABLE_DIMENSIONS: [u64; 6] = [3, 5, 7, 10, 15, 20];

/// The full reference table at 32-bit entries.
pub fn security_table() -> Vec<SecurityEstimate> {
    TABLE_DIMENSIONS
        .iter()
        .map(|&n| security_estimate(n, 32))
        .collect()
}
