//! Public parameter profiles.
//!
//! A [`Params`] value fixes everything both parties must agree on before
//! running the protocols: the prime field GF(p) the group matrices live in,
//! the matrix dimension n, the public exponent multiplier σ, the round count
//! R, the shared-secret bit length κ, and the polynomial sampler bounds
//! (degree d, inclusive coefficient bound `exp_max`).
//!
//! Exponent matrices are reduced modulo p − 1, the order of the
//! multiplicative group GF(p)*; that modulus is a composite ring, not a
//! field, and nothing here ever inverts in it.

use crate::error::{Error, Result};

/// Identifies one of the named, wire-serializable profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    /// Desk-scale profile from the reference experiments:
    /// p = 997, n = 5, σ = 3, R = 1, κ = 64, expMax = 9.
    Toy997,
    /// Production-shaped profile: p = 2^32 − 5 (the largest 32-bit prime),
    /// n = 7, σ = 3, R = 1, κ = 256, d = 3, expMax = 2^16 − 1.
    L5N7,
    /// Tiny profile for exhaustive search and brute-force experiments:
    /// p = 11, n = 2, d = 1, expMax = 2.
    Micro,
}

impl Profile {
    /// The 1-byte params-id used as a header on serialized keys.
    pub fn id(self) -> u8 {
        match self {
            Profile::Toy997 => 0x01,
            Profile::L5N7 => 0x02,
            Profile::Micro => 0x03,
        }
    }

    /// Inverse of [`Profile::id`].
    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            0x01 => Ok(Profile::Toy997),
            0x02 => Ok(Profile::L5N7),
            0x03 => Ok(Profile::Micro),
            other => Err(Error::UnknownProfile(other)),
        }
    }

    /// The profile's command-line / file name.
    pub fn name(self) -> &'static str {
        match self {
            Profile::Toy997 => "toy-997",
            Profile::L5N7 => "l5-n7",
            Profile::Micro => "micro",
        }
    }

    /// Parses a profile name as used on the command line.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "toy-997" => Ok(Profile::Toy997),
            "l5-n7" => Ok(Profile::L5N7),
            "micro" => Ok(Profile::Micro),
            _ => Err(Error::InvalidParams("unknown profile name")),
        }
    }
}

/// A validated public parameter set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    profile: Option<Profile>,
    p: u64,
    n: usize,
    sigma: u64,
    rounds: usize,
    kappa: usize,
    d: usize,
    exp_max: u64,
}

impl Params {
    /// Builds and validates a custom parameter set.
    ///
    /// Custom sets have no params-id, so objects built from them cannot be
    /// serialized with the key/ciphertext codecs; the named profiles cover
    /// that. Validation enforces: p prime, 5 ≤ p < 2^32 (entries must fit
    /// 32 bits so exponent products fit in double-width arithmetic),
    /// n ≥ 1, R in [1, 255], σ in [1, p−2], κ a positive multiple of 8,
    /// 1 ≤ d ≤ n and 1 ≤ expMax ≤ p−2.
    pub fn custom(
        p: u64,
        n: usize,
        sigma: u64,
        rounds: usize,
        kappa: usize,
        d: usize,
        exp_max: u64,
    ) -> Result<Self> {
        let params = Params {
            profile: None,
            p,
            n,
            sigma,
            rounds,
            kappa,
            d,
            exp_max,
        };
        params.validate()?;
        Ok(params)
    }

    /// The `toy-997` profile (p = 997, n = 5, σ = 3, R = 1, κ = 64,
    /// d = 3, expMax = 9).
    pub fn toy_997() -> Self {
        Params {
            profile: Some(Profile::Toy997),
            p: 997,
            n: 5,
            sigma: 3,
            rounds: 1,
            kappa: 64,
            d: 3,
            exp_max: 9,
        }
    }

    /// The `l5-n7` profile (p = 2^32 − 5, n = 7, σ = 3, R = 1, κ = 256,
    /// d = 3, expMax = 2^16 − 1).
    pub fn l5_n7() -> Self {
        Params {
            profile: Some(Profile::L5N7),
            p: (1u64 << 32) - 5,
            n: 7,
            sigma: 3,
            rounds: 1,
            kappa: 256,
            d: 3,
            exp_max: (1 << 16) - 1,
        }
    }

    /// The `micro` profile (p = 11, n = 2, σ = 3, R = 1, κ = 16, d = 1,
    /// expMax = 2). Small enough that the whole key space can be walked.
    pub fn micro() -> Self {
        Params {
            profile: Some(Profile::Micro),
            p: 11,
            n: 2,
            sigma: 3,
            rounds: 1,
            kappa: 16,
            d: 1,
            exp_max: 2,
        }
    }

    /// Looks a named profile up by its [`Profile`] tag.
    pub fn named(profile: Profile) -> Self {
        match profile {
            Profile::Toy997 => Params::toy_997(),
            Profile::L5N7 => Params::l5_n7(),
            Profile::Micro => Params::micro(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidParams("p must be prime"));
        }
        if self.p < 5 {
            return Err(Error::InvalidParams("p must be at least 5"));
        }
        if self.p > u64::from(u32::MAX) {
            return Err(Error::InvalidParams("p must fit in 32 bits"));
        }
        if self.n < 1 {
            return Err(Error::InvalidParams("n must be at least 1"));
        }
        if self.rounds < 1 || self.rounds > 255 {
            return Err(Error::InvalidParams("R must be in [1, 255]"));
        }
        if self.sigma < 1 || self.sigma > self.p - 2 {
            return Err(Error::InvalidParams("sigma must be in [1, p-2]"));
        }
        if self.kappa == 0 || !self.kappa.is_multiple_of(8) {
            return Err(Error::InvalidParams(
                "kappa must be a positive multiple of 8",
            ));
        }
        if self.d < 1 || self.d > self.n {
            return Err(Error::InvalidParams("d must be in [1, n]"));
        }
        if self.exp_max < 1 || self.exp_max > self.p - 2 {
            return Err(Error::InvalidParams("expMax must be in [1, p-2]"));
        }
        Ok(())
    }

    /// The named profile this set came from, if any.
    pub fn profile(&self) -> Option<Profile> {
        self.profile
    }

    /// Prime modulus of the group matrix field GF(p).
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Matrix dimension n (all matrices are n×n).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Public exponent multiplier σ.
    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    /// Round count R.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Shared-secret / message length κ in bits.
    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// κ in bytes.
    pub fn kappa_bytes(&self) -> usize {
        self.kappa / 8
    }

    /// Degree of the commuting-matrix sampling polynomials.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Inclusive upper bound on sampled polynomial coefficients.
    pub fn exp_max(&self) -> u64 {
        self.exp_max
    }

    /// Modulus of the exponent ring, p − 1.
    pub fn exp_modulus(&self) -> u64 {
        self.p - 1
    }

    /// Bytes needed to encode one field element: ceil(bits(p) / 8).
    pub fn entry_bytes(&self) -> usize {
        let bits = 64 - self.p.leading_zeros() as usize;
        bits.div_ceil(8)
    }
}

fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    if v.is_multiple_of(2) {
        return v == 2;
    }
    let mut f = 3u64;
    while f * f <= v {
        if v.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}
