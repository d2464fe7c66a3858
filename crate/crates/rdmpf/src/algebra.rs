//! Matrix arithmetic over GF(p) and the exponent ring Z_{p−1}, and the
//! rank-deficient matrix power function itself.
//!
//! Two kinds of matrix appear everywhere:
//!
//! * [`ExponentMatrix`] — entries in Z_{p−1}, the ring of exponents of the
//!   multiplicative group GF(p)*. Secrets and message-derived matrices live
//!   here. Z_{p−1} is composite for every odd prime p; all arithmetic is
//!   plain modular add/multiply and nothing ever inverts in it.
//! * [`GroupMatrix`] — entries in [1, p−1] ⊂ GF(p). Because every entry is
//!   a unit, raising entries to arbitrary exponents and multiplying the
//!   results keeps everything in [1, p−1].
//!
//! The matrix power function maps (X, W, Y) to Q with
//!
//! ```text
//! Q[i,j] = ∏_{K,L} W[K,L]^( σ·X[i,K]·Y[L,j] mod (p−1) )  mod p
//! ```
//!
//! — an exponential-like extension of the matrix product X·W·Y. Its value
//! for key establishment comes from the composition identity: nesting two
//! applications multiplies exponent matrices, so
//! `rdmpf(U, rdmpf(X, W, Y), V) = rdmpf(X, rdmpf(U, W, V), Y)` whenever
//! U·X ≡ X·U and Y·V ≡ V·Y in Z_{p−1}. Both protocols manufacture those
//! commuting pairs as zero-constant-term polynomials of shared singular
//! base matrices, which also pins a public null vector (the all-ones
//! vector 𝟙) on every secret exponent matrix — the rank deficiency that
//! blocks linearization.

use crate::error::{Error, Result};
use crate::hashing::XofStream;
use crate::params::Params;
use crate::probe;

/// base^exp mod p by square-and-multiply, with the convention 0^0 = 1.
///
/// Runs in O(log exp) multiplications; intermediate products use 128-bit
/// arithmetic before reduction.
pub fn mod_pow(base: u64, exp: u64, p: u64) -> u64 {
    debug_assert!(base < p);
    let p128 = u128::from(p);
    let mut acc: u128 = 1;
    let mut b = u128::from(base);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p128;
        }
        b = b * b % p128;
        e >>= 1;
    }
    acc as u64
}

/// n×n matrix over the exponent ring Z_{p−1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    dim: usize,
    entries: Vec<u64>, // row-major
}

impl ExponentMatrix {
    /// Builds a matrix from row-major entries, checking every entry lies
    /// in [0, modulus−1].
    pub fn from_entries(dim: usize, entries: Vec<u64>, modulus: u64) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        for (i, &e) in entries.iter().enumerate() {
            if e >= modulus {
                return Err(Error::EntryOutOfRange { index: i, value: e });
            }
        }
        Ok(ExponentMatrix { dim, entries })
    }

    /// The n×n zero matrix.
    pub fn zero(dim: usize) -> Self {
        ExponentMatrix {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    /// The n×n identity.
    pub fn identity(dim: usize) -> Self {
        let mut m = ExponentMatrix::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        m
    }

    /// Matrix dimension n.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at (row, col), zero-indexed.
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: u64) {
        self.entries[row * self.dim + col] = value;
    }

    /// 𝟙·A mod `modulus` — the vector of column sums. All-zero exactly when
    /// the all-ones row vector annihilates the matrix from the left.
    pub fn ones_row_product(&self, modulus: u64) -> Vec<u64> {
        (0..self.dim)
            .map(|j| {
                let mut acc: u128 = 0;
                for i in 0..self.dim {
                    acc += u128::from(self.get(i, j));
                }
                (acc % u128::from(modulus)) as u64
            })
            .collect()
    }

    /// A·𝟙ᵀ mod `modulus` — the vector of row sums.
    pub fn ones_col_product(&self, modulus: u64) -> Vec<u64> {
        (0..self.dim)
            .map(|i| {
                let mut acc: u128 = 0;
                for j in 0..self.dim {
                    acc += u128::from(self.get(i, j));
                }
                (acc % u128::from(modulus)) as u64
            })
            .collect()
    }
}

/// n×n matrix with entries in [1, p−1] ⊂ GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMatrix {
    dim: usize,
    entries: Vec<u64>, // row-major
}

impl GroupMatrix {
    /// Builds a matrix from row-major entries, checking every entry lies
    /// in [1, p−1].
    pub fn from_entries(dim: usize, entries: Vec<u64>, p: u64) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        for (i, &e) in entries.iter().enumerate() {
            if e == 0 || e >= p {
                return Err(Error::EntryOutOfRange { index: i, value: e });
            }
        }
        Ok(GroupMatrix { dim, entries })
    }

    /// The all-ones matrix (the identity of entrywise products).
    pub fn all_ones(dim: usize) -> Self {
        GroupMatrix {
            dim,
            entries: vec![1; dim * dim],
        }
    }

    /// Matrix dimension n.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at (row, col), zero-indexed.
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim + col]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: u64) {
        self.entries[row * self.dim + col] = value;
    }
}

/// Standard matrix product with entries reduced mod `modulus`.
pub fn mat_mul_exp(a: &ExponentMatrix, b: &ExponentMatrix, modulus: u64) -> Result<ExponentMatrix> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            actual: b.dim,
        });
    }
    let n = a.dim;
    let m = u128::from(modulus);
    let mut out = ExponentMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc: u128 = 0;
            for k in 0..n {
                acc = (acc + u128::from(a.get(i, k)) * u128::from(b.get(k, j))) % m;
            }
            out.set(i, j, acc as u64);
        }
    }
    Ok(out)
}

fn mat_add_assign(acc: &mut ExponentMatrix, term: &ExponentMatrix, modulus: u64) {
    for (a, &t) in acc.entries.iter_mut().zip(term.entries.iter()) {
        *a = ((u128::from(*a) + u128::from(t)) % u128::from(modulus)) as u64;
    }
}

fn mat_scale(m: &ExponentMatrix, scalar: u64, modulus: u64) -> ExponentMatrix {
    let entries = m
        .entries
        .iter()
        .map(|&e| (u128::from(e) * u128::from(scalar) % u128::from(modulus)) as u64)
        .collect();
    ExponentMatrix {
        dim: m.dim,
        entries,
    }
}

/// The rank-deficient matrix power function with the σ variant.
///
/// `Q[i,j] = ∏_{K,L} w[K,L]^( σ·x[i,K]·y[L,j] mod (p−1) ) mod p`.
/// Every output entry is a product of powers of units, so the result stays
/// in [1, p−1].
pub fn rdmpf(
    x: &ExponentMatrix,
    w: &GroupMatrix,
    y: &ExponentMatrix,
    params: &Params,
) -> Result<GroupMatrix> {
    let n = params.n();
    if x.dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: x.dim,
        });
    }
    if w.dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: w.dim,
        });
    }
    if y.dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: y.dim,
        });
    }
    probe::count_rdmpf();

    let p = params.p();
    let p128 = u128::from(p);
    let exp_mod = u128::from(params.exp_modulus());
    let sigma = u128::from(params.sigma());

    let mut q = GroupMatrix::all_ones(n);
    for i in 0..n {
        for j in 0..n {
            let mut pr: u128 = 1;
            for big_k in 0..n {
                for big_l in 0..n {
                    let ex = sigma * u128::from(x.get(i, big_k)) % exp_mod
                        * u128::from(y.get(big_l, j))
                        % exp_mod;
                    let z = mod_pow(w.get(big_k, big_l), ex as u64, p);
                    pr = pr * u128::from(z) % p128;
                }
            }
            q.set(i, j, pr as u64);
        }
    }
    Ok(q)
}

/// Evaluates c₁·base + c₂·base² + … + c_d·base^d with all arithmetic
/// mod `modulus`.
///
/// The constant term is fixed at zero so any null vector of `base`
/// carries over to the result. An all-zero coefficient vector would
/// produce the zero matrix and is rejected; callers resample instead.
pub fn poly_eval_matrix(
    coeffs: &[u64],
    base: &ExponentMatrix,
    modulus: u64,
) -> Result<ExponentMatrix> {
    if coeffs.is_empty() || coeffs.iter().all(|&c| c == 0) {
        return Err(Error::AllZeroCoefficients);
    }
    let mut power = base.clone();
    let mut acc = mat_scale(&power, coeffs[0], modulus);
    for &c in &coeffs[1..] {
        power = mat_mul_exp(&power, base, modulus)?;
        if c != 0 {
            let term = mat_scale(&power, c, modulus);
            mat_add_assign(&mut acc, &term, modulus);
        }
    }
    Ok(acc)
}

/// Which side of the protocol a singular base serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseSide {
    /// Annihilated by 𝟙 from the left: 𝟙·A ≡ 0 (mod p−1).
    Left,
    /// Annihilates 𝟙ᵀ from the right: B·𝟙ᵀ ≡ 0 (mod p−1).
    Right,
}

/// Deterministically samples a singular base matrix from a seed.
///
/// For [`BaseSide::Left`] all rows but the last are drawn uniformly from
/// [0, p−2] and the last row is the negated sum of the others, forcing
/// every column to sum to zero mod p−1. [`BaseSide::Right`] is the
/// symmetric construction on columns. Every zero-constant-term polynomial
/// of the result inherits the same null vector, which is the testable
/// form of rank deficiency used throughout.
pub fn gen_singular_base(seed: &[u8], side: BaseSide, params: &Params) -> ExponentMatrix {
    let n = params.n();
    let m = params.exp_modulus();
    let mut stream = XofStream::from_raw_seed(seed);
    let mut mat = ExponentMatrix::zero(n);

    match side {
        BaseSide::Left => {
            for i in 0..n.saturating_sub(1) {
                for j in 0..n {
                    mat.set(i, j, stream.uniform(m));
                }
            }
            for j in 0..n {
                let mut sum: u128 = 0;
                for i in 0..n - 1 {
                    sum += u128::from(mat.get(i, j));
                }
                let rem = (sum % u128::from(m)) as u64;
                mat.set(n - 1, j, (m - rem) % m);
            }
        }
        BaseSide::Right => {
            for i in 0..n {
                for j in 0..n.saturating_sub(1) {
                    mat.set(i, j, stream.uniform(m));
                }
            }
            for i in 0..n {
                let mut sum: u128 = 0;
                for j in 0..n - 1 {
                    sum += u128::from(mat.get(i, j));
                }
                let rem = (sum % u128::from(m)) as u64;
                mat.set(i, n - 1, (m - rem) % m);
            }
        }
    }
    mat
}

/// Draws a length-d coefficient vector with entries in [0, expMax] from a
/// stream, redrawing until it is not all zero.
pub(crate) fn sample_coeffs(stream: &mut XofStream, params: &Params) -> Vec<u64> {
    let bound = params.exp_max() + 1;
    loop {
        let coeffs: Vec<u64> = (0..params.d()).map(|_| stream.uniform(bound)).collect();
        if coeffs.iter().any(|&c| c != 0) {
            return coeffs;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hashing::{xof_stream, DomainLabel};

    fn small_params() -> Params {
        Params::custom(11, 3, 3, 1, 16, 2, 9).unwrap()
    }

    fn random_exponent_matrix(stream: &mut XofStream, dim: usize, modulus: u64) -> ExponentMatrix {
        let entries = (0..dim * dim).map(|_| stream.uniform(modulus)).collect();
        ExponentMatrix::from_entries(dim, entries, modulus).unwrap()
    }

    fn random_group_matrix(stream: &mut XofStream, dim: usize, p: u64) -> GroupMatrix {
        let entries = (0..dim * dim).map(|_| stream.uniform(p - 1) + 1).collect();
        GroupMatrix::from_entries(dim, entries, p).unwrap()
    }

    #[test]
    fn mod_pow_small_cases() {
        assert_eq!(mod_pow(3, 4, 997), 81);
        assert_eq!(mod_pow(0, 0, 997), 1);
        assert_eq!(mod_pow(7, 0, 997), 1);
        assert_eq!(mod_pow(5, 996, 997), 1); // Fermat: 5^(p-1) ≡ 1
    }

    #[test]
    fn mod_pow_matches_naive_product() {
        for base in [2u64, 9, 10] {
            for exp in 0..30u64 {
                let mut naive = 1u64;
                for _ in 0..exp {
                    naive = naive * base % 11;
                }
                assert_eq!(mod_pow(base % 11, exp, 11), naive);
            }
        }
    }

    #[test]
    fn mat_mul_identity_and_zero() {
        let m = ExponentMatrix::from_entries(2, vec![1, 2, 3, 4], 10).unwrap();
        let id = ExponentMatrix::identity(2);
        let zero = ExponentMatrix::zero(2);
        assert_eq!(mat_mul_exp(&id, &m, 10).unwrap(), m);
        assert_eq!(mat_mul_exp(&m, &id, 10).unwrap(), m);
        assert_eq!(mat_mul_exp(&zero, &m, 10).unwrap(), zero);
    }

    #[test]
    fn mat_mul_matches_naive_triple_loop() {
        let modulus = 10u64;
        let mut stream = xof_stream(DomainLabel::Xy, b"matmul oracle");
        for _ in 0..50 {
            let a = random_exponent_matrix(&mut stream, 2, modulus);
            let b = random_exponent_matrix(&mut stream, 2, modulus);
            let fast = mat_mul_exp(&a, &b, modulus).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let mut acc = 0u64;
                    for k in 0..2 {
                        acc = (acc + a.get(i, k) * b.get(k, j)) % modulus;
                    }
                    assert_eq!(fast.get(i, j), acc);
                }
            }
        }
    }

    #[test]
    fn mat_mul_rejects_dimension_mismatch() {
        let a = ExponentMatrix::zero(2);
        let b = ExponentMatrix::zero(3);
        assert!(matches!(
            mat_mul_exp(&a, &b, 10),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rdmpf_zero_exponents_give_all_ones() {
        let params = small_params();
        let mut stream = xof_stream(DomainLabel::Xy, b"zero x");
        let w = random_group_matrix(&mut stream, 3, params.p());
        let y = random_exponent_matrix(&mut stream, 3, params.exp_modulus());
        let q = rdmpf(&ExponentMatrix::zero(3), &w, &y, &params).unwrap();
        assert_eq!(q, GroupMatrix::all_ones(3));
    }

    #[test]
    fn rdmpf_all_ones_w_gives_all_ones() {
        let params = small_params();
        let mut stream = xof_stream(DomainLabel::Xy, b"ones w");
        let x = random_exponent_matrix(&mut stream, 3, params.exp_modulus());
        let y = random_exponent_matrix(&mut stream, 3, params.exp_modulus());
        let q = rdmpf(&x, &GroupMatrix::all_ones(3), &y, &params).unwrap();
        assert_eq!(q, GroupMatrix::all_ones(3));
    }

    #[test]
    fn rdmpf_one_hot_w_isolates_a_single_factor() {
        // With W all ones except W[1,0] = g (zero-indexed), only the
        // (K=1, L=0) factor survives: Q[i,j] = g^(σ·x[i,1]·y[0,j]).
        let params = small_params();
        let p = params.p();
        let m = params.exp_modulus();
        let g = 7u64;
        let mut w = GroupMatrix::all_ones(3);
        w.set(1, 0, g);
        let mut stream = xof_stream(DomainLabel::Xy, b"one hot");
        let x = random_exponent_matrix(&mut stream, 3, m);
        let y = random_exponent_matrix(&mut stream, 3, m);
        let q = rdmpf(&x, &w, &y, &params).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let ex = params.sigma() * x.get(i, 1) % m * y.get(0, j) % m;
                assert_eq!(q.get(i, j), mod_pow(g, ex, p));
            }
        }
    }

    #[test]
    fn rdmpf_doubling_an_exponent_squares_its_factors() {
        // Bilinearity spot check via the one-hot W: doubling x[i,1]
        // squares Q[i,j].
        let params = small_params();
        let m = params.exp_modulus();
        let mut w = GroupMatrix::all_ones(3);
        w.set(1, 0, 7);
        let mut stream = xof_stream(DomainLabel::Xy, b"bilinear");
        let x = random_exponent_matrix(&mut stream, 3, m);
        let y = random_exponent_matrix(&mut stream, 3, m);
        let mut x2 = x.clone();
        for i in 0..3 {
            x2.set(i, 1, x.get(i, 1) * 2 % m);
        }
        let q = rdmpf(&x, &w, &y, &params).unwrap();
        let q2 = rdmpf(&x2, &w, &y, &params).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let sq = q.get(i, j) * q.get(i, j) % params.p();
                assert_eq!(q2.get(i, j), sq);
            }
        }
    }

    #[test]
    fn rdmpf_1x1_matches_direct_power() {
        // rdmpf([[2]], [[3]], [[4]]) at p=997, σ=3: exponent 3·2·4 = 24.
        let params = Params::custom(997, 1, 3, 1, 16, 1, 9).unwrap();
        let x = ExponentMatrix::from_entries(1, vec![2], 996).unwrap();
        let w = GroupMatrix::from_entries(1, vec![3], 997).unwrap();
        let y = ExponentMatrix::from_entries(1, vec![4], 996).unwrap();
        let q = rdmpf(&x, &w, &y, &params).unwrap();
        // Independent route: 3^24 fits in u128 exactly.
        let direct = 3u128.pow(24) % 997;
        assert_eq!(u128::from(q.get(0, 0)), direct);
        assert_eq!(q.get(0, 0), 603);
    }

    #[test]
    fn rdmpf_outputs_stay_in_unit_range() {
        let params = small_params();
        let mut stream = xof_stream(DomainLabel::Xy, b"closure");
        for _ in 0..20 {
            let x = random_exponent_matrix(&mut stream, 3, params.exp_modulus());
            let y = random_exponent_matrix(&mut stream, 3, params.exp_modulus());
            let w = random_group_matrix(&mut stream, 3, params.p());
            let q = rdmpf(&x, &w, &y, &params).unwrap();
            assert!(q.entries().iter().all(|&e| e >= 1 && e < params.p()));
        }
    }

    #[test]
    fn poly_eval_degree_one_is_identity_on_base() {
        let m = 10u64;
        let base = ExponentMatrix::from_entries(2, vec![1, 2, 3, 4], m).unwrap();
        let out = poly_eval_matrix(&[1], &base, m).unwrap();
        assert_eq!(out, base);
    }

    #[test]
    fn poly_eval_matches_naive_horner() {
        // coeffs (2, 3): 2·B + 3·B² against explicit powers.
        let m = 10u64;
        let mut stream = xof_stream(DomainLabel::Xy, b"horner");
        let base = random_exponent_matrix(&mut stream, 3, m);
        let fast = poly_eval_matrix(&[2, 3], &base, m).unwrap();
        let sq = mat_mul_exp(&base, &base, m).unwrap();
        let mut naive = ExponentMatrix::zero(3);
        for i in 0..3 {
            for j in 0..3 {
                naive.set(i, j, (2 * base.get(i, j) + 3 * sq.get(i, j)) % m);
            }
        }
        assert_eq!(fast, naive);
    }

    #[test]
    fn poly_eval_rejects_all_zero_coefficients() {
        let base = ExponentMatrix::identity(2);
        assert_eq!(
            poly_eval_matrix(&[0, 0], &base, 10),
            Err(Error::AllZeroCoefficients)
        );
        assert_eq!(
            poly_eval_matrix(&[], &base, 10),
            Err(Error::AllZeroCoefficients)
        );
    }

    #[test]
    fn poly_outputs_commute() {
        let m = 10u64;
        let mut stream = xof_stream(DomainLabel::Xy, b"commute");
        for _ in 0..20 {
            let base = random_exponent_matrix(&mut stream, 3, m);
            let c1: Vec<u64> = (0..3).map(|_| stream.uniform(10)).collect();
            let c2: Vec<u64> = (0..3).map(|_| stream.uniform(10)).collect();
            if c1.iter().all(|&c| c == 0) || c2.iter().all(|&c| c == 0) {
                continue;
            }
            let q1 = poly_eval_matrix(&c1, &base, m).unwrap();
            let q2 = poly_eval_matrix(&c2, &base, m).unwrap();
            assert_eq!(
                mat_mul_exp(&q1, &q2, m).unwrap(),
                mat_mul_exp(&q2, &q1, m).unwrap()
            );
        }
    }

    #[test]
    fn singular_bases_have_the_advertised_null_vector() {
        let params = small_params();
        let m = params.exp_modulus();
        for i in 0..10u8 {
            let left = gen_singular_base(&[i], BaseSide::Left, &params);
            let right = gen_singular_base(&[i, 1], BaseSide::Right, &params);
            assert!(left.ones_row_product(m).iter().all(|&v| v == 0));
            assert!(right.ones_col_product(m).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn singular_base_is_deterministic() {
        let params = small_params();
        let a = gen_singular_base(b"fixed seed", BaseSide::Left, &params);
        let b = gen_singular_base(b"fixed seed", BaseSide::Left, &params);
        assert_eq!(a, b);
    }

    #[test]
    fn n2_left_base_last_row_negates_first() {
        let params = Params::custom(11, 2, 3, 1, 16, 1, 2).unwrap();
        let m = params.exp_modulus();
        let a = gen_singular_base(b"n2", BaseSide::Left, &params);
        for j in 0..2 {
            assert_eq!(a.get(1, j), (m - a.get(0, j)) % m);
        }
    }

    #[test]
    fn polynomials_of_singular_bases_keep_the_null_vector() {
        // 𝟙·(c₁A + c₂A²) ≡ 0 at p=11, n=3.
        let params = small_params();
        let m = params.exp_modulus();
        let a = gen_singular_base(b"null carries", BaseSide::Left, &params);
        let b = gen_singular_base(b"null carries r", BaseSide::Right, &params);
        let mut stream = xof_stream(DomainLabel::Xy, b"null poly");
        for _ in 0..25 {
            let coeffs = sample_coeffs(&mut stream, &params);
            let pa = poly_eval_matrix(&coeffs, &a, m).unwrap();
            let pb = poly_eval_matrix(&coeffs, &b, m).unwrap();
            assert!(pa.ones_row_product(m).iter().all(|&v| v == 0));
            assert!(pb.ones_col_product(m).iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn composition_law_holds_for_commuting_pairs() {
        let params = small_params();
        let m = params.exp_modulus();
        let mut stream = xof_stream(DomainLabel::Xy, b"composition");
        for trial in 0..25 {
            let base_x = random_exponent_matrix(&mut stream, 3, m);
            let base_y = random_exponent_matrix(&mut stream, 3, m);
            let w = random_group_matrix(&mut stream, 3, params.p());
            let x = poly_eval_matrix(&sample_coeffs(&mut stream, &params), &base_x, m).unwrap();
            let u = poly_eval_matrix(&sample_coeffs(&mut stream, &params), &base_x, m).unwrap();
            let y = poly_eval_matrix(&sample_coeffs(&mut stream, &params), &base_y, m).unwrap();
            let v = poly_eval_matrix(&sample_coeffs(&mut stream, &params), &base_y, m).unwrap();

            let inner_xy = rdmpf(&x, &w, &y, &params).unwrap();
            let inner_uv = rdmpf(&u, &w, &v, &params).unwrap();
            let lhs = rdmpf(&u, &inner_xy, &v, &params).unwrap();
            let rhs = rdmpf(&x, &inner_uv, &y, &params).unwrap();
            assert_eq!(lhs, rhs, "trial {trial}");
        }
    }
}
