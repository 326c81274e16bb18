//! Brute-force verifiers and seeded test-data generators.
//!
//! Nothing here calls into [`crate::orbits`], [`crate::metrics`] or the rank
//! routine of [`crate::linalg`]; the algorithms are deliberately naive so that
//! agreement with the main code paths means something.
//!
//! Permutations are slices in one-line notation over `1..=n`: entry `k - 1`
//! is the image of `k`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::structure::SecondaryStructure;

/// Largest `n` accepted by the exhaustive oracles.
pub const MAX_EXHAUSTIVE_N: usize = 8;

/// Restarts allowed before [`random_structure`] gives up.
pub const MAX_RESTARTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the exhaustive limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("cannot place {contacts} contacts on {n} bases")]
    Infeasible { n: usize, contacts: usize },
    #[error("input is not a permutation of 1..={n}")]
    NotAPermutation { n: usize },
}

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, then the output is mixed by
/// `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31`
/// (all arithmetic wrapping, 64-bit).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `0..bound`: raw outputs at or above the largest
    /// multiple of `bound` are rejected, the rest reduced modulo `bound`.
    ///
    /// # Panics
    ///
    /// Panics if `bound` is zero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Uniform integer in `lo..=hi`.
    pub fn in_range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below((hi - lo + 1) as u64) as usize
    }
}

fn check_permutation(sigma: &[usize]) -> Result<(), OracleError> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &x in sigma {
        if x == 0 || x > n || seen[x - 1] {
            return Err(OracleError::NotAPermutation { n });
        }
        seen[x - 1] = true;
    }
    Ok(())
}

/// Distance from the identity to `sigma` in the Cayley graph of the
/// symmetric group generated by all transpositions, found by breadth-first
/// search.
pub fn min_transpositions_bfs(sigma: &[usize]) -> Result<usize, OracleError> {
    let n = sigma.len();
    if n > MAX_EXHAUSTIVE_N {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    check_permutation(sigma)?;
    // 3 bits per position; values stored 0-based
    let pack = |p: &[usize]| p.iter().rev().fold(0u32, |acc, &x| (acc << 3) | (x - 1) as u32);
    let target = pack(sigma);
    let identity: Vec<usize> = (1..=n).collect();
    let mut seen = HashSet::from([pack(&identity)]);
    let mut queue = VecDeque::from([(identity, 0usize)]);
    while let Some((perm, dist)) = queue.pop_front() {
        if pack(&perm) == target {
            return Ok(dist);
        }
        for a in 0..n {
            for b in a + 1..n {
                let mut next = perm.clone();
                next.swap(a, b);
                if seen.insert(pack(&next)) {
                    queue.push_back((next, dist + 1));
                }
            }
        }
    }
    unreachable!("transpositions generate the symmetric group")
}

/// Number of cycles of `sigma`, fixed points included.
pub fn cycle_count(sigma: &[usize]) -> Result<usize, OracleError> {
    check_permutation(sigma)?;
    let mut marked = vec![false; sigma.len()];
    let mut count = 0;
    for start in 0..sigma.len() {
        if marked[start] {
            continue;
        }
        count += 1;
        let mut k = start;
        while !marked[k] {
            marked[k] = true;
            k = sigma[k] - 1;
        }
    }
    Ok(count)
}

/// `π(Γ₁)π(Γ₂)` built literally as a product of transpositions, the right
/// factor applied first.
///
/// # Panics
///
/// Panics if the structures have different lengths.
pub fn transposition_product(first: &SecondaryStructure, second: &SecondaryStructure) -> Vec<usize> {
    assert_eq!(first.len(), second.len(), "structures must have equal length");
    let factors: Vec<(usize, usize)> = first
        .contacts()
        .iter()
        .chain(second.contacts())
        .map(|c| (c.i(), c.j()))
        .collect();
    (1..=first.len())
        .map(|x| {
            factors.iter().rev().fold(x, |y, &(a, b)| {
                if y == a {
                    b
                } else if y == b {
                    a
                } else {
                    y
                }
            })
        })
        .collect()
}

/// Largest number of contacts a structure of length `n` can have.
pub fn max_contacts(n: usize) -> usize {
    match n {
        0..=2 => 0,
        3 => 1,
        _ => n / 2,
    }
}

/// A structure of length `n` with exactly `contacts` contacts, determined by `seed`.
pub fn random_structure(n: usize, contacts: usize, seed: u64) -> Result<SecondaryStructure, OracleError> {
    random_structure_with(&mut SplitMix64::new(seed), n, contacts)
}

/// Like [`random_structure`], drawing from an existing generator.
///
/// Contacts are placed one at a time: two distinct free bases are drawn
/// uniformly and the draw is rejected if they are consecutive. When no valid
/// pair remains among the free bases, the attempt restarts; after
/// [`MAX_RESTARTS`] restarts the request is reported infeasible.
pub fn random_structure_with(
    rng: &mut SplitMix64,
    n: usize,
    contacts: usize,
) -> Result<SecondaryStructure, OracleError> {
    let infeasible = OracleError::Infeasible { n, contacts };
    if n == 0 || contacts > max_contacts(n) {
        return Err(infeasible);
    }
    'attempt: for _ in 0..MAX_RESTARTS {
        let mut free: Vec<usize> = (1..=n).collect();
        let mut pairs = Vec::with_capacity(contacts);
        while pairs.len() < contacts {
            // free stays sorted, so a valid pair exists iff its extremes are far enough apart
            if free.len() < 2 || free[free.len() - 1] - free[0] < 2 {
                continue 'attempt;
            }
            let (x, y) = loop {
                let x = rng.below(free.len() as u64) as usize;
                let y = rng.below(free.len() as u64) as usize;
                if free[x].abs_diff(free[y]) >= 2 {
                    break (x.max(y), x.min(y));
                }
            };
            pairs.push((free[y], free[x]));
            free.remove(x);
            free.remove(y);
        }
        return Ok(SecondaryStructure::new(n, pairs).expect("sampled pairs are valid"));
    }
    Err(infeasible)
}

/// Every structure of length `n`, each exactly once.
///
/// Order: the lowest undecided base is first left isolated, then paired with
/// each admissible partner in increasing order.
pub fn enumerate_structures(n: usize) -> Result<Vec<SecondaryStructure>, OracleError> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_EXHAUSTIVE_N,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    fn extend(
        n: usize,
        from: usize,
        taken: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        out: &mut Vec<SecondaryStructure>,
    ) {
        let Some(i) = (from..=n).find(|&k| !taken[k - 1]) else {
            out.push(SecondaryStructure::new(n, pairs.iter().copied()).expect("enumerated pairs are valid"));
            return;
        };
        taken[i - 1] = true;
        extend(n, i + 1, taken, pairs, out);
        for j in i + 2..=n {
            if taken[j - 1] {
                continue;
            }
            taken[j - 1] = true;
            pairs.push((i, j));
            extend(n, i + 1, taken, pairs, out);
            pairs.pop();
            taken[j - 1] = false;
        }
        taken[i - 1] = false;
    }
    let mut out = Vec::new();
    extend(n, 1, &mut vec![false; n], &mut Vec::new(), &mut out);
    Ok(out)
}

/// Rank of `a` over the field with `p` elements (`p` prime, below 2^63).
pub fn rank_mod_prime(a: &IntMatrix, p: u64) -> usize {
    let n = a.dim();
    let modulus = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            a.row(r)
                .iter()
                .map(|x| {
                    let mut v = x % &modulus;
                    if v < BigInt::zero() {
                        v += &modulus;
                    }
                    v.to_u64().expect("reduced below p")
                })
                .collect()
        })
        .collect();
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| {
        // Fermat: x^(p-2)
        let (mut base, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pr, rank);
        let scale = inv(m[rank][col]);
        for c in col..n {
            m[rank][c] = mul(m[rank][c], scale);
        }
        for r in 0..n {
            if r == rank || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col];
            for c in col..n {
                let sub = mul(f, m[rank][c]);
                m[r][c] = (m[r][c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn odd 62-bit prime (in `2^61..2^62`).
pub fn random_prime_62(rng: &mut SplitMix64) -> u64 {
    loop {
        let candidate = (rng.next_u64() >> 2) | (1 << 61) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}
