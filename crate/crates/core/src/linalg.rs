//! Dense square integer matrices with exact rank.
//!
//! Rank is computed by fraction-free (Bareiss) elimination. Entries of the
//! matrices built from structures are in `-2..=1`, so elimination first runs
//! on `i128` with checked arithmetic and only falls back to big integers if
//! an intermediate overflows.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::structure::SecondaryStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix dimensions differ ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
}

/// A dense `n × n` matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m.entries[k * n + k] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows<R, T>(rows: &[R]) -> Result<Self, LinalgError>
    where
        R: AsRef<[T]>,
        T: Clone + Into<BigInt>,
    {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(LinalgError::NotSquare {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            entries.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { n, entries })
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: impl Into<BigInt>) {
        self.entries[row * self.n + col] = value.into();
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut t = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                t.entries[c * n + r] = self.entries[r * n + c].clone();
            }
        }
        t
    }

    /// `self − Id`.
    pub fn minus_identity(&self) -> IntMatrix {
        let mut m = self.clone();
        for k in 0..self.n {
            m.entries[k * self.n + k] -= 1;
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Number of nonzero entries in a row.
    pub fn row_support(&self, row: usize) -> usize {
        self.row(row).iter().filter(|x| !x.is_zero()).count()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix({}×{})", self.n, self.n)?;
        for r in 0..self.n {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// The signed matrix of a structure: `-1` at `(i, j)` and `(j, i)` for each
/// contact `i·j`, `1` on the diagonal of isolated bases, `0` elsewhere.
///
/// It is symmetric and squares to the identity.
pub fn structure_matrix(s: &SecondaryStructure) -> IntMatrix {
    let n = s.len();
    let mut m = IntMatrix::zeros(n);
    for (k, p) in s.partner_table().iter().enumerate() {
        match p {
            Some(p) => m.entries[k * n + (p - 1)] = BigInt::from(-1),
            None => m.entries[k * n + k] = BigInt::one(),
        }
    }
    m
}

/// Exact product `a · b`.
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if a.n != b.n {
        return Err(LinalgError::DimensionMismatch {
            left: a.n,
            right: b.n,
        });
    }
    let n = a.n;
    let mut out = IntMatrix::zeros(n);
    for r in 0..n {
        for k in 0..n {
            let x = a.get(r, k);
            if x.is_zero() {
                continue;
            }
            for c in 0..n {
                let y = b.get(k, c);
                if !y.is_zero() {
                    out.entries[r * n + c] += x * y;
                }
            }
        }
    }
    Ok(out)
}

/// The transfer matrix `S₂ · S₁` of two structures.
pub fn transfer_matrix(
    first: &SecondaryStructure,
    second: &SecondaryStructure,
) -> Result<IntMatrix, LinalgError> {
    mat_mul(&structure_matrix(second), &structure_matrix(first))
}

/// Rank over the rationals, by fraction-free elimination.
pub fn exact_rank(a: &IntMatrix) -> usize {
    let small: Option<Vec<i128>> = a.entries.iter().map(|x| x.to_i64().map(i128::from)).collect();
    if let Some(rank) = small.and_then(|rows| bareiss_rank(rows, a.n)) {
        return rank;
    }
    bareiss_rank(a.entries.clone(), a.n).expect("big-integer elimination cannot overflow")
}

/// Scalars for Bareiss elimination. `None` signals overflow.
trait Exact: Clone {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    /// `(pivot·x − a·b) / prev`, where the division is known to be exact.
    fn step(pivot: &Self, x: &Self, a: &Self, b: &Self, prev: &Self) -> Option<Self>;
}

impl Exact for i128 {
    fn nil() -> Self {
        0
    }

    fn unit() -> Self {
        1
    }

    fn is_nil(&self) -> bool {
        *self == 0
    }

    fn step(pivot: &Self, x: &Self, a: &Self, b: &Self, prev: &Self) -> Option<Self> {
        let num = pivot.checked_mul(*x)?.checked_sub(a.checked_mul(*b)?)?;
        debug_assert_eq!(num % prev, 0);
        Some(num / prev)
    }
}

impl Exact for BigInt {
    fn nil() -> Self {
        BigInt::zero()
    }

    fn unit() -> Self {
        BigInt::one()
    }

    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }

    fn step(pivot: &Self, x: &Self, a: &Self, b: &Self, prev: &Self) -> Option<Self> {
        let num = pivot * x - a * b;
        debug_assert!(Zero::is_zero(&(&num % prev)));
        Some(num / prev)
    }
}

/// Row-echelon Bareiss elimination; columns without a pivot are skipped.
/// Every intermediate entry is a minor of the input, so each division is exact.
fn bareiss_rank<T: Exact>(mut m: Vec<T>, n: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev = T::unit();
    for col in 0..n {
        if rank == n {
            break;
        }
        let Some(pivot_row) = (rank..n).find(|&r| !m[r * n + col].is_nil()) else {
            continue;
        };
        if pivot_row != rank {
            for c in col..n {
                m.swap(pivot_row * n + c, rank * n + c);
            }
        }
        let pivot = m[rank * n + col].clone();
        for r in rank + 1..n {
            let lead = m[r * n + col].clone();
            for c in col + 1..n {
                let x = &m[r * n + c];
                let above = &m[rank * n + c];
                if x.is_nil() && (lead.is_nil() || above.is_nil()) {
                    continue;
                }
                m[r * n + c] = T::step(&pivot, x, &lead, above, &prev)?;
            }
            m[r * n + col] = T::nil();
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, pairs: &[(usize, usize)]) -> SecondaryStructure {
        SecondaryStructure::new(n, pairs.iter().copied()).unwrap()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn structure_matrix_example() {
        let sm = structure_matrix(&s(4, &[(1, 3)]));
        let expected = m(&[&[0, 0, -1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(sm, expected);
        assert_eq!(structure_matrix(&s(3, &[])), IntMatrix::identity(3));
        let sm = structure_matrix(&s(9, &[(1, 5), (2, 8), (4, 9)]));
        assert!(sm.is_symmetric());
        assert!((0..9).all(|r| sm.row_support(r) == 1));
    }

    #[test]
    fn products() {
        let st = s(8, &[(1, 4), (2, 6), (5, 8)]);
        let sm = structure_matrix(&st);
        assert_eq!(mat_mul(&sm, &sm).unwrap(), IntMatrix::identity(8));
        let a = m(&[&[1, -2, 3], &[0, 4, 5], &[7, 0, -1]]);
        assert_eq!(mat_mul(&a, &IntMatrix::identity(3)).unwrap(), a);
        assert_eq!(mat_mul(&IntMatrix::identity(3), &a).unwrap(), a);
        let sq = m(&[&[22, -10, -10], &[35, 16, 15], &[0, -14, 22]]);
        assert_eq!(mat_mul(&a, &a).unwrap(), sq);
        assert_eq!(
            mat_mul(&a, &IntMatrix::identity(2)),
            Err(LinalgError::DimensionMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let rows: Vec<Vec<i64>> = vec![vec![1, 2], vec![3]];
        assert_eq!(
            IntMatrix::from_rows(&rows),
            Err(LinalgError::NotSquare { row: 1, len: 1, expected: 2 })
        );
    }

    #[test]
    fn rank_basics() {
        assert_eq!(exact_rank(&IntMatrix::zeros(5)), 0);
        assert_eq!(exact_rank(&IntMatrix::identity(7)), 7);
        assert_eq!(exact_rank(&IntMatrix::zeros(0)), 0);
        assert_eq!(exact_rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(exact_rank(&m(&[&[0, 0, 1], &[0, 0, 2], &[0, 0, 3]])), 1);
        assert_eq!(exact_rank(&m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]])), 2);
    }

    #[test]
    fn rank_of_transfer_matrix_minus_identity() {
        let t = transfer_matrix(&s(6, &[(1, 3), (4, 6)]), &s(6, &[(3, 6), (1, 4)])).unwrap();
        assert_eq!(exact_rank(&t.minus_identity()), 2);
        let t = transfer_matrix(&s(7, &[(1, 3), (5, 7)]), &s(7, &[(3, 5)])).unwrap();
        assert_eq!(exact_rank(&t.minus_identity()), 3);
    }

    #[test]
    fn big_entries_fall_back_to_bigint() {
        // Hilbert-like matrix scaled to integers overflows i128 quickly in Bareiss
        let big = BigInt::from(1u64 << 62);
        let n = 6;
        let mut a = IntMatrix::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let v: BigInt = &big * BigInt::from((r + 1) * (c + 2) + r * r + 1) + BigInt::from(r ^ c);
                a.set(r, c, v);
            }
        }
        let rank = exact_rank(&a);
        assert!(rank <= n);
        assert_eq!(rank, exact_rank(&a.transpose()));
        let mut dup = a.clone();
        for c in 0..n {
            let v = a.get(0, c).clone() * 3;
            dup.set(5, c, v);
        }
        assert!(exact_rank(&dup) < n);
    }
}
