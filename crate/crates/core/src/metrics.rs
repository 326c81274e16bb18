//! The involution, subgroup and transfer-matrix distances between structures
//! of equal length.
//!
//! * [`d_inv`]: fewest transpositions whose product is `π(Γ₁)π(Γ₂)`, computed
//!   from the orbit decomposition as `|Q₁ Δ Q₂| − 2Ω`. [`d_inv_cycles`]
//!   computes the same number by composing the permutations and counting
//!   cycles.
//! * [`d_sgr`]: natural log of `|G₁·G₂| / |G₁ ∩ G₂|` for the groups generated
//!   by the contact transpositions. [`d_sgr_log2`] is the same quantity in
//!   base 2, which is exactly the base-pair distance `|Q₁ Δ Q₂|`.
//! * [`d_mag`]: `rank(S₂·S₁ − Id)` for the signed structure matrices.

use std::fmt;
use std::str::FromStr;

use crate::linalg::{exact_rank, transfer_matrix};
use crate::orbits::{decompose_orbits, involution_of};
use crate::structure::{check_lengths, common_contacts, symmetric_difference, LengthMismatch, SecondaryStructure};

/// Base-2 logarithms of the orders of the contact groups of two structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubgroupOrders {
    pub log2_g1: usize,
    pub log2_g2: usize,
    pub log2_intersection: usize,
    pub log2_product: usize,
}

impl SubgroupOrders {
    /// `log₂(|G₁·G₂| / |G₁ ∩ G₂|)`.
    pub fn log2_quotient(&self) -> usize {
        self.log2_product - self.log2_intersection
    }
}

/// Involution distance via orbits: `|Q₁ Δ Q₂| − 2Ω`.
pub fn d_inv(a: &SecondaryStructure, b: &SecondaryStructure) -> Result<usize, LengthMismatch> {
    let symdiff = symmetric_difference(a, b)?.len();
    let orbits = decompose_orbits(a, b)?;
    Ok(symdiff - 2 * orbits.omega)
}

/// Involution distance via the cycle structure of `σ = π(Γ₁)∘π(Γ₂)`:
/// `n − c(σ)`, where `c` counts cycles including fixed points.
pub fn d_inv_cycles(a: &SecondaryStructure, b: &SecondaryStructure) -> Result<usize, LengthMismatch> {
    let n = check_lengths(a, b)?;
    let (p1, p2) = (involution_of(a), involution_of(b));
    // apply π(Γ₂) first, then π(Γ₁)
    let sigma: Vec<usize> = (1..=n).map(|k| p1.apply(p2.apply(k))).collect();
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for start in 1..=n {
        if seen[start - 1] {
            continue;
        }
        cycles += 1;
        let mut k = start;
        while !seen[k - 1] {
            seen[k - 1] = true;
            k = sigma[k - 1];
        }
    }
    Ok(n - cycles)
}

/// Subgroup distance `ln 2 · |Q₁ Δ Q₂|`.
pub fn d_sgr(a: &SecondaryStructure, b: &SecondaryStructure) -> Result<f64, LengthMismatch> {
    Ok(std::f64::consts::LN_2 * d_sgr_log2(a, b)? as f64)
}

/// Base-2 subgroup distance, equal to the base-pair distance `|Q₁ Δ Q₂|`.
pub fn d_sgr_log2(a: &SecondaryStructure, b: &SecondaryStructure) -> Result<usize, LengthMismatch> {
    Ok(symmetric_difference(a, b)?.len())
}

/// Orders of `G(Γ₁)`, `G(Γ₂)`, their intersection and their product set,
/// as base-2 exponents.
///
/// Disjoint transpositions generate an elementary abelian 2-group, so
/// `|G(Γ)| = 2^|Q|`, and the intersection is generated by the shared contacts.
pub fn subgroup_orders(a: &SecondaryStructure, b: &SecondaryStructure) -> Result<SubgroupOrders, LengthMismatch> {
    let shared = common_contacts(a, b)?;
    let (g1, g2) = (a.num_contacts(), b.num_contacts());
    Ok(SubgroupOrders {
        log2_g1: g1,
        log2_g2: g2,
        log2_intersection: shared,
        log2_product: g1 + g2 - shared,
    })
}

/// Transfer-matrix distance `rank(S₂·S₁ − Id)`.
pub fn d_mag(a: &SecondaryStructure, b: &SecondaryStructure) -> Result<usize, LengthMismatch> {
    check_lengths(a, b)?;
    let t = transfer_matrix(a, b).expect("equal lengths give equal dimensions");
    Ok(exact_rank(&t.minus_identity()))
}

/// Selects one of the distances.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Metric {
    #[default]
    Inv,
    Sgr,
    Sgr2,
    Mag,
}

impl Metric {
    pub const ALL: [Metric; 4] = [Metric::Inv, Metric::Sgr, Metric::Sgr2, Metric::Mag];

    pub fn name(&self) -> &'static str {
        match self {
            Metric::Inv => "inv",
            Metric::Sgr => "sgr",
            Metric::Sgr2 => "sgr2",
            Metric::Mag => "mag",
        }
    }

    pub fn distance(&self, a: &SecondaryStructure, b: &SecondaryStructure) -> Result<Distance, LengthMismatch> {
        Ok(match self {
            Metric::Inv => Distance::Exact(d_inv(a, b)?),
            Metric::Sgr => Distance::Real(d_sgr(a, b)?),
            Metric::Sgr2 => Distance::Exact(d_sgr_log2(a, b)?),
            Metric::Mag => Distance::Exact(d_mag(a, b)?),
        })
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMetric(pub String);

impl fmt::Display for UnknownMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown metric {:?} (expected inv, sgr, sgr2 or mag)", self.0)
    }
}

impl std::error::Error for UnknownMetric {}

impl FromStr for Metric {
    type Err = UnknownMetric;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| UnknownMetric(s.to_string()))
    }
}

/// A distance value. Only the subgroup distance is irrational.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distance {
    Exact(usize),
    Real(f64),
}

impl Distance {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Distance::Exact(d) => d as f64,
            Distance::Real(d) => d,
        }
    }
}

/// Integers print as-is; reals with nine decimals.
impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::Real(d) => write!(f, "{d:.9}"),
        }
    }
}
