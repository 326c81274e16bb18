//! Distances between RNA secondary structures of equal length.
//!
//! Structures are contact sets on `1..=n` in which consecutive bases never
//! pair and each base pairs at most once; pseudoknots are allowed. Three
//! distances are provided, each with an independent second route for
//! cross-checking:
//!
//! | distance | closed form | cross-check |
//! |---|---|---|
//! | [`d_inv`] | `\|Q₁ Δ Q₂\| − 2Ω` from [`decompose_orbits`] | [`d_inv_cycles`], BFS in [`oracles`] |
//! | [`d_sgr`] / [`d_sgr_log2`] | `ln 2 · \|Q₁ Δ Q₂\|` | [`subgroup_orders`] |
//! | [`d_mag`] | Bareiss rank of `S₂·S₁ − Id` | mod-p rank in [`oracles`] |
//!
//! ```
//! use rnadist_core::{codec, d_inv, d_mag};
//!
//! let a = codec::parse_dotbracket("(.)(.)(.)").unwrap();
//! let b = codec::parse_dotbracket("..(...)..").unwrap();
//! assert_eq!(d_inv(&a, &b).unwrap(), d_mag(&a, &b).unwrap());
//! ```

pub mod codec;
pub mod linalg;
pub mod metrics;
pub mod oracles;
pub mod orbits;
pub mod structure;

pub use codec::{CodecError, Format};
pub use linalg::{exact_rank, mat_mul, structure_matrix, transfer_matrix, IntMatrix, LinalgError};
pub use metrics::{
    d_inv, d_inv_cycles, d_mag, d_sgr, d_sgr_log2, subgroup_orders, Distance, Metric, SubgroupOrders,
};
pub use orbits::{decompose_orbits, involution_of, Involution, Orbit, OrbitDecomposition, OrbitKind, Origin};
pub use structure::{symmetric_difference, Contact, LengthMismatch, SecondaryStructure, StructureError};
