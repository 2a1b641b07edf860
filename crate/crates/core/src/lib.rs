//! Interval rank invariants and interval replacements of persistence modules
//! over finite posets, computed in exact arithmetic.
//!
//! The pipeline is: build a [`Poset`], enumerate its [`IntervalLattice`],
//! describe a [`PersistenceModule`] by matrices on Hasse arrows, pick a
//! [`CompressionSystem`], then compute the multiplicity table with
//! [`invariant_table`] and its Möbius inversion with [`signed_multiplicity`].
//!
//! ```
//! use interval_rank::{fixtures, invariant_table, signed_multiplicity, CompressionSystem, IntervalLattice, Rationals};
//!
//! let m = fixtures::p1(Rationals, 2).unwrap();
//! let lattice = IntervalLattice::enumerate(m.poset().clone(), None).unwrap();
//! let table = invariant_table(&m, &CompressionSystem::Tot, &lattice).unwrap();
//! let delta = signed_multiplicity(&table, &lattice);
//! assert_eq!(lattice.len(), 13);
//! assert_eq!(delta.iter().filter(|&&d| d == 1).count(), 4);
//! ```

pub mod cli;
pub mod compression;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod module;
pub mod poset;
pub mod replacement;

pub use compression::{compress, validate_system, CompressionDatum, CompressionSystem, SystemKind};
pub use error::{Error, Result};
pub use invariants::{
    compression_multiplicity, extremal_joins, generalized_rank, invariant_table,
    multiplicity_matrices, reduced_grid_multiplicity, redundancy_prune, ExtremalJoins,
    MultiplicityMatrices,
};
pub use lattice::{Interval, IntervalLattice};
pub use linalg::{ExactField, Field, Matrix, PrimeField, Rationals};
pub use module::{PersistenceModule, PosetMap};
pub use poset::Poset;
pub use replacement::{
    interval_replacement, mobius_value, replacement_invariants, signed_multiplicity,
    signed_multiplicity_subset_formula, zeta_transform, Replacement,
};
