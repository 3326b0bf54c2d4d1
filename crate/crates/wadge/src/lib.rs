//! Symbolic kernel for potential Wadge classes over products of Cantor spaces.
//!
//! Each module covers one layer: integer codings, ordinals below `ω^ω`,
//! symbolic binary sequences, the effective frame tree, level combinatorics,
//! description codes, complete-set evaluators, and the shift system.
//! [`suite`] bundles the acceptance checks.

pub mod coding;
pub mod complete_sets;
pub mod descriptions;
pub mod frame_tree;
pub mod levels;
pub mod ordinals;
pub mod sequences;
pub mod shift_system;
pub mod suite;

pub use num_bigint::BigUint as Nat;
