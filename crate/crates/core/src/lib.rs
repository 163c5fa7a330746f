//! Partitions of totally positive algebraic integers over ℚ and real
//! quadratic fields.
//!
//! The crate provides exact arithmetic in the ring of integers
//! ([`field`]), enumeration of totally positive integers by trace
//! ([`enumeration`]), ideals in Hermite normal form ([`ideals`]), trace-truncated
//! formal power sums ([`qsum`]), direct partition counting ([`partitions`]) and
//! finite-range checks of the Euler–Glaisher and chain-partition identities
//! ([`theorems`]).

pub mod class;
pub mod enumeration;
pub mod error;
pub mod field;
pub mod ideals;
pub mod partitions;
pub mod qsum;
pub mod theorems;

pub use class::{MultBound, PartitionClass};
pub use enumeration::{decompositions, enumerate_totally_positive, TraceWindow};
pub use error::{Error, Result};
pub use field::{AlgInt, OmegaKind, QuadField};
pub use ideals::{GlaisherData, Ideal};
pub use partitions::{ChainSolution, Partition};
pub use qsum::QSum;
pub use theorems::Report;
