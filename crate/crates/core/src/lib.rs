//! Half-density families of subsets of `[n]^d` whose pairwise symmetric
//! differences are never the `d`-th power of a union of at most `⌊d/2⌋`
//! intervals.
//!
//! The family is realized as a parity code: a witness point set `W` such
//! that every forbidden power `S^d` meets `W` an odd number of times. A set
//! `A` belongs to the family when `|A ∩ W|` is even, so flipping any `S^d`
//! flips membership. Finding `W` reduces to an exact linear system over
//! GF(2) between interval-union powers and value-set indicators.
//!
//! Modules:
//! - [`interval_union`]: canonical unions of intervals, enumeration, counting.
//! - [`value_space`]: points, value sets, point sets and dimension lifting.
//! - [`gf2`]: bit-packed matrices and vectors over GF(2).
//! - [`algebra_checks`]: inclusion matrices and exact identity checks.
//! - [`code_builder`]: parity codes, graph codes and slice restriction.
//! - [`witness_walks`]: odd closed walks and brute-force bipartiteness.

pub mod algebra_checks;
pub mod code_builder;
pub mod error;
pub mod gf2;
pub mod interval_union;
pub mod value_space;
pub mod witness_walks;

mod binom;

pub use error::{Error, Result};
pub use gf2::{Gf2Matrix, Gf2Vector};
pub use interval_union::{BoundarySet, Interval, IntervalUnion};
pub use value_space::{Point, PointSet, ValueSet, ValueSpaceIndex};
