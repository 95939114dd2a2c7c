//! Construction and verification toolkit for orthogonal Latin squares and
//! their higher-dimensional relatives.
//!
//! The crate is organised around a handful of small combinatorial types:
//!
//! * [`groups`]: finite groups as multiplication tables, abelian invariant
//!   lists, automorphisms, and fixed-point-free automorphism triples.
//! * [`algebra`]: finite fields `GF(p^d)` and Galois rings `GR(p^e, d)`,
//!   including Teichmüller representatives and unimodularity tests.
//! * [`partitions`]: partitions of a finite point set, Cartesian partition
//!   sets, coset partitions, and diagonal semilattices.
//! * [`latin`]: Latin squares, isotopisms, orthogonality, and tests for
//!   isotopy to a group table.
//! * [`designs`]: systems of mutually orthogonal coset partitions over a
//!   common group ("MODS"), orthogonal arrays, and conversions between the
//!   two and sets of Latin squares.
//! * [`constructions`]: concrete families such as Frobenius multiplier
//!   squares, normal rational curve arcs over fields and Galois rings, and
//!   a hand-checked pair of orthogonal squares of order 8 over two
//!   different groups.
//!
//! Everything is deterministic: identical inputs produce identical outputs,
//! byte for byte, regardless of thread count.  Sizes are desk scale; the
//! point caps exist to fail fast, not to enable big data.

pub mod algebra;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod groups;
pub mod io;
pub mod latin;
pub mod partitions;
pub mod perm;

pub use error::{Error, Result};
pub use perm::Perm;

/// Default ceiling on the number of points `|Ω|` materialised by semilattice
/// and design constructions.  The CLI exposes it as `--cap`.
pub const DEFAULT_POINT_CAP: usize = 1_000_000;
