//! Finite fields `GF(p^d)` and Galois rings `GR(p^e, d)`.
//!
//! Elements of both structures are addressed by dense indices: a field
//! element with coefficient vector `(c_0, ..., c_{d-1})` (low degree first)
//! has index `sum c_i p^i`, and a ring element likewise with radix `p^e`.
//! Index 0 is zero and, for `d = 1`, indices coincide with residues.

pub mod poly;

mod field;
mod ring;

pub use field::{gf_build, GaloisField};
pub use ring::{gr_build, gr_matrix_is_unimodular, GaloisRing};

/// Ceiling on the number of elements of a field or ring.
pub const ALGEBRA_ELEMENT_CAP: usize = 1 << 20;
