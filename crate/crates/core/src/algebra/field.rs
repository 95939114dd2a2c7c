//! Finite fields `GF(p^d)` as quotients `GF(p)[x] / (f)`.
//!
//! Elements are indices in `0..q`.  The index encodes the coefficient
//! vector of the residue in base `p`, low degree first, so index `c` with
//! `c < p` is the scalar `c` and index `p` is the class of `x`.

use super::poly::{self, Poly};
use super::ALGEBRA_ELEMENT_CAP;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u64,
    d: usize,
    q: u64,
    modulus: Poly,
}

/// Builds `GF(p^d)` with the lexicographically least monic irreducible
/// modulus of degree `d`.
pub fn gf_build(p: u64, d: usize) -> Result<GaloisField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d == 0 {
        return Err(Error::input("extension degree must be positive"));
    }
    let q = p
        .checked_pow(d as u32)
        .filter(|&q| q <= ALGEBRA_ELEMENT_CAP as u64)
        .ok_or(Error::CapExceeded {
            what: "field size",
            needed: usize::MAX,
            limit: ALGEBRA_ELEMENT_CAP,
        })?;
    let modulus = poly::least_irreducible_monic(p, d)?;
    Ok(GaloisField { p, d, q, modulus })
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

impl GaloisField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Coefficient vector of an element, length `d`, low degree first.
    pub fn coeffs(&self, a: u64) -> Vec<u64> {
        assert!(a < self.q, "element out of range");
        let mut v = a;
        let mut out = Vec::with_capacity(self.d);
        for _ in 0..self.d {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// Element with the given coefficients; extra entries are reduced into
    /// the field by the modulus.
    pub fn from_coeffs(&self, c: &[u64]) -> u64 {
        let reduced = poly::divrem_monic(c, &self.modulus, self.p).1;
        self.index_of(&reduced)
    }

    fn index_of(&self, c: &[u64]) -> u64 {
        debug_assert!(c.len() <= self.d);
        let mut out = 0;
        for &x in c.iter().rev() {
            out = out * self.p + x;
        }
        out
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.index_of(&poly::add_mod(&self.coeffs(a), &self.coeffs(b), self.p))
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.index_of(&poly::sub_mod(&self.coeffs(a), &self.coeffs(b), self.p))
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let prod = poly::mul_mod(&self.coeffs(a), &self.coeffs(b), self.p);
        self.index_of(&poly::divrem_monic(&prod, &self.modulus, self.p).1)
    }

    pub fn pow(&self, a: u64, mut k: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }
}
