//! Galois rings `GR(p^e, d)` as quotients `Z_{p^e}[x] / (f)`.
//!
//! The modulus `f` is the Hensel lift of the residue field's modulus: it is
//! monic of degree `d`, reduces to that modulus mod `p`, and divides
//! `x^q - x` exactly over `Z_{p^e}` where `q = p^d`.  Elements are indices
//! in `0..p^(e*d)` encoding the coefficient vector in radix `p^e`, low
//! degree first, so scalars embed as themselves.

use super::field::{gf_build, is_prime, GaloisField};
use super::poly::{self, Poly};
use super::ALGEBRA_ELEMENT_CAP;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct GaloisRing {
    p: u64,
    e: u32,
    d: usize,
    /// Coefficient modulus `p^e`.
    m: u64,
    /// Residue field order `p^d`.
    q: u64,
    /// Ring order `p^(e*d)`.
    size: u64,
    modulus: Poly,
    field: GaloisField,
    /// `teich[r]` is the unique root of `x^q = x` congruent to the field
    /// element `r` mod `p`.
    teich: Vec<u64>,
}

/// Builds `GR(p^e, d)`, lifting the field modulus to `Z_{p^e}`.
pub fn gr_build(p: u64, e: u32, d: usize) -> Result<GaloisRing> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 || d == 0 {
        return Err(Error::input("exponent and degree must be positive"));
    }
    let size = (e as usize)
        .checked_mul(d)
        .and_then(|ed| u32::try_from(ed).ok())
        .and_then(|ed| p.checked_pow(ed))
        .filter(|&s| s <= ALGEBRA_ELEMENT_CAP as u64)
        .ok_or(Error::CapExceeded {
            what: "ring size",
            needed: usize::MAX,
            limit: ALGEBRA_ELEMENT_CAP,
        })?;
    let field = gf_build(p, d)?;
    let q = field.order();
    let m = p.pow(e);
    let modulus = lift_modulus(&field, p, e)?;
    let mut ring = GaloisRing {
        p,
        e,
        d,
        m,
        q,
        size,
        modulus,
        field,
        teich: Vec::new(),
    };
    ring.teich = teichmuller_set(&ring)?;
    Ok(ring)
}

/// Quadratic Hensel lifting of the field modulus `f0` inside the
/// factorization `x^q - x = f0 * cofactor` over `GF(p)`, carried up to
/// `Z_{p^e}`.
fn lift_modulus(field: &GaloisField, p: u64, e: u32) -> Result<Poly> {
    let f0: Poly = field.modulus().to_vec();
    if e == 1 {
        return Ok(f0);
    }
    let q = field.order();
    let h_mod = |modulus: u64| -> Poly {
        // x^q - x
        let mut h = vec![0u64; q as usize + 1];
        h[1] = modulus - 1;
        h[q as usize] = 1;
        h
    };
    let (g0, rem) = poly::divrem_monic(&h_mod(p), &f0, p);
    assert!(rem.is_empty(), "field modulus must divide x^q - x mod p");
    let (gcd, s0, t0) = poly::egcd_mod_p(&f0, &g0, p);
    assert_eq!(gcd, vec![1], "factor and cofactor must be coprime mod p");

    let (mut f, mut g, mut s, mut t) = (f0.clone(), g0, s0, t0);
    let mut k = 1u32;
    while k < e {
        let k2 = (2 * k).min(e);
        let m2 = p.pow(k2);
        let h = h_mod(m2);
        let err = poly::sub_mod(&h, &poly::mul_mod(&f, &g, m2), m2);
        let (c, r) = poly::divrem_monic(&poly::mul_mod(&t, &err, m2), &f, m2);
        let f_new = poly::add_mod(&f, &r, m2);
        let g_new = poly::add_mod(
            &poly::add_mod(&g, &poly::mul_mod(&s, &err, m2), m2),
            &poly::mul_mod(&c, &g, m2),
            m2,
        );
        let b = poly::sub_mod(
            &poly::add_mod(
                &poly::mul_mod(&s, &f_new, m2),
                &poly::mul_mod(&t, &g_new, m2),
                m2,
            ),
            &[1],
            m2,
        );
        let (c2, r2) = poly::divrem_monic(&poly::mul_mod(&t, &b, m2), &f_new, m2);
        let t_new = poly::sub_mod(&t, &r2, m2);
        let s_new = poly::sub_mod(
            &poly::sub_mod(&s, &poly::mul_mod(&s, &b, m2), m2),
            &poly::mul_mod(&c2, &g_new, m2),
            m2,
        );
        assert_eq!(f_new.len(), f0.len(), "lift must preserve degree");
        assert_eq!(f_new.last(), Some(&1), "lift must stay monic");
        assert!(
            poly::sub_mod(&h, &poly::mul_mod(&f_new, &g_new, m2), m2).is_empty(),
            "factorization must hold at the new precision"
        );
        (f, g, s, t) = (f_new, g_new, s_new, t_new);
        k = k2;
    }

    let me = p.pow(e);
    assert!(
        poly::divrem_monic(&h_mod(me), &f, me).1.is_empty(),
        "lifted modulus must divide x^q - x exactly"
    );
    let back: Poly = poly::trim(f.iter().map(|&c| c % p).collect());
    assert_eq!(back, f0, "lifted modulus must reduce to the field modulus");
    Ok(f)
}

/// Computes the Teichmuller set by iterating `u -> u^q` from scalar lifts
/// of the field elements.  Each `q`th power gains at least one `p`-adic
/// digit of accuracy, so `e` rounds suffice.
fn teichmuller_set(ring: &GaloisRing) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(ring.q as usize);
    for r in ring.field.elements() {
        let mut u = ring.from_coeffs(&ring.field.coeffs(r));
        for _ in 0..ring.e {
            let next = ring.pow(u, ring.q);
            if next == u {
                break;
            }
            u = next;
        }
        if ring.pow(u, ring.q) != u || ring.reduce_mod_p(u) != r {
            return Err(Error::InternalWitnessFailure(format!(
                "teichmuller iteration did not converge for residue {r}"
            )));
        }
        out.push(u);
    }
    Ok(out)
}

impl GaloisRing {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Coefficient modulus `p^e`.
    pub fn coeff_modulus(&self) -> u64 {
        self.m
    }

    /// Residue field order `p^d`.
    pub fn residue_order(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn residue_field(&self) -> &GaloisField {
        &self.field
    }

    /// `teich[r]` for each residue field element `r`.
    pub fn teichmuller(&self) -> &[u64] {
        &self.teich
    }

    /// Coefficient vector of an element, length `d`, radix `p^e`, low
    /// degree first.
    pub fn coeffs(&self, a: u64) -> Vec<u64> {
        assert!(a < self.size, "element out of range");
        let mut v = a;
        let mut out = Vec::with_capacity(self.d);
        for _ in 0..self.d {
            out.push(v % self.m);
            v /= self.m;
        }
        out
    }

    pub fn from_coeffs(&self, c: &[u64]) -> u64 {
        let reduced = poly::divrem_monic(c, &self.modulus, self.m).1;
        self.index_of(&reduced)
    }

    fn index_of(&self, c: &[u64]) -> u64 {
        debug_assert!(c.len() <= self.d);
        let mut out = 0;
        for &x in c.iter().rev() {
            out = out * self.m + x;
        }
        out
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.index_of(&poly::add_mod(&self.coeffs(a), &self.coeffs(b), self.m))
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.index_of(&poly::sub_mod(&self.coeffs(a), &self.coeffs(b), self.m))
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let prod = poly::mul_mod(&self.coeffs(a), &self.coeffs(b), self.m);
        self.index_of(&poly::divrem_monic(&prod, &self.modulus, self.m).1)
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

    /// Image of an element in the residue field (coefficients mod `p`).
    pub fn reduce_mod_p(&self, a: u64) -> u64 {
        let c: Vec<u64> = self.coeffs(a).iter().map(|&x| x % self.p).collect();
        self.field.from_coeffs(&c)
    }

    pub fn is_unit(&self, a: u64) -> bool {
        self.reduce_mod_p(a) != 0
    }

    /// Inverse of a unit, by raising to `|R*| - 1`.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if !self.is_unit(a) {
            return Err(Error::DivisionByZero);
        }
        let unit_count = self.q.pow(self.e - 1) * (self.q - 1);
        let r = self.pow(a, unit_count - 1);
        debug_assert_eq!(self.mul(a, r), 1);
        Ok(r)
    }

    /// The `d x d` matrix over `Z_{p^e}` of multiplication by `v` in the
    /// power basis: entry `(i, j)` is the `x^i` coefficient of `v * x^j`.
    pub fn mul_matrix(&self, v: u64) -> Vec<u64> {
        let mut mat = vec![0u64; self.d * self.d];
        let mut col = self.coeffs(v);
        for j in 0..self.d {
            for i in 0..self.d {
                mat[i * self.d + j] = col.get(i).copied().unwrap_or(0);
            }
            if j + 1 < self.d {
                col.insert(0, 0);
                col = poly::divrem_monic(&col, &self.modulus, self.m).1;
                col.resize(self.d, 0);
            }
        }
        mat
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.size
    }
}

/// Whether a square matrix of ring elements is invertible over the ring.
/// This holds exactly when its entrywise reduction mod `p` is invertible
/// over the residue field, checked by Gaussian elimination.
pub fn gr_matrix_is_unimodular(ring: &GaloisRing, rows: &[Vec<u64>]) -> bool {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return false;
    }
    let f = ring.residue_field();
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| ring.reduce_mod_p(x)).collect())
        .collect();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r][col] != 0) else {
            return false;
        };
        a.swap(col, pivot);
        let inv = f.inv(a[col][col]).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = f.mul(a[r][col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                let delta = f.mul(factor, a[col][c]);
                a[r][c] = f.sub(a[r][c], delta);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gr_4_2_modulus_and_teichmuller() {
        let r = gr_build(2, 2, 2).unwrap();
        assert_eq!(r.order(), 16);
        assert_eq!(r.coeff_modulus(), 4);
        // x^2 + x + 1 lifts to itself: (x^2 - x)(x^2 + x + 1) = x^4 - x
        assert_eq!(r.modulus(), &[1, 1, 1]);
        // field elements 0, 1, w, w + 1 lift to 0, 1, w, 3 + 3w; in ring
        // indices (radix 4) w is 4 and 3 + 3w is 15
        assert_eq!(r.teichmuller(), &[0, 1, 4, 15]);
    }

    #[test]
    fn z25_teichmuller() {
        let r = gr_build(5, 2, 1).unwrap();
        assert_eq!(r.teichmuller(), &[0, 1, 7, 18, 24]);
        for &u in r.teichmuller() {
            assert_eq!(r.pow(u, 5), u);
        }
    }

    #[test]
    fn z8_is_plain_modular_arithmetic() {
        let r = gr_build(2, 3, 1).unwrap();
        assert_eq!(r.order(), 8);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(r.mul(a, b), a * b % 8);
                assert_eq!(r.add(a, b), (a + b) % 8);
            }
        }
    }

    #[test]
    fn exponent_one_matches_the_field() {
        let r = gr_build(3, 1, 2).unwrap();
        let f = gf_build(3, 2).unwrap();
        assert_eq!(r.modulus(), f.modulus());
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(r.mul(a, b), f.mul(a, b));
            }
            assert_eq!(r.teichmuller()[a as usize], a);
        }
    }

    #[test]
    fn unit_group_size_and_inverses() {
        let r = gr_build(2, 2, 2).unwrap();
        let units: Vec<u64> = r.elements().filter(|&a| r.is_unit(a)).collect();
        assert_eq!(units.len(), 12); // q^(e-1) * (q - 1)
        for &a in &units {
            assert_eq!(r.mul(a, r.inv(a).unwrap()), 1);
        }
        assert!(matches!(r.inv(0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn teichmuller_reduces_to_its_residue() {
        for (p, e, d) in [(2, 2, 2), (3, 2, 1), (2, 3, 2), (5, 2, 1)] {
            let r = gr_build(p, e, d).unwrap();
            for (res, &u) in r.teichmuller().iter().enumerate() {
                assert_eq!(r.reduce_mod_p(u), res as u64);
            }
        }
    }

    #[test]
    fn mul_matrix_agrees_with_multiplication() {
        let r = gr_build(2, 2, 2).unwrap();
        for v in r.elements() {
            let mat = r.mul_matrix(v);
            for x in r.elements() {
                let xc = r.coeffs(x);
                let mut prod = vec![0u64; r.degree()];
                for (i, slot) in prod.iter_mut().enumerate() {
                    for (j, &xcj) in xc.iter().enumerate() {
                        *slot = (*slot + mat[i * r.degree() + j] * xcj) % r.coeff_modulus();
                    }
                }
                assert_eq!(r.from_coeffs(&prod), r.mul(v, x));
            }
        }
    }

    #[test]
    fn vandermonde_of_teichmuller_points_is_unimodular() {
        let r = gr_build(2, 2, 2).unwrap();
        let pts: Vec<u64> = r.teichmuller().to_vec();
        // rows (1, t, t^2) for three distinct Teichmuller points
        let rows: Vec<Vec<u64>> = pts[1..]
            .iter()
            .map(|&t| vec![1, t, r.mul(t, t)])
            .collect();
        assert!(gr_matrix_is_unimodular(&r, &rows));
        let degenerate = vec![rows[0].clone(), rows[0].clone(), rows[2].clone()];
        assert!(!gr_matrix_is_unimodular(&r, &degenerate));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(gr_build(4, 2, 1), Err(Error::NotPrime(4))));
        assert!(gr_build(2, 0, 1).is_err());
        assert!(matches!(
            gr_build(2, 21, 1),
            Err(Error::CapExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn ring_axioms_gr_9_2(a in 0u64..81, b in 0u64..81, c in 0u64..81) {
            let r = gr_build(3, 2, 2).unwrap();
            prop_assert_eq!(r.add(a, b), r.add(b, a));
            prop_assert_eq!(r.mul(a, b), r.mul(b, a));
            prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
            prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
            prop_assert_eq!(r.add(a, r.neg(a)), 0);
            prop_assert_eq!(r.mul(a, 1), a);
        }
    }
}
