//! Dense polynomial arithmetic over `Z_m`, coefficients low degree first.
//!
//! Used for modulus selection and Hensel lifting.  Polynomials are plain
//! `Vec<u64>` values with no trailing zeros; the zero polynomial is the
//! empty vector.

use crate::{Error, Result};

pub type Poly = Vec<u64>;

pub fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[u64]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn add_mod(a: &[u64], b: &[u64], m: u64) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % m;
    }
    trim(out)
}

pub fn sub_mod(a: &[u64], b: &[u64], m: u64) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + m - y % m) % m;
    }
    trim(out)
}

pub fn mul_mod(a: &[u64], b: &[u64], m: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y % m) % m;
        }
    }
    trim(out)
}

pub fn scale_mod(a: &[u64], s: u64, m: u64) -> Poly {
    trim(a.iter().map(|&x| x * (s % m) % m).collect())
}

/// Quotient and remainder by a monic divisor.
pub fn divrem_monic(a: &[u64], f: &[u64], m: u64) -> (Poly, Poly) {
    assert_eq!(f.last(), Some(&1), "divisor must be monic");
    let d = f.len() - 1;
    let mut rem: Vec<u64> = a.iter().map(|&x| x % m).collect();
    if rem.len() <= d {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![0u64; rem.len() - d];
    for i in (d..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - d] = c;
        for (j, &fc) in f.iter().enumerate() {
            let idx = i - d + j;
            rem[idx] = (rem[idx] + m - c * fc % m) % m;
        }
    }
    (trim(quot), trim(rem))
}

/// `x^k mod f` over `Z_m`, with `f` monic.
pub fn x_pow_mod(k: u64, f: &[u64], m: u64) -> Poly {
    let mut base = vec![0, 1]; // x
    let mut acc = vec![1];
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = divrem_monic(&mul_mod(&acc, &base, m), f, m).1;
        }
        base = divrem_monic(&mul_mod(&base, &base, m), f, m).1;
        k >>= 1;
    }
    acc
}

/// Extended Euclid over `GF(p)`: returns `(g, s, t)` with `s a + t b = g`
/// and `g` monic (or zero).
pub fn egcd_mod_p(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly, Poly) {
    let mut r0: Poly = trim(a.iter().map(|&x| x % p).collect());
    let mut r1: Poly = trim(b.iter().map(|&x| x % p).collect());
    let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let lead = *r1.last().unwrap();
        let lead_inv = inv_mod_p(lead, p);
        let monic_r1 = scale_mod(&r1, lead_inv, p);
        let (q, rem) = divrem_monic(&r0, &monic_r1, p);
        let q = scale_mod(&q, lead_inv, p);
        let new_s = sub_mod(&s0, &mul_mod(&q, &s1, p), p);
        let new_t = sub_mod(&t0, &mul_mod(&q, &t1, p), p);
        (r0, r1) = (r1, rem);
        (s0, s1) = (s1, new_s);
        (t0, t1) = (t1, new_t);
    }
    if let Some(&lead) = r0.last() {
        let li = inv_mod_p(lead, p);
        r0 = scale_mod(&r0, li, p);
        s0 = scale_mod(&s0, li, p);
        t0 = scale_mod(&t0, li, p);
    }
    (r0, s0, t0)
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut acc = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Irreducibility over `GF(p)` by trial division with all monic divisors of
/// degree up to `deg f / 2`.
pub fn is_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let Some(d) = degree(f) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let mut divisor = vec![0u64; d / 2 + 1];
    for deg in 1..=d / 2 {
        let count = p.pow(deg as u32);
        for c in 0..count {
            divisor.resize(deg + 1, 0);
            let mut v = c;
            for slot in divisor.iter_mut().take(deg) {
                *slot = v % p;
                v /= p;
            }
            divisor[deg] = 1;
            let (_, rem) = divrem_monic(f, &divisor, p);
            if rem.is_empty() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible polynomial of degree `d` over `GF(p)` whose
/// coefficient vector, read as a base-`p` integer low digit first, is
/// smallest.
pub fn least_irreducible_monic(p: u64, d: usize) -> Result<Poly> {
    if d == 0 {
        return Err(Error::input("degree must be positive"));
    }
    let count = p
        .checked_pow(d as u32)
        .ok_or_else(|| Error::input("degree too large"))?;
    let mut f = vec![0u64; d + 1];
    for c in 0..count {
        let mut v = c;
        for slot in f.iter_mut().take(d) {
            *slot = v % p;
            v /= p;
        }
        f[d] = 1;
        if is_irreducible_mod_p(&f, p) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_round_trip() {
        let f = vec![1, 1, 1]; // 1 + x + x^2
        let a = vec![3, 0, 2, 4, 1];
        let (q, r) = divrem_monic(&a, &f, 5);
        let back = add_mod(&mul_mod(&q, &f, 5), &r, 5);
        assert_eq!(back, trim(a));
    }

    #[test]
    fn least_irreducible_examples() {
        // x^2 + x + 1 is the only irreducible quadratic over GF(2)
        assert_eq!(least_irreducible_monic(2, 2).unwrap(), vec![1, 1, 1]);
        // over GF(3) the scan hits x^2 + 1 first
        assert_eq!(least_irreducible_monic(3, 2).unwrap(), vec![1, 0, 1]);
        // degree 1: x itself
        assert_eq!(least_irreducible_monic(5, 1).unwrap(), vec![0, 1]);
        // x^3 + x + 1 over GF(2)
        assert_eq!(least_irreducible_monic(2, 3).unwrap(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn irreducibility_catches_products() {
        // (x+1)^2 = x^2 + 2x + 1 over GF(3)
        assert!(!is_irreducible_mod_p(&[1, 2, 1], 3));
        assert!(is_irreducible_mod_p(&[1, 0, 1], 3));
        // x^2 + 1 = (x+2)(x+3) over GF(5)
        assert!(!is_irreducible_mod_p(&[1, 0, 1], 5));
        assert!(is_irreducible_mod_p(&[2, 0, 1], 5));
    }

    #[test]
    fn egcd_gives_bezout_identity() {
        let p = 2;
        let f = vec![1, 1, 1]; // irreducible
        let g = vec![1, 1, 0, 0, 1]; // x^4 + x + 1
        let (gcd, s, t) = egcd_mod_p(&f, &g, p);
        assert_eq!(gcd, vec![1]);
        let lhs = add_mod(&mul_mod(&s, &f, p), &mul_mod(&t, &g, p), p);
        assert_eq!(lhs, vec![1]);
    }

    #[test]
    fn x_pow_mod_matches_naive() {
        let f = vec![1, 0, 1]; // x^2 + 1 over GF(3)
        let mut acc = vec![1];
        for k in 0..20u64 {
            assert_eq!(x_pow_mod(k, &f, 3), acc, "k = {k}");
            acc = divrem_monic(&mul_mod(&acc, &[0, 1], 3), &f, 3).1;
        }
    }
}
