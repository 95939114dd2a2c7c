//! Permutations of `0..n`, used for automorphisms, isotopisms, and
//! stabilizer elements.
//!
//! Composition reads left to right: `a.then(b)` applies `a` first.  This
//! matches the convention used throughout the crate that maps act on the
//! right of their argument.

use crate::{Error, Result};

/// A permutation of `0..n`, stored as its image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    /// Wraps an image vector, checking that it is a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::input("image vector is not a permutation"));
            }
            seen[v] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm(self.0.iter().map(|&v| other.0[v]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// Number of fixed points.
    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &v)| i == v).count()
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// Order of the permutation group generated by `gens`, computed by closure.
///
/// All generators must act on the same point set.  Intended for desk-scale
/// groups; the closure is held in memory.
pub fn generated_group_order(gens: &[Perm]) -> usize {
    if gens.is_empty() {
        return 1;
    }
    let n = gens[0].len();
    let mut seen = std::collections::HashSet::new();
    let mut queue = vec![Perm::identity(n)];
    seen.insert(Perm::identity(n));
    while let Some(p) = queue.pop() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                queue.push(q);
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_then_applies_left_first() {
        let a = Perm::new(vec![1, 2, 0]).unwrap();
        let b = Perm::new(vec![0, 2, 1]).unwrap();
        let c = a.then(&b);
        // x -> a(x) -> b(a(x))
        assert_eq!(c.apply(0), 2);
        assert_eq!(c.apply(1), 1);
        assert_eq!(c.apply(2), 0);
    }

    #[test]
    fn inverse_round_trip() {
        let a = Perm::new(vec![2, 0, 3, 1]).unwrap();
        assert!(a.then(&a.inverse()).is_identity());
        assert!(a.inverse().then(&a).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
    }

    #[test]
    fn symmetric_group_order() {
        let swap = Perm::new(vec![1, 0, 2, 3]).unwrap();
        let cycle = Perm::new(vec![1, 2, 3, 0]).unwrap();
        assert_eq!(generated_group_order(&[swap, cycle]), 24);
    }
}
