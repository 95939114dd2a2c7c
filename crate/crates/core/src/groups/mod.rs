//! Finite groups as explicit multiplication tables.
//!
//! A [`GroupTable`] stores the full Cayley table of a finite group together
//! with its identity and inverse map.  Construction always validates the
//! table: rows and columns must be permutations, a two-sided identity must
//! exist, and associativity is checked with Light's test against a greedily
//! chosen generating set.
//!
//! Abelian groups are usually described by an [`AbelianSpec`], a list of
//! prime-power cyclic orders.  Its elements are tuples in
//! mixed-radix order with the first coordinate most significant, so the
//! element with index 0 is the identity.

mod aut;
mod fpf;
mod identify;

pub use aut::automorphism_group;
pub use fpf::{
    fpf_triple_bruteforce, fpf_triple_exists, fpf_triple_witness, fpf_violation,
    is_fixed_point_free, FpfWitness, LayerRecipe,
};
pub use identify::{identify_group, primary_decomposition, GroupName};

use crate::{Error, Perm, Result};

/// Ceiling on the number of elements accepted when building a table.
pub const GROUP_ELEMENT_CAP: usize = 1 << 20;

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
}

impl GroupTable {
    /// Builds a group from a square table `rows[x][y] = x * y`, validating
    /// the Latin property, the existence of a two-sided identity, inverses,
    /// and associativity.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > GROUP_ELEMENT_CAP {
            return Err(Error::CapExceeded {
                what: "group elements",
                needed: n,
                limit: GROUP_ELEMENT_CAP,
            });
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidGroup(format!(
                        "entry {v} out of range for order {n}"
                    )));
                }
                mul.push(v);
            }
        }
        Self::from_flat(n, mul)
    }

    fn from_flat(n: usize, mul: Vec<usize>) -> Result<Self> {
        // Latin property: every row and column is a permutation.
        let mut seen = vec![false; n];
        for x in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..n {
                let v = mul[x * n + y];
                if seen[v] {
                    return Err(Error::InvalidGroup(format!("row {x} repeats {v}")));
                }
                seen[v] = true;
            }
        }
        for y in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for x in 0..n {
                let v = mul[x * n + y];
                if seen[v] {
                    return Err(Error::InvalidGroup(format!("column {y} repeats {v}")));
                }
                seen[v] = true;
            }
        }

        // Two-sided identity.
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;

        // Light's associativity test against a generating set: if
        // (x*t)*y == x*(t*y) for every generator t and all x, y, and the
        // generators reach the whole table by products, the operation is
        // associative.
        let gens = generating_set_raw(n, &mul, identity);
        for &t in &gens {
            for x in 0..n {
                let xt = mul[x * n + t];
                for y in 0..n {
                    if mul[xt * n + y] != mul[x * n + mul[t * n + y]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({x}, {t}, {y})"
                        )));
                    }
                }
            }
        }

        let mut inv = vec![0; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| mul[x * n + y] == identity)
                .expect("Latin row contains the identity");
            debug_assert_eq!(mul[y * n + x], identity);
            inv[x] = y;
        }

        Ok(GroupTable {
            n,
            mul,
            identity,
            inv,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Multiplicative order of `x`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.n).map(|x| self.element_order(x)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|x| (x..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn center_size(&self) -> usize {
        (0..self.n)
            .filter(|&x| (0..self.n).all(|y| self.mul(x, y) == self.mul(y, x)))
            .count()
    }

    /// Order of the derived (commutator) subgroup.
    pub fn derived_subgroup_size(&self) -> usize {
        let mut comms = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                let c = self.mul(
                    self.mul(self.inv[x], self.inv[y]),
                    self.mul(x, y),
                );
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_generated(&comms).len()
    }

    /// Elements of the subgroup generated by `gens`, sorted ascending.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_sub = vec![false; self.n];
        in_sub[self.identity] = true;
        let mut members = vec![self.identity];
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in gens {
                for v in [self.mul(x, g), self.mul(x, self.inv[g])] {
                    if !in_sub[v] {
                        in_sub[v] = true;
                        members.push(v);
                        queue.push(v);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// A small generating set, chosen greedily by element index.
    pub fn generating_set(&self) -> Vec<usize> {
        generating_set_raw(self.n, &self.mul, self.identity)
    }

    /// Direct product, with `self` as the most significant coordinate:
    /// `(x1, x2)` is indexed as `x1 * other.order() + x2`.
    pub fn direct_product(&self, other: &GroupTable) -> Result<GroupTable> {
        let n = self
            .n
            .checked_mul(other.n)
            .filter(|&n| n <= GROUP_ELEMENT_CAP)
            .ok_or(Error::CapExceeded {
                what: "group elements",
                needed: usize::MAX,
                limit: GROUP_ELEMENT_CAP,
            })?;
        let mut mul = vec![0usize; n * n];
        for a1 in 0..self.n {
            for a2 in 0..other.n {
                let a = a1 * other.n + a2;
                for b1 in 0..self.n {
                    for b2 in 0..other.n {
                        let b = b1 * other.n + b2;
                        mul[a * n + b] = self.mul(a1, b1) * other.n + other.mul(a2, b2);
                    }
                }
            }
        }
        GroupTable::from_flat(n, mul)
    }
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable(order {})", self.n)
    }
}

fn generating_set_raw(n: usize, mul: &[usize], identity: usize) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = vec![false; n];
    reached[identity] = true;
    let mut count = 1;
    for x in 0..n {
        if reached[x] {
            continue;
        }
        gens.push(x);
        // Extend the reachable set by products with the new generator.
        let mut queue: Vec<usize> = (0..n).filter(|&v| reached[v]).collect();
        while let Some(a) = queue.pop() {
            for &g in &gens {
                let v = mul[a * n + g];
                if !reached[v] {
                    reached[v] = true;
                    count += 1;
                    queue.push(v);
                }
            }
        }
        if count == n {
            break;
        }
    }
    gens
}

/// An abelian group presented as a direct product of cyclic groups of
/// prime-power order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianSpec {
    orders: Vec<usize>,
}

impl AbelianSpec {
    /// Validates that every entry is a prime power at least 2.  The factor
    /// order given here is preserved; it fixes the mixed-radix element
    /// numbering.
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        for &k in &orders {
            if prime_power_base(k).is_none() {
                return Err(Error::input(format!(
                    "cyclic order {k} is not a prime power >= 2"
                )));
            }
        }
        Ok(AbelianSpec { orders })
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product()
    }

    /// Index of a tuple, first coordinate most significant.
    pub fn index_of(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.orders.len());
        let mut idx = 0;
        for (t, &k) in tuple.iter().zip(&self.orders) {
            debug_assert!(*t < k);
            idx = idx * k + t;
        }
        idx
    }

    pub fn tuple_of(&self, mut idx: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.orders.len()];
        for (slot, &k) in tuple.iter_mut().zip(&self.orders).rev() {
            *slot = idx % k;
            idx /= k;
        }
        tuple
    }

    /// Primary decomposition as a sorted list of prime-power orders.
    pub fn primary_orders(&self) -> Vec<usize> {
        let mut v = self.orders.clone();
        v.sort_unstable();
        v
    }

    /// Invariant factors `d1 | d2 | ...`, smallest first.
    pub fn invariant_factors(&self) -> Vec<usize> {
        invariant_factors_from_primary(&self.orders)
    }

    pub fn name(&self) -> GroupName {
        GroupName::from_invariant_factors(&self.invariant_factors())
    }
}

/// Builds the full multiplication table of an abelian spec.
pub fn build_table(spec: &AbelianSpec) -> Result<GroupTable> {
    let n: usize = spec
        .orders
        .iter()
        .try_fold(1usize, |acc, &k| acc.checked_mul(k))
        .filter(|&n| n <= GROUP_ELEMENT_CAP)
        .ok_or(Error::CapExceeded {
            what: "group elements",
            needed: usize::MAX,
            limit: GROUP_ELEMENT_CAP,
        })?;
    let mut mul = vec![0usize; n * n];
    let tuples: Vec<Vec<usize>> = (0..n).map(|i| spec.tuple_of(i)).collect();
    let mut sum = vec![0usize; spec.orders.len()];
    for a in 0..n {
        for b in 0..n {
            for (s, ((x, y), &k)) in sum
                .iter_mut()
                .zip(tuples[a].iter().zip(&tuples[b]).zip(&spec.orders))
            {
                *s = (x + y) % k;
            }
            mul[a * n + b] = spec.index_of(&sum);
        }
    }
    GroupTable::from_flat(n, mul)
}

/// Dihedral group of order `2k` for `k >= 3`.
///
/// Elements `0..k` are the rotations `r^i`; elements `k..2k` are the
/// reflections `s r^(i-k)`.
pub fn dihedral_table(k: usize) -> Result<GroupTable> {
    if k < 3 {
        return Err(Error::input(format!(
            "dihedral group needs k >= 3, got {k}"
        )));
    }
    let n = 2 * k;
    let mut rows = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let (ra, sa) = (a % k, a >= k);
            let (rb, sb) = (b % k, b >= k);
            rows[a][b] = match (sa, sb) {
                (false, false) => (ra + rb) % k,
                (false, true) => k + (rb + k - ra) % k,
                (true, false) => k + (ra + rb) % k,
                (true, true) => (rb + k - ra) % k,
            };
        }
    }
    GroupTable::from_rows(&rows)
}

/// An automorphism of a specific group table, stored as the permutation of
/// element indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Automorphism {
    perm: Perm,
}

impl Automorphism {
    /// Checks that `perm` is a bijective homomorphism of `g`.
    pub fn new(perm: Perm, g: &GroupTable) -> Result<Self> {
        if perm.len() != g.order() {
            return Err(Error::input("permutation length differs from group order"));
        }
        for x in 0..g.order() {
            for y in 0..g.order() {
                if perm.apply(g.mul(x, y)) != g.mul(perm.apply(x), perm.apply(y)) {
                    return Err(Error::input(format!(
                        "map is not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
        Ok(Automorphism { perm })
    }

    pub fn identity(g: &GroupTable) -> Self {
        Automorphism {
            perm: Perm::identity(g.order()),
        }
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn apply(&self, x: usize) -> usize {
        self.perm.apply(x)
    }

    /// `self` followed by `other`; automorphisms are closed under this.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            perm: self.perm.then(&other.perm),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            perm: self.perm.inverse(),
        }
    }
}

/// `Some(p)` when `k = p^e` with `e >= 1`, otherwise `None`.
pub fn prime_power_base(k: usize) -> Option<usize> {
    if k < 2 {
        return None;
    }
    let mut m = k;
    let mut p = 0;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            p = d;
            while m % d == 0 {
                m /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some(k); // k itself is prime
    }
    if m == 1 {
        Some(p)
    } else {
        None
    }
}

pub(crate) fn invariant_factors_from_primary(primary: &[usize]) -> Vec<usize> {
    use std::collections::BTreeMap;
    // prime -> exponent powers, largest first
    let mut by_prime: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &q in primary {
        let p = prime_power_base(q).expect("validated prime power");
        by_prime.entry(p).or_default().push(q);
    }
    for v in by_prime.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    let rounds = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = Vec::new();
    for i in 0..rounds {
        let f: usize = by_prime.values().filter_map(|v| v.get(i)).product();
        factors.push(f);
    }
    factors.reverse(); // smallest first, d1 | d2 | ...
    factors
}
