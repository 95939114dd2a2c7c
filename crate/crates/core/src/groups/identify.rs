//! Naming finite groups up to isomorphism.
//!
//! Abelian groups of any order are named exactly through their invariant
//! factors, computed from element-order counts.  Non-abelian groups are
//! looked up in a hand-verified fingerprint table covering orders up to 14;
//! the fingerprint is the multiset of element orders together with the
//! sizes of the centre and the derived subgroup, which separates all
//! non-abelian groups in that range.

use super::{invariant_factors_from_primary, GroupTable};
use crate::{Error, Result};

/// A group name such as `C2×C4`, `D8`, or `S3`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupName(String);

impl GroupName {
    pub fn new(name: impl Into<String>) -> Self {
        GroupName(name.into())
    }

    pub fn from_invariant_factors(factors: &[usize]) -> Self {
        if factors.is_empty() {
            return GroupName("C1".into());
        }
        let parts: Vec<String> = factors.iter().map(|d| format!("C{d}")).collect();
        GroupName(parts.join("×"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for GroupName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Prime-power orders of the cyclic factors of an abelian group, sorted
/// ascending.  Returns `None` when the group is not abelian.
///
/// The decomposition is recovered from the counts of elements of order
/// dividing `p^j`: in a product of cyclic `p`-groups with exponents `e_i`
/// that count is `p` raised to `sum(min(e_i, j))`, so consecutive
/// differences of the logarithms give the number of factors with `e_i >= j`.
pub fn primary_decomposition(g: &GroupTable) -> Option<Vec<usize>> {
    if !g.is_abelian() {
        return None;
    }
    let n = g.order();
    if n == 1 {
        return Some(Vec::new());
    }
    let orders = g.element_orders();
    let mut primary = Vec::new();
    for p in prime_divisors(n) {
        // count[j] = number of elements whose order divides p^j
        let mut log_counts = vec![0usize]; // j = 0: just the identity
        let mut pj = 1usize;
        loop {
            pj *= p;
            let c = orders.iter().filter(|&&o| pj % o == 0).count();
            let mut s = 0;
            let mut m = c;
            while m > 1 {
                debug_assert_eq!(m % p, 0, "element count must be a power of {p}");
                m /= p;
                s += 1;
            }
            if s == *log_counts.last().unwrap() {
                break; // Sylow subgroup exhausted
            }
            log_counts.push(s);
        }
        let max_j = log_counts.len() - 1;
        let at_least = |j: usize| -> usize {
            if j > max_j {
                0
            } else {
                log_counts[j] - log_counts[j - 1]
            }
        };
        for j in 1..=max_j {
            let mult = at_least(j) - at_least(j + 1);
            for _ in 0..mult {
                primary.push(p.pow(j as u32) as usize);
            }
        }
    }
    primary.sort_unstable();
    Some(primary)
}

struct Fingerprint {
    order: usize,
    order_counts: &'static [(usize, usize)],
    center: usize,
    derived: usize,
    name: &'static str,
}

// Element-order multisets alone already separate the non-abelian groups of
// each order up to 14; centre and derived sizes are kept as a cross-check.
const FINGERPRINTS: &[Fingerprint] = &[
    Fingerprint {
        order: 6,
        order_counts: &[(1, 1), (2, 3), (3, 2)],
        center: 1,
        derived: 3,
        name: "S3",
    },
    Fingerprint {
        order: 8,
        order_counts: &[(1, 1), (2, 5), (4, 2)],
        center: 2,
        derived: 2,
        name: "D8",
    },
    Fingerprint {
        order: 8,
        order_counts: &[(1, 1), (2, 1), (4, 6)],
        center: 2,
        derived: 2,
        name: "Q8",
    },
    Fingerprint {
        order: 10,
        order_counts: &[(1, 1), (2, 5), (5, 4)],
        center: 1,
        derived: 5,
        name: "D10",
    },
    Fingerprint {
        order: 12,
        order_counts: &[(1, 1), (2, 7), (3, 2), (6, 2)],
        center: 2,
        derived: 3,
        name: "D12",
    },
    Fingerprint {
        order: 12,
        order_counts: &[(1, 1), (2, 3), (3, 8)],
        center: 1,
        derived: 4,
        name: "A4",
    },
    Fingerprint {
        order: 12,
        order_counts: &[(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)],
        center: 2,
        derived: 3,
        name: "Dic3",
    },
    Fingerprint {
        order: 14,
        order_counts: &[(1, 1), (2, 7), (7, 6)],
        center: 1,
        derived: 7,
        name: "D14",
    },
];

/// Names the isomorphism type of `g`.
///
/// Abelian groups are identified exactly at any order.  Non-abelian groups
/// are matched against the fingerprint table; groups it does not cover
/// (including every non-abelian group of order 16 and beyond) are rejected
/// with [`Error::UnsupportedOrder`].
pub fn identify_group(g: &GroupTable) -> Result<GroupName> {
    if let Some(primary) = primary_decomposition(g) {
        let factors = invariant_factors_from_primary(&primary);
        return Ok(GroupName::from_invariant_factors(&factors));
    }
    let n = g.order();
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for o in g.element_orders() {
        match counts.iter_mut().find(|(ord, _)| *ord == o) {
            Some((_, c)) => *c += 1,
            None => counts.push((o, 1)),
        }
    }
    counts.sort_unstable();
    let center = g.center_size();
    let derived = g.derived_subgroup_size();
    for fp in FINGERPRINTS {
        if fp.order == n
            && fp.order_counts == counts.as_slice()
            && fp.center == center
            && fp.derived == derived
        {
            return Ok(GroupName::new(fp.name));
        }
    }
    Err(Error::UnsupportedOrder(n))
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut ps = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            ps.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_table, dihedral_table, AbelianSpec};
    use crate::Perm;

    fn abelian(orders: &[usize]) -> GroupTable {
        build_table(&AbelianSpec::new(orders.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn names_abelian_groups_by_invariant_factors() {
        assert_eq!(identify_group(&abelian(&[5])).unwrap().as_str(), "C5");
        assert_eq!(
            identify_group(&abelian(&[4, 2])).unwrap().as_str(),
            "C2×C4"
        );
        assert_eq!(
            identify_group(&abelian(&[2, 2, 2])).unwrap().as_str(),
            "C2×C2×C2"
        );
        assert_eq!(identify_group(&abelian(&[3, 2])).unwrap().as_str(), "C6");
        assert_eq!(
            identify_group(&abelian(&[3, 3])).unwrap().as_str(),
            "C3×C3"
        );
    }

    #[test]
    fn names_dihedral_groups() {
        assert_eq!(identify_group(&dihedral_table(4).unwrap()).unwrap().as_str(), "D8");
        assert_eq!(identify_group(&dihedral_table(3).unwrap()).unwrap().as_str(), "S3");
        assert_eq!(identify_group(&dihedral_table(5).unwrap()).unwrap().as_str(), "D10");
        assert_eq!(identify_group(&dihedral_table(6).unwrap()).unwrap().as_str(), "D12");
        assert_eq!(identify_group(&dihedral_table(7).unwrap()).unwrap().as_str(), "D14");
    }

    #[test]
    fn names_quaternion_group() {
        // Q8 as +-{1, i, j, k}: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k
        let neg = |x: usize| x ^ 1;
        let mut rows = vec![vec![0usize; 8]; 8];
        let table = |a: usize, b: usize| -> usize {
            // multiplication on {1, i, j, k} with signs
            const UNIT: [[(usize, bool); 4]; 4] = [
                [(0, false), (1, false), (2, false), (3, false)],
                [(1, false), (0, true), (3, false), (2, true)],
                [(2, false), (3, true), (0, true), (1, false)],
                [(3, false), (2, false), (1, true), (0, true)],
            ];
            let (ua, sa) = (a / 2, a % 2 == 1);
            let (ub, sb) = (b / 2, b % 2 == 1);
            let (u, s) = UNIT[ua][ub];
            let sign = (sa != sb) != s;
            u * 2 + usize::from(sign)
        };
        for a in 0..8 {
            for b in 0..8 {
                rows[a][b] = table(a, b);
            }
        }
        let _ = neg;
        let g = GroupTable::from_rows(&rows).unwrap();
        assert_eq!(identify_group(&g).unwrap().as_str(), "Q8");
    }

    #[test]
    fn rejects_unknown_orders() {
        // S4 has order 24: outside the fingerprint table.
        // Build it as permutations of 4 points.
        let mut perms: Vec<Perm> = Vec::new();
        fn heap(k: usize, arr: &mut Vec<usize>, out: &mut Vec<Perm>) {
            if k == 1 {
                out.push(Perm::new(arr.clone()).unwrap());
                return;
            }
            for i in 0..k {
                heap(k - 1, arr, out);
                if k % 2 == 0 {
                    arr.swap(i, k - 1);
                } else {
                    arr.swap(0, k - 1);
                }
            }
        }
        heap(4, &mut vec![0, 1, 2, 3], &mut perms);
        perms.sort();
        let idx = |p: &Perm| perms.binary_search(p).unwrap();
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx(&a.then(b))).collect())
            .collect();
        let g = GroupTable::from_rows(&rows).unwrap();
        assert!(matches!(
            identify_group(&g),
            Err(Error::UnsupportedOrder(24))
        ));
    }

    #[test]
    fn primary_decomposition_examples() {
        assert_eq!(primary_decomposition(&abelian(&[4, 2])), Some(vec![2, 4]));
        assert_eq!(
            primary_decomposition(&abelian(&[2, 3, 4, 9])),
            Some(vec![2, 3, 4, 9])
        );
        assert_eq!(primary_decomposition(&dihedral_table(4).unwrap()), None);
    }

    #[test]
    fn identification_is_relabeling_invariant() {
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for base in [abelian(&[4, 2]), dihedral_table(4).unwrap(), abelian(&[9])] {
            let want = identify_group(&base).unwrap();
            let n = base.order();
            for _ in 0..5 {
                let mut images: Vec<usize> = (0..n).collect();
                images.shuffle(&mut rng);
                let sigma = Perm::new(images).unwrap();
                let mut rows = vec![vec![0usize; n]; n];
                for x in 0..n {
                    for y in 0..n {
                        rows[sigma.apply(x)][sigma.apply(y)] = sigma.apply(base.mul(x, y));
                    }
                }
                let relabeled = GroupTable::from_rows(&rows).unwrap();
                assert_eq!(identify_group(&relabeled).unwrap(), want);
            }
        }
    }
}
