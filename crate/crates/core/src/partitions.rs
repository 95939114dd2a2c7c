//! Partitions of a finite point set: joins, Cartesian-lattice checks,
//! coset partitions, diagonal semilattices, and a desk-scale stabilizer
//! search for partition sets.
//!
//! Points of a product G^m are indexed in mixed radix with the first
//! coordinate most significant, matching the group module's conventions.

use crate::groups::{automorphism_group, GroupTable};
use crate::perm::Perm;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Hard limit for the exhaustive stabilizer search.
pub const STABILIZER_POINT_CAP: usize = 12;

/// A partition of `{0, .., size-1}`, stored as one part label per point.
/// Labels are normalized so that parts are numbered by first occurrence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    size: usize,
    labels: Vec<usize>,
    part_count: usize,
}

impl Partition {
    /// Builds a partition from arbitrary labels, renumbering parts in
    /// order of first occurrence.
    pub fn new(raw: &[usize]) -> Result<Partition> {
        if raw.is_empty() {
            return Err(Error::input("partition needs at least one point"));
        }
        let mut map = std::collections::HashMap::new();
        let mut labels = Vec::with_capacity(raw.len());
        for &r in raw {
            let next = map.len();
            labels.push(*map.entry(r).or_insert(next));
        }
        Ok(Partition {
            size: labels.len(),
            part_count: map.len(),
            labels,
        })
    }

    pub fn discrete(size: usize) -> Partition {
        Partition {
            size,
            labels: (0..size).collect(),
            part_count: size,
        }
    }

    pub fn universal(size: usize) -> Partition {
        Partition {
            size,
            labels: vec![0; size],
            part_count: 1,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn part_count(&self) -> usize {
        self.part_count
    }

    pub fn label(&self, point: usize) -> usize {
        self.labels[point]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Points of each part, in part-label order.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.part_count];
        for (point, &l) in self.labels.iter().enumerate() {
            out[l].push(point);
        }
        out
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.part_count];
        for &l in &self.labels {
            out[l] += 1;
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.part_count == self.size
    }

    pub fn is_universal(&self) -> bool {
        self.part_count == 1
    }

    /// Whether every part of `self` lies inside a part of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.size != other.size {
            return false;
        }
        let mut seen = vec![usize::MAX; self.part_count];
        for point in 0..self.size {
            let mine = self.labels[point];
            let theirs = other.labels[point];
            if seen[mine] == usize::MAX {
                seen[mine] = theirs;
            } else if seen[mine] != theirs {
                return false;
            }
        }
        true
    }

    /// Relabels points by a bijection: point `p` of the result is point
    /// `perm^{-1}(p)` of the original, so part membership transports along
    /// `perm`.
    pub fn permuted(&self, perm: &Perm) -> Result<Partition> {
        if perm.len() != self.size {
            return Err(Error::input("permutation size mismatch"));
        }
        let mut raw = vec![0; self.size];
        for point in 0..self.size {
            raw[perm.apply(point)] = self.labels[point];
        }
        Partition::new(&raw)
    }
}

/// A list of partitions over a common point set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionSet {
    size: usize,
    members: Vec<Partition>,
    /// Free-form annotation (group, dimension) carried through I/O.
    pub meta: Option<String>,
}

impl PartitionSet {
    pub fn new(members: Vec<Partition>) -> Result<PartitionSet> {
        let Some(first) = members.first() else {
            return Err(Error::input("partition set needs at least one member"));
        };
        let size = first.size();
        if members.iter().any(|p| p.size() != size) {
            return Err(Error::input("partition set members differ in size"));
        }
        Ok(PartitionSet {
            size,
            members,
            meta: None,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn members(&self) -> &[Partition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb.max(ra)] = rb.min(ra);
        }
    }
}

/// Finest common coarsening of any number of partitions of the same set.
fn join_all<'a, I>(size: usize, parts: I) -> Partition
where
    I: IntoIterator<Item = &'a Partition>,
{
    let mut uf = UnionFind::new(size);
    for p in parts {
        debug_assert_eq!(p.size(), size);
        let mut first_of_part = vec![usize::MAX; p.part_count()];
        for point in 0..size {
            let l = p.label(point);
            if first_of_part[l] == usize::MAX {
                first_of_part[l] = point;
            } else {
                uf.union(first_of_part[l], point);
            }
        }
    }
    let raw: Vec<usize> = (0..size).map(|x| uf.find(x)).collect();
    Partition::new(&raw).expect("size > 0")
}

/// Finest common coarsening of two partitions.
pub fn join(p: &Partition, q: &Partition) -> Result<Partition> {
    if p.size() != q.size() {
        return Err(Error::input("join of partitions with different sizes"));
    }
    Ok(join_all(p.size(), [p, q]))
}

/// Whether the given partitions are the minimal nontrivial elements of an
/// m-dimensional Cartesian lattice (m = number of partitions).
///
/// The test forms, for each member `P_i`, the join `R_i` of all the other
/// members.  The members are Cartesian-minimal exactly when the map
/// sending a point to its tuple of `R_i` labels is a bijection onto the
/// full product and each `P_i` has as many parts as that product has
/// tuples with coordinate `i` deleted.  For two partitions this reduces
/// to the familiar grid condition: the label pair map is a bijection.
pub fn is_cartesian<'a, I>(members: I) -> bool
where
    I: IntoIterator<Item = &'a Partition>,
{
    let ps: Vec<&Partition> = members.into_iter().collect();
    let m = ps.len();
    if m < 2 {
        return false;
    }
    let size = ps[0].size();
    if ps.iter().any(|p| p.size() != size) {
        return false;
    }
    if ps.iter().any(|p| p.is_universal() || p.is_discrete()) {
        return false;
    }
    let coarse: Vec<Partition> = (0..m)
        .map(|i| {
            join_all(
                size,
                ps.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, p)| *p),
            )
        })
        .collect();
    let mut product: usize = 1;
    for r in &coarse {
        let Some(next) = product.checked_mul(r.part_count()) else {
            return false;
        };
        product = next;
    }
    if product != size {
        return false;
    }
    // evaluation map on coarse labels must be injective
    let mut seen = vec![false; size];
    for point in 0..size {
        let mut idx = 0;
        for r in &coarse {
            idx = idx * r.part_count() + r.label(point);
        }
        if seen[idx] {
            return false;
        }
        seen[idx] = true;
    }
    // each member must be exactly the meet of the other coarse partitions;
    // it refines that meet automatically, so a part count check suffices
    for (i, p) in ps.iter().enumerate() {
        let expected: usize = coarse
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r.part_count())
            .product();
        if p.part_count() != expected {
            return false;
        }
    }
    true
}

/// Partition of a group's element set into right cosets of a subgroup.
pub fn coset_partition(g: &GroupTable, subgroup: &[usize]) -> Result<Partition> {
    let n = g.order();
    if subgroup.is_empty() || subgroup.iter().any(|&h| h >= n) {
        return Err(Error::InvalidGroup("subgroup elements out of range".into()));
    }
    for &a in subgroup {
        if !subgroup.contains(&g.inv(a)) {
            return Err(Error::InvalidGroup("subgroup not closed under inverse".into()));
        }
        for &b in subgroup {
            if !subgroup.contains(&g.mul(a, b)) {
                return Err(Error::InvalidGroup("subgroup not closed under product".into()));
            }
        }
    }
    let mut raw = vec![usize::MAX; n];
    let mut next = 0;
    for y in 0..n {
        if raw[y] != usize::MAX {
            continue;
        }
        for &h in subgroup {
            raw[g.mul(h, y)] = next;
        }
        next += 1;
    }
    Partition::new(&raw)
}

/// Mixed-radix helpers for points of G^m, first coordinate most
/// significant.
pub fn tuple_to_point(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * n + g)
}

pub fn point_to_tuple(n: usize, m: usize, mut point: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    for slot in out.iter_mut().rev() {
        *slot = point % n;
        point /= n;
    }
    out
}

fn checked_power(n: usize, m: usize, cap: usize) -> Result<usize> {
    let mut size: usize = 1;
    for _ in 0..m {
        size = size
            .checked_mul(n)
            .filter(|&s| s <= cap)
            .ok_or(Error::CapExceeded {
                what: "point set",
                needed: usize::MAX,
                limit: cap,
            })?;
    }
    Ok(size)
}

/// The m+1 partitions of G^m into right cosets of the coordinate
/// subgroups and of the diagonal subgroup.
pub fn diagonal_semilattice(g: &GroupTable, m: usize, point_cap: usize) -> Result<PartitionSet> {
    if m < 2 {
        return Err(Error::input("dimension must be at least 2"));
    }
    let n = g.order();
    let size = checked_power(n, m, point_cap)?;
    let mut members = Vec::with_capacity(m + 1);
    for i in 0..m {
        // right cosets of the i-th coordinate subgroup: all coordinates
        // but i agree
        let mut raw = vec![0; size];
        for (point, slot) in raw.iter_mut().enumerate() {
            let tuple = point_to_tuple(n, m, point);
            let mut key = 0;
            for (j, &t) in tuple.iter().enumerate() {
                if j != i {
                    key = key * n + t;
                }
            }
            *slot = key;
        }
        members.push(Partition::new(&raw)?);
    }
    // right cosets of the diagonal subgroup: the vector of products
    // g_1^{-1} g_j is constant on each coset
    let mut raw = vec![0; size];
    for (point, slot) in raw.iter_mut().enumerate() {
        let tuple = point_to_tuple(n, m, point);
        let lead_inv = g.inv(tuple[0]);
        let mut key = 0;
        for &t in &tuple[1..] {
            key = key * n + g.mul(lead_inv, t);
        }
        *slot = key;
    }
    members.push(Partition::new(&raw)?);
    let mut ps = PartitionSet::new(members)?;
    ps.meta = Some(format!("diagonal semilattice, |G| = {n}, m = {m}"));
    Ok(ps)
}

/// Generating permutations of G^m for the diagonal group D(G, m): right
/// translations, left diagonal translations, automorphisms of G applied
/// to every coordinate, coordinate permutations, and the map
/// (g_1, .., g_m) -> (g_1^{-1}, g_1^{-1} g_2, .., g_1^{-1} g_m).
pub fn diagonal_group_generators(
    g: &GroupTable,
    m: usize,
    aut_cap: usize,
    point_cap: usize,
) -> Result<Vec<Perm>> {
    if m < 2 {
        return Err(Error::input("dimension must be at least 2"));
    }
    let n = g.order();
    let size = checked_power(n, m, point_cap)?;
    let mut gens: Vec<Perm> = Vec::new();
    let mut push_map = |f: &dyn Fn(&[usize]) -> Vec<usize>| -> Result<()> {
        let mut images = vec![0; size];
        for (point, slot) in images.iter_mut().enumerate() {
            let tuple = point_to_tuple(n, m, point);
            *slot = tuple_to_point(n, &f(&tuple));
        }
        gens.push(Perm::new(images)?);
        Ok(())
    };

    let group_gens = g.generating_set();
    for i in 0..m {
        for &a in &group_gens {
            push_map(&move |t: &[usize]| {
                let mut out = t.to_vec();
                out[i] = g.mul(out[i], a);
                out
            })?;
        }
    }
    for &a in &group_gens {
        push_map(&move |t: &[usize]| t.iter().map(|&x| g.mul(a, x)).collect())?;
    }
    for aut in automorphism_group(g, aut_cap)? {
        push_map(&move |t: &[usize]| t.iter().map(|&x| aut.apply(x)).collect())?;
    }
    // coordinate swap 0<->1 and left rotation generate all coordinate
    // permutations
    push_map(&|t: &[usize]| {
        let mut out = t.to_vec();
        out.swap(0, 1);
        out
    })?;
    if m > 2 {
        push_map(&|t: &[usize]| {
            let mut out = t[1..].to_vec();
            out.push(t[0]);
            out
        })?;
    }
    push_map(&|t: &[usize]| {
        let lead_inv = g.inv(t[0]);
        let mut out = vec![lead_inv];
        out.extend(t[1..].iter().map(|&x| g.mul(lead_inv, x)));
        out
    })?;
    Ok(gens)
}

/// All permutations of the point set carrying the member set of `ps` to
/// itself, with members allowed to permute among themselves.  Exhaustive
/// backtracking, capped at 12 points.
pub fn partition_set_stabilizer(ps: &PartitionSet) -> Result<Vec<Perm>> {
    let size = ps.size();
    if size > STABILIZER_POINT_CAP {
        return Err(Error::CapExceeded {
            what: "stabilizer point set",
            needed: size,
            limit: STABILIZER_POINT_CAP,
        });
    }
    let members = ps.members();
    let k = members.len();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();

    // which member may map to which: part-size multisets must match
    let mut size_sigs: Vec<Vec<usize>> = Vec::with_capacity(k);
    for p in members {
        let mut s = p.part_sizes();
        s.sort_unstable();
        size_sigs.push(s);
    }
    let mut assignment = vec![usize::MAX; k];
    let mut used_member = vec![false; k];
    search_member_assignment(
        members,
        &size_sigs,
        &mut assignment,
        &mut used_member,
        0,
        size,
        &mut found,
    );
    found
        .into_iter()
        .map(|images| Perm::new(images))
        .collect::<Result<Vec<Perm>>>()
}

fn search_member_assignment(
    members: &[Partition],
    size_sigs: &[Vec<usize>],
    assignment: &mut Vec<usize>,
    used_member: &mut Vec<bool>,
    level: usize,
    size: usize,
    found: &mut BTreeSet<Vec<usize>>,
) {
    let k = members.len();
    if level == k {
        let mut images = vec![usize::MAX; size];
        let mut taken = vec![false; size];
        let mut part_maps: Vec<Vec<usize>> = members
            .iter()
            .map(|p| vec![usize::MAX; p.part_count()])
            .collect();
        let mut part_hit: Vec<Vec<bool>> = assignment
            .iter()
            .map(|&t| vec![false; members[t].part_count()])
            .collect();
        extend_point(
            members,
            assignment,
            &mut images,
            &mut taken,
            &mut part_maps,
            &mut part_hit,
            0,
            found,
        );
        return;
    }
    for target in 0..k {
        if used_member[target] || size_sigs[level] != size_sigs[target] {
            continue;
        }
        assignment[level] = target;
        used_member[target] = true;
        search_member_assignment(
            members,
            size_sigs,
            assignment,
            used_member,
            level + 1,
            size,
            found,
        );
        used_member[target] = false;
        assignment[level] = usize::MAX;
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_point(
    members: &[Partition],
    assignment: &[usize],
    images: &mut Vec<usize>,
    taken: &mut Vec<bool>,
    part_maps: &mut [Vec<usize>],
    part_hit: &mut [Vec<bool>],
    point: usize,
    found: &mut BTreeSet<Vec<usize>>,
) {
    let size = images.len();
    if point == size {
        found.insert(images.clone());
        return;
    }
    for y in 0..size {
        if taken[y] {
            continue;
        }
        // tentatively map point -> y and check label consistency for
        // every member against its assigned target
        let mut touched: Vec<(usize, usize)> = Vec::new();
        let mut ok = true;
        for (i, p) in members.iter().enumerate() {
            let src_part = p.label(point);
            let dst_part = members[assignment[i]].label(y);
            let slot = part_maps[i][src_part];
            if slot == usize::MAX {
                if part_hit[i][dst_part] {
                    ok = false;
                    break;
                }
                part_maps[i][src_part] = dst_part;
                part_hit[i][dst_part] = true;
                touched.push((i, src_part));
            } else if slot != dst_part {
                ok = false;
                break;
            }
        }
        if ok {
            images[point] = y;
            taken[y] = true;
            extend_point(
                members, assignment, images, taken, part_maps, part_hit, point + 1, found,
            );
            taken[y] = false;
            images[point] = usize::MAX;
        }
        for (i, src_part) in touched {
            let dst = part_maps[i][src_part];
            part_maps[i][src_part] = usize::MAX;
            part_hit[i][dst] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_table, AbelianSpec};
    use crate::perm::generated_group_order;
    use proptest::prelude::*;

    fn cyclic(n: usize) -> GroupTable {
        build_table(&AbelianSpec::new(vec![n]).unwrap()).unwrap()
    }

    #[test]
    fn join_examples() {
        let p = Partition::new(&[0, 0, 1, 1]).unwrap();
        let q = Partition::new(&[0, 1, 0, 1]).unwrap();
        assert_eq!(join(&p, &p).unwrap(), p);
        assert_eq!(join(&p, &q).unwrap(), Partition::universal(4));
        assert_eq!(join(&p, &Partition::discrete(4)).unwrap(), p);
    }

    #[test]
    fn join_in_the_boolean_model() {
        // points of {0,1}^3; joining the partitions that allow coordinate
        // 0 and coordinate 1 to vary gives the partition allowing both
        let size = 8;
        let part_allowing = |coords: &[usize]| {
            let raw: Vec<usize> = (0..size)
                .map(|p| {
                    let mut key = 0;
                    for bit in 0..3 {
                        if !coords.contains(&bit) {
                            key = key * 2 + ((p >> bit) & 1);
                        }
                    }
                    key
                })
                .collect();
            Partition::new(&raw).unwrap()
        };
        let q1 = part_allowing(&[0]);
        let q2 = part_allowing(&[1]);
        let q12 = part_allowing(&[0, 1]);
        assert_eq!(join(&q1, &q2).unwrap(), q12);
    }

    #[test]
    fn grid_is_cartesian() {
        let rows = Partition::new(&[0, 0, 0, 1, 1, 1, 2, 2, 2]).unwrap();
        let cols = Partition::new(&[0, 1, 2, 0, 1, 2, 0, 1, 2]).unwrap();
        assert!(is_cartesian([&rows, &cols]));
        assert!(!is_cartesian([&rows, &rows]));
        assert!(!is_cartesian([&rows]));
    }

    #[test]
    fn coordinate_partitions_of_cube_are_cartesian() {
        let g = cyclic(2);
        let ps = diagonal_semilattice(&g, 3, 1000).unwrap();
        // all 4 triples from the 4 members
        for skip in 0..4 {
            let subset: Vec<&Partition> = ps
                .members()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, p)| p)
                .collect();
            assert!(is_cartesian(subset), "triple omitting {skip}");
        }
    }

    #[test]
    fn dependent_subgroups_are_rejected() {
        // cosets of <e1>, <e2>, <e1+e2> in C5^2 are pairwise but not
        // triply independent; with m = 3 over C5^3 analogous vectors give
        // a singular triple
        let n = 5;
        let size = 125;
        let line = |v: [usize; 3]| {
            let mut raw = vec![usize::MAX; size];
            let mut next = 0;
            for p in 0..size {
                if raw[p] != usize::MAX {
                    continue;
                }
                let t = point_to_tuple(n, 3, p);
                for c in 0..n {
                    let moved = [
                        (t[0] + c * v[0]) % n,
                        (t[1] + c * v[1]) % n,
                        (t[2] + c * v[2]) % n,
                    ];
                    raw[tuple_to_point(n, &moved)] = next;
                }
                next += 1;
            }
            Partition::new(&raw).unwrap()
        };
        let a = line([1, 0, 0]);
        let b = line([0, 1, 0]);
        let c = line([0, 0, 1]);
        let bad = line([1, 1, 0]); // inside the span of a and b
        assert!(is_cartesian([&a, &b, &c]));
        assert!(!is_cartesian([&a, &b, &bad]));
    }

    #[test]
    fn coset_partition_examples() {
        let g = cyclic(4);
        let whole = coset_partition(&g, &[0, 1, 2, 3]).unwrap();
        assert!(whole.is_universal());
        let trivial = coset_partition(&g, &[0]).unwrap();
        assert!(trivial.is_discrete());
        let halves = coset_partition(&g, &[0, 2]).unwrap();
        assert_eq!(halves.part_count(), 2);
        assert_eq!(halves.labels(), &[0, 1, 0, 1]);
        assert!(coset_partition(&g, &[0, 1]).is_err());
    }

    #[test]
    fn diagonal_subgroup_of_c2_squared() {
        let g = cyclic(2);
        let g2 = g.direct_product(&g).unwrap();
        // diagonal subgroup {(0,0), (1,1)} = indices {0, 3}
        let p = coset_partition(&g2, &[0, 3]).unwrap();
        assert_eq!(p.part_count(), 2);
        assert_eq!(p.label(0), p.label(3));
        assert_eq!(p.label(1), p.label(2));
        assert_ne!(p.label(0), p.label(1));
    }

    #[test]
    fn semilattice_matches_coset_partitions() {
        let g = cyclic(3);
        let ps = diagonal_semilattice(&g, 2, 1000).unwrap();
        let g2 = g.direct_product(&g).unwrap();
        // coordinate subgroup {(g, 0)}: indices 0, 3, 6; its cosets fix
        // the second coordinate
        let q1 = coset_partition(&g2, &[0, 3, 6]).unwrap();
        let q2 = coset_partition(&g2, &[0, 1, 2]).unwrap();
        let q3 = coset_partition(&g2, &[0, 4, 8]).unwrap();
        assert_eq!(ps.members()[0], q1);
        assert_eq!(ps.members()[1], q2);
        assert_eq!(ps.members()[2], q3);
    }

    #[test]
    fn semilattice_triple_members_have_coset_structure() {
        let g = cyclic(2);
        let ps = diagonal_semilattice(&g, 3, 1000).unwrap();
        assert_eq!(ps.len(), 4);
        assert_eq!(ps.size(), 8);
        for p in ps.members() {
            assert_eq!(p.part_count(), 4);
            assert!(p.part_sizes().iter().all(|&s| s == 2));
        }
    }

    #[test]
    fn generators_stabilize_the_semilattice() {
        let g = cyclic(2);
        for m in [2, 3] {
            let ps = diagonal_semilattice(&g, m, 1000).unwrap();
            let gens = diagonal_group_generators(&g, m, 100, 1000).unwrap();
            for gen in &gens {
                for p in ps.members() {
                    let moved = p.permuted(gen).unwrap();
                    assert!(
                        ps.members().contains(&moved),
                        "generator must permute the members"
                    );
                }
            }
        }
    }

    #[test]
    fn translation_by_identity_is_identity() {
        let g = cyclic(3);
        let n = g.order();
        let size = 9;
        let mut images = vec![0; size];
        for (point, slot) in images.iter_mut().enumerate() {
            let mut t = point_to_tuple(n, 2, point);
            t[0] = g.mul(t[0], g.identity());
            *slot = tuple_to_point(n, &t);
        }
        assert!(Perm::new(images).unwrap().is_identity());
    }

    #[test]
    fn last_generator_is_an_involution_on_c2_squared() {
        let g = cyclic(2);
        let gens = diagonal_group_generators(&g, 2, 100, 1000).unwrap();
        let last = gens.last().unwrap();
        assert!(last.then(last).is_identity());
    }

    #[test]
    fn stabilizer_of_discrete_partition_is_symmetric_group() {
        let ps = PartitionSet::new(vec![Partition::discrete(4)]).unwrap();
        let stab = partition_set_stabilizer(&ps).unwrap();
        assert_eq!(stab.len(), 24);
    }

    #[test]
    fn stabilizer_of_2x2_grid_has_order_8() {
        let rows = Partition::new(&[0, 0, 1, 1]).unwrap();
        let cols = Partition::new(&[0, 1, 0, 1]).unwrap();
        let ps = PartitionSet::new(vec![rows, cols]).unwrap();
        let stab = partition_set_stabilizer(&ps).unwrap();
        assert_eq!(stab.len(), 8);
    }

    #[test]
    fn stabilizer_cap_is_enforced() {
        let ps = PartitionSet::new(vec![Partition::discrete(13)]).unwrap();
        assert!(matches!(
            partition_set_stabilizer(&ps),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn semilattice_stabilizer_matches_generated_group_for_c2_m2() {
        let g = cyclic(2);
        let ps = diagonal_semilattice(&g, 2, 1000).unwrap();
        let stab = partition_set_stabilizer(&ps).unwrap();
        let gens = diagonal_group_generators(&g, 2, 100, 1000).unwrap();
        assert_eq!(stab.len(), generated_group_order(&gens));
    }

    proptest! {
        #[test]
        fn join_is_commutative_and_associative(
            a in proptest::collection::vec(0usize..4, 12),
            b in proptest::collection::vec(0usize..4, 12),
            c in proptest::collection::vec(0usize..4, 12),
        ) {
            let p = Partition::new(&a).unwrap();
            let q = Partition::new(&b).unwrap();
            let r = Partition::new(&c).unwrap();
            prop_assert_eq!(join(&p, &q).unwrap(), join(&q, &p).unwrap());
            let left = join(&join(&p, &q).unwrap(), &r).unwrap();
            let right = join(&p, &join(&q, &r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn cartesian_is_invariant_under_relabeling(seed in 0u64..500) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let size = 9;
            let rows = Partition::new(&(0..size).map(|p| p / 3).collect::<Vec<_>>()).unwrap();
            let cols = Partition::new(&(0..size).map(|p| p % 3).collect::<Vec<_>>()).unwrap();
            let mut images: Vec<usize> = (0..size).collect();
            images.shuffle(&mut rng);
            let perm = Perm::new(images).unwrap();
            let r2 = rows.permuted(&perm).unwrap();
            let c2 = cols.permuted(&perm).unwrap();
            prop_assert!(is_cartesian([&r2, &c2]));
            prop_assert!(is_cartesian([&c2, &r2]));
        }
    }
}
