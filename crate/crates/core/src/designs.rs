//! Systems of subgroup embeddings into G^m with their coset partitions,
//! verification of the defining any-m-Cartesian property, analysis of
//! regular systems, orthogonal arrays, and the conversions between the
//! two languages.

use crate::groups::{
    build_table, fpf_triple_bruteforce, fpf_triple_witness, identify_group, prime_power_base,
    AbelianSpec, Automorphism, GroupName, GroupTable,
};
use crate::latin::{LatinSquare, MolsSet};
use crate::partitions::{
    is_cartesian, point_to_tuple, tuple_to_point, Partition, PartitionSet,
};
use crate::perm::Perm;
use crate::{Error, Result};
use itertools::Itertools;
use rayon::prelude::*;

/// Automorphism enumeration budget for analysis fallbacks.
const ANALYZE_AUT_CAP: usize = 10_000;

/// The group a system is built over.
#[derive(Clone, Debug)]
pub enum ModsGroup {
    Spec(AbelianSpec),
    Table(GroupTable),
}

impl ModsGroup {
    fn build_table(&self) -> Result<GroupTable> {
        match self {
            ModsGroup::Spec(spec) => build_table(spec),
            ModsGroup::Table(t) => Ok(t.clone()),
        }
    }

    pub fn spec(&self) -> Option<&AbelianSpec> {
        match self {
            ModsGroup::Spec(s) => Some(s),
            ModsGroup::Table(_) => None,
        }
    }

    /// `(p, p^e, d)` when the group is a direct power of one cyclic
    /// prime-power group.
    pub fn homocyclic(&self) -> Option<(u64, u64, usize)> {
        let spec = self.spec()?;
        let orders = spec.orders();
        let q = orders[0];
        if orders.iter().any(|&o| o != q) {
            return None;
        }
        let p = prime_power_base(q)?;
        Some((p as u64, q as u64, orders.len()))
    }
}

/// How one copy of G sits inside G^m.
#[derive(Clone, Debug)]
pub enum EmbeddingKind {
    /// g goes to the i-th coordinate, identity elsewhere.
    Coordinate(usize),
    /// g goes to (g, a_2(g), .., a_m(g)) for automorphisms a_2..a_m.
    Diagonal(Vec<Automorphism>),
    /// Homocyclic groups only: digit vectors map through an
    /// (m*d) x d matrix over Z_{p^e}, row-major, first digit most
    /// significant.
    Matrix(Vec<u64>),
}

#[derive(Clone, Debug)]
pub struct Embedding {
    kind: EmbeddingKind,
    /// Point of G^m for each group element.
    map: Vec<usize>,
}

impl Embedding {
    pub fn kind(&self) -> &EmbeddingKind {
        &self.kind
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

#[derive(Clone, Debug)]
pub struct ModsSystem {
    group: ModsGroup,
    table: GroupTable,
    m: usize,
    embeddings: Vec<Embedding>,
    partitions: PartitionSet,
    size: usize,
}

impl ModsSystem {
    pub fn group(&self) -> &ModsGroup {
        &self.group
    }

    pub fn group_table(&self) -> &GroupTable {
        &self.table
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.embeddings.len() - self.m
    }

    pub fn embeddings(&self) -> &[Embedding] {
        &self.embeddings
    }

    pub fn partitions(&self) -> &PartitionSet {
        &self.partitions
    }

    pub fn point_count(&self) -> usize {
        self.size
    }

    fn mul_points(&self, a: usize, b: usize) -> usize {
        let n = self.table.order();
        let ta = point_to_tuple(n, self.m, a);
        let tb = point_to_tuple(n, self.m, b);
        let prod: Vec<usize> = ta
            .iter()
            .zip(&tb)
            .map(|(&x, &y)| self.table.mul(x, y))
            .collect();
        tuple_to_point(n, &prod)
    }
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

/// Builds a system from embedding descriptions.  The defining
/// any-m-Cartesian property is not assumed; run `mods_verify`.
pub fn mods_build(
    group: ModsGroup,
    m: usize,
    kinds: Vec<EmbeddingKind>,
    point_cap: usize,
) -> Result<ModsSystem> {
    if m < 2 {
        return Err(Error::input("dimension must be at least 2"));
    }
    if kinds.len() < m {
        return Err(Error::input("need at least m embeddings"));
    }
    let table = group.build_table()?;
    let n = table.order();
    let size = checked_power(n, m, point_cap)?;
    let embeddings: Vec<Embedding> = kinds
        .into_iter()
        .map(|kind| build_embedding(&group, &table, m, kind))
        .collect::<Result<_>>()?;
    let mut members = Vec::with_capacity(embeddings.len());
    for e in &embeddings {
        members.push(coset_partition_of_image(&table, m, size, &e.map)?);
    }
    let mut partitions = PartitionSet::new(members)?;
    partitions.meta = Some(format!("mods, |G| = {n}, m = {m}"));
    Ok(ModsSystem {
        group,
        table,
        m,
        embeddings,
        partitions,
        size,
    })
}

fn build_embedding(
    group: &ModsGroup,
    table: &GroupTable,
    m: usize,
    kind: EmbeddingKind,
) -> Result<Embedding> {
    let n = table.order();
    let map: Vec<usize> = match &kind {
        EmbeddingKind::Coordinate(i) => {
            if *i >= m {
                return Err(Error::BadEmbedding(format!(
                    "coordinate {i} out of range for m = {m}"
                )));
            }
            (0..n)
                .map(|g| {
                    let mut tuple = vec![table.identity(); m];
                    tuple[*i] = g;
                    tuple_to_point(n, &tuple)
                })
                .collect()
        }
        EmbeddingKind::Diagonal(auts) => {
            if auts.len() != m - 1 {
                return Err(Error::BadEmbedding(format!(
                    "diagonal embedding needs {} automorphisms, got {}",
                    m - 1,
                    auts.len()
                )));
            }
            for a in auts {
                Automorphism::new(a.perm().clone(), table)
                    .map_err(|_| Error::BadEmbedding("map is not an automorphism".into()))?;
            }
            (0..n)
                .map(|g| {
                    let mut tuple = vec![g];
                    tuple.extend(auts.iter().map(|a| a.apply(g)));
                    tuple_to_point(n, &tuple)
                })
                .collect()
        }
        EmbeddingKind::Matrix(entries) => {
            let Some((_, q, d)) = group.homocyclic() else {
                return Err(Error::BadEmbedding(
                    "matrix embeddings need a homocyclic group".into(),
                ));
            };
            let spec = group.spec().expect("homocyclic implies spec");
            if entries.len() != m * d * d {
                return Err(Error::BadEmbedding(format!(
                    "matrix embedding needs {} entries, got {}",
                    m * d * d,
                    entries.len()
                )));
            }
            (0..n)
                .map(|g| {
                    let digits: Vec<u64> =
                        spec.tuple_of(g).iter().map(|&x| x as u64).collect();
                    let mut tuple = Vec::with_capacity(m);
                    for block in 0..m {
                        let mut coord = vec![0usize; d];
                        for (row, slot) in coord.iter_mut().enumerate() {
                            let mut acc = 0u64;
                            for (col, &x) in digits.iter().enumerate() {
                                acc = (acc + entries[(block * d + row) * d + col] % q * x) % q;
                            }
                            *slot = acc as usize;
                        }
                        tuple.push(spec.index_of(&coord));
                    }
                    tuple_to_point(n, &tuple)
                })
                .collect()
        }
    };
    let mut seen = vec![false; checked_power(n, m, usize::MAX)?];
    for &p in &map {
        if seen[p] {
            return Err(Error::BadEmbedding("image is not injective".into()));
        }
        seen[p] = true;
    }
    Ok(Embedding { kind, map })
}

fn coset_partition_of_image(
    table: &GroupTable,
    m: usize,
    size: usize,
    image: &[usize],
) -> Result<Partition> {
    let n = table.order();
    let mut raw = vec![usize::MAX; size];
    let mut next = 0;
    for y in 0..size {
        if raw[y] != usize::MAX {
            continue;
        }
        let ty = point_to_tuple(n, m, y);
        for &h in image {
            let th = point_to_tuple(n, m, h);
            let prod: Vec<usize> = th
                .iter()
                .zip(&ty)
                .map(|(&a, &b)| table.mul(a, b))
                .collect();
            raw[tuple_to_point(n, &prod)] = next;
        }
        next += 1;
    }
    Partition::new(&raw)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub ok: bool,
    /// Lexicographically first failing m-subset of member indices.
    pub failing_subset: Option<Vec<usize>>,
}

/// Checks the defining property: every m-subset of the partitions is
/// Cartesian-minimal.
pub fn mods_verify(sys: &ModsSystem) -> VerifyReport {
    let members = sys.partitions.members();
    let subsets: Vec<Vec<usize>> = (0..members.len()).combinations(sys.m).collect();
    let failures: Vec<&Vec<usize>> = subsets
        .par_iter()
        .filter(|subset| !is_cartesian(subset.iter().map(|&i| &members[i])))
        .collect();
    VerifyReport {
        ok: failures.is_empty(),
        failing_subset: failures.first().map(|s| (*s).clone()),
    }
}

#[derive(Clone, Debug)]
pub struct SubsetAnalysis {
    /// The (m+1)-subset of member indices, sorted.
    pub subset: Vec<usize>,
    /// Its first m indices, used as the coordinate frame.
    pub frame: Vec<usize>,
    /// The remaining index, read as a diagonal over the frame.
    pub extra: usize,
    /// Normalized diagonal tuple (a_2, .., a_m) over the frame.
    pub tuple: Vec<Perm>,
    pub group: GroupName,
    /// Three fixed-point-free automorphisms of G whose composite is the
    /// identity.
    pub triple: [Perm; 3],
    /// Whether the triple came from this subset's tuple; otherwise a
    /// group-level witness was substituted.
    pub triple_from_tuple: bool,
}

/// Analysis of a regular system with m >= 3 and r >= 2: every
/// (m+1)-subset is decomposed as a coordinate frame plus one diagonal,
/// the group is confirmed abelian, and a fixed-point-free triple with
/// identity composite is produced and checked.  Returns an empty list
/// when the preconditions on m and r do not hold.
pub fn mods_regular_analyze(sys: &ModsSystem) -> Result<Vec<SubsetAnalysis>> {
    if sys.m < 3 || sys.r() < 2 {
        return Ok(Vec::new());
    }
    if !sys.table.is_abelian() {
        return Err(Error::InvalidGroup(
            "regular analysis requires an abelian group".into(),
        ));
    }
    let group_name = match &sys.group {
        ModsGroup::Spec(spec) => spec.name(),
        ModsGroup::Table(t) => identify_group(t)?,
    };
    let fallback: Option<[Perm; 3]> = match &sys.group {
        ModsGroup::Spec(spec) => fpf_triple_witness(spec).ok().map(|w| w.maps),
        ModsGroup::Table(t) => fpf_triple_bruteforce(t, ANALYZE_AUT_CAP)?
            .map(|auts| auts.map(|a| a.perm().clone())),
    };
    let k = sys.embeddings.len();
    let subsets: Vec<Vec<usize>> = (0..k).combinations(sys.m + 1).collect();
    subsets
        .par_iter()
        .map(|subset| analyze_subset(sys, subset, &group_name, fallback.as_ref()))
        .collect()
}

fn analyze_subset(
    sys: &ModsSystem,
    subset: &[usize],
    group_name: &GroupName,
    fallback: Option<&[Perm; 3]>,
) -> Result<SubsetAnalysis> {
    let m = sys.m;
    let n = sys.table.order();
    let frame: Vec<usize> = subset[..m].to_vec();
    let extra = subset[m];

    // direct-sum decomposition over the frame: every point must factor
    // uniquely as a product of one element from each frame image
    let mut decomp: Vec<Option<Vec<usize>>> = vec![None; sys.size];
    let mut coords = vec![0usize; m];
    loop {
        let mut point = sys.embeddings[frame[0]].map[coords[0]];
        for j in 1..m {
            point = sys.mul_points(point, sys.embeddings[frame[j]].map[coords[j]]);
        }
        if decomp[point].is_some() {
            return Err(Error::InternalWitnessFailure(format!(
                "frame {frame:?} does not decompose the point set"
            )));
        }
        decomp[point] = Some(coords.clone());
        let mut j = m;
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            coords[j] += 1;
            if coords[j] < n {
                break;
            }
            coords[j] = 0;
        }
        if coords.iter().all(|&c| c == 0) {
            break;
        }
    }

    // pull the extra subgroup back through the decomposition
    let mut components: Vec<Vec<usize>> = vec![vec![0; n]; m];
    for g in 0..n {
        let point = sys.embeddings[extra].map[g];
        let parts = decomp[point]
            .as_ref()
            .expect("decomposition covers all points");
        for j in 0..m {
            components[j][g] = parts[j];
        }
    }
    let phis: Vec<Perm> = components
        .into_iter()
        .enumerate()
        .map(|(j, images)| {
            Perm::new(images).map_err(|_| {
                Error::InternalWitnessFailure(format!(
                    "extra member {extra} is not in general position at frame slot {j}"
                ))
            })
        })
        .collect::<Result<_>>()?;
    for phi in &phis {
        for a in 0..n {
            for b in 0..n {
                if phi.apply(sys.table.mul(a, b))
                    != sys.table.mul(phi.apply(a), phi.apply(b))
                {
                    return Err(Error::InternalWitnessFailure(
                        "extracted component is not a homomorphism".into(),
                    ));
                }
            }
        }
    }
    let lead_inv = phis[0].inverse();
    let tuple: Vec<Perm> = phis[1..].iter().map(|phi| lead_inv.then(phi)).collect();

    // triple candidate from the first two tuple entries; fall back to a
    // group-level witness if a candidate map has extra fixed points
    let alpha = &tuple[0];
    let beta = &tuple[1];
    let mid = alpha.inverse().then(beta);
    let candidate = [alpha.clone(), mid, beta.inverse()];
    let fpf = |p: &Perm| p.fixed_points() == 1;
    let (triple, triple_from_tuple) = if candidate.iter().all(fpf) {
        (candidate, true)
    } else if let Some(w) = fallback {
        (w.clone(), false)
    } else {
        return Err(Error::NotFpf);
    };
    if !triple[0].then(&triple[1]).then(&triple[2]).is_identity()
        || !triple.iter().all(fpf)
    {
        return Err(Error::InternalWitnessFailure(
            "triple failed its own verification".into(),
        ));
    }
    Ok(SubsetAnalysis {
        subset: subset.to_vec(),
        frame,
        extra,
        tuple,
        group: group_name.clone(),
        triple,
        triple_from_tuple,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalArray {
    runs: usize,
    factors: usize,
    levels: usize,
    strength: usize,
    rows: Vec<usize>,
}

impl OrthogonalArray {
    pub fn new(
        levels: usize,
        strength: usize,
        factors: usize,
        rows: Vec<usize>,
    ) -> Result<OrthogonalArray> {
        if levels < 2 || strength < 1 || factors < strength {
            return Err(Error::input("bad orthogonal array shape"));
        }
        let runs = checked_power(levels, strength, usize::MAX)?;
        if rows.len() != runs * factors {
            return Err(Error::input(format!(
                "expected {} entries, got {}",
                runs * factors,
                rows.len()
            )));
        }
        if rows.iter().any(|&x| x >= levels) {
            return Err(Error::input("entry out of symbol range"));
        }
        Ok(OrthogonalArray {
            runs,
            factors,
            levels,
            strength,
            rows,
        })
    }

    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn strength(&self) -> usize {
        self.strength
    }

    pub fn entry(&self, run: usize, factor: usize) -> usize {
        self.rows[run * self.factors + factor]
    }

    pub fn row(&self, run: usize) -> &[usize] {
        &self.rows[run * self.factors..(run + 1) * self.factors]
    }
}

/// Strength check: every m-subset of columns carries every m-tuple
/// exactly once.
pub fn oa_verify(oa: &OrthogonalArray) -> bool {
    let combos: Vec<Vec<usize>> = (0..oa.factors).combinations(oa.strength).collect();
    combos.par_iter().all(|cols| {
        let mut counts = vec![0usize; oa.runs];
        for run in 0..oa.runs {
            let mut idx = 0;
            for &c in cols {
                idx = idx * oa.levels + oa.entry(run, c);
            }
            counts[idx] += 1;
        }
        counts.iter().all(|&c| c == 1)
    })
}

/// Lexicographically first strength violation: the column subset, the
/// symbol tuple, and how many times that tuple occurs.
pub fn oa_first_failure(oa: &OrthogonalArray) -> Option<(Vec<usize>, Vec<usize>, usize)> {
    for cols in (0..oa.factors()).combinations(oa.strength()) {
        let mut counts = vec![0usize; oa.runs()];
        for run in 0..oa.runs() {
            let mut idx = 0;
            for &c in &cols {
                idx = idx * oa.levels() + oa.entry(run, c);
            }
            counts[idx] += 1;
        }
        if let Some(bad) = counts.iter().position(|&c| c != 1) {
            let mut tuple = vec![0; oa.strength()];
            let mut idx = bad;
            for slot in tuple.iter_mut().rev() {
                *slot = idx % oa.levels();
                idx /= oa.levels();
            }
            return Some((cols, tuple, counts[bad]));
        }
    }
    None
}

/// The matrix of an embedding, rows indexed by the m*d digits of G^m and
/// columns by the d digits of G.
pub fn embedding_matrix(sys: &ModsSystem, index: usize) -> Result<Vec<u64>> {
    let Some((_, q, d)) = sys.group.homocyclic() else {
        return Err(Error::input(
            "matrix form needs a homocyclic group",
        ));
    };
    let spec = sys.group.spec().expect("homocyclic implies spec");
    let m = sys.m;
    let n = sys.table.order();
    let mut mat = vec![0u64; m * d * d];
    for col in 0..d {
        let mut unit = vec![0usize; d];
        unit[col] = 1;
        let image = sys.embeddings[index].map[spec.index_of(&unit)];
        let tuple = point_to_tuple(n, m, image);
        for (block, &coord) in tuple.iter().enumerate() {
            for (row, &digit) in spec.tuple_of(coord).iter().enumerate() {
                mat[(block * d + row) * d + col] = digit as u64;
            }
        }
    }
    // the reconstruction must reproduce the embedding on every element
    for g in 0..n {
        let digits: Vec<u64> = spec.tuple_of(g).iter().map(|&x| x as u64).collect();
        let mut tuple = Vec::with_capacity(m);
        for block in 0..m {
            let mut coord = vec![0usize; d];
            for (row, slot) in coord.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (c, &x) in digits.iter().enumerate() {
                    acc = (acc + mat[(block * d + row) * d + c] * x) % q;
                }
                *slot = acc as usize;
            }
            tuple.push(spec.index_of(&coord));
        }
        if tuple_to_point(n, &tuple) != sys.embeddings[index].map[g] {
            return Err(Error::BadEmbedding(
                "embedding is not linear over the digit basis".into(),
            ));
        }
    }
    Ok(mat)
}

/// Builds the dual orthogonal array of a homocyclic system: the row for
/// a point y of G^m has, in factor i, the element of G with digit vector
/// M_i^T y, where M_i is the i-th embedding matrix.
pub fn oa_from_mods(sys: &ModsSystem) -> Result<OrthogonalArray> {
    let Some((_, q, d)) = sys.group.homocyclic() else {
        return Err(Error::input(
            "orthogonal array duality needs a homocyclic group",
        ));
    };
    let spec = sys.group.spec().expect("homocyclic implies spec");
    let m = sys.m;
    let n = sys.table.order();
    let k = sys.embeddings.len();
    let mats: Vec<Vec<u64>> = (0..k)
        .map(|i| embedding_matrix(sys, i))
        .collect::<Result<_>>()?;
    let mut rows = vec![0usize; sys.size * k];
    for y in 0..sys.size {
        let tuple = point_to_tuple(n, m, y);
        let mut digits = Vec::with_capacity(m * d);
        for &coord in &tuple {
            digits.extend(spec.tuple_of(coord).iter().map(|&x| x as u64));
        }
        for (i, mat) in mats.iter().enumerate() {
            let mut coord = vec![0usize; d];
            for (a, slot) in coord.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (b, &x) in digits.iter().enumerate() {
                    acc = (acc + mat[b * d + a] * x) % q;
                }
                *slot = acc as usize;
            }
            rows[y * k + i] = spec.index_of(&coord);
        }
    }
    OrthogonalArray::new(n, m, k, rows)
}

/// Columns 1 and 2 of a strength-2 array become row and column
/// coordinates; each remaining column becomes one square.
pub fn mols_from_oa(oa: &OrthogonalArray) -> Result<MolsSet> {
    if oa.strength() != 2 {
        return Err(Error::input("square extraction needs strength 2"));
    }
    if oa.factors() < 3 {
        return Err(Error::input("need at least three factors"));
    }
    let n = oa.levels();
    let mut squares = Vec::new();
    for factor in 2..oa.factors() {
        let mut cells = vec![usize::MAX; n * n];
        for run in 0..oa.runs() {
            let idx = oa.entry(run, 0) * n + oa.entry(run, 1);
            if cells[idx] != usize::MAX {
                return Err(Error::input(
                    "first two columns do not index the cells bijectively",
                ));
            }
            cells[idx] = oa.entry(run, factor);
        }
        squares.push(LatinSquare::new(n, cells)?);
    }
    MolsSet::new(squares)
}

/// Rows are the cells in row-major order: coordinates then one symbol
/// per square.
pub fn oa_from_mols(ms: &MolsSet) -> Result<OrthogonalArray> {
    let n = ms.order();
    let k = ms.squares().len() + 2;
    let mut rows = Vec::with_capacity(n * n * k);
    for i in 0..n {
        for j in 0..n {
            rows.push(i);
            rows.push(j);
            for s in ms.squares() {
                rows.push(s.get(i, j));
            }
        }
    }
    OrthogonalArray::new(n, 2, k, rows)
}

/// Lower bounds established by a construction, with the static upper
/// bounds that apply at the same parameters.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub m: usize,
    pub n: usize,
    pub group_token: String,
    pub t_lower: usize,
    pub big_t_lower: usize,
}

impl BoundsReport {
    pub fn from_regular_system(m: usize, n: usize, group_token: String, r: usize) -> Result<BoundsReport> {
        if m == 2 && r > n - 1 {
            return Err(Error::InternalWitnessFailure(format!(
                "claimed bound {r} exceeds the known ceiling {}",
                n - 1
            )));
        }
        Ok(BoundsReport {
            m,
            n,
            group_token,
            t_lower: r,
            big_t_lower: r,
        })
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!(
                "T({},{}) >= {} [constructed]",
                self.m, self.group_token, self.big_t_lower
            ),
            format!("t({},{}) >= {} [constructed]", self.m, self.n, self.t_lower),
        ];
        if self.m == 2 {
            out.push(format!("t(2,{}) <= {} [known]", self.n, self.n - 1));
            if self.n % 4 == 2 {
                out.push(format!("t_g(2,{}) = 1 [known]", self.n));
            }
        }
        out
    }
}

/// Groupspec-style token for an abelian group, e.g. "Z5", "Z4^2",
/// "Z2xZ4".
pub fn group_token(spec: &AbelianSpec) -> String {
    let mut pieces: Vec<String> = Vec::new();
    let mut iter = spec.orders().iter().peekable();
    while let Some(&o) = iter.next() {
        let mut count = 1;
        while iter.peek() == Some(&&o) {
            iter.next();
            count += 1;
        }
        if count == 1 {
            pieces.push(format!("Z{o}"));
        } else {
            pieces.push(format!("Z{o}^{count}"));
        }
    }
    pieces.join("x")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::diagonal_semilattice;
    use crate::DEFAULT_POINT_CAP;

    fn coordinate_kinds(m: usize) -> Vec<EmbeddingKind> {
        (0..m).map(EmbeddingKind::Coordinate).collect()
    }

    fn spec(orders: &[usize]) -> AbelianSpec {
        AbelianSpec::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn coordinate_system_is_cartesian() {
        let sys = mods_build(
            ModsGroup::Spec(spec(&[3])),
            2,
            coordinate_kinds(2),
            DEFAULT_POINT_CAP,
        )
        .unwrap();
        let report = mods_verify(&sys);
        assert!(report.ok);
        assert_eq!(report.failing_subset, None);
    }

    #[test]
    fn duplicate_embedding_fails_with_first_subset() {
        let mut kinds = coordinate_kinds(2);
        kinds.push(EmbeddingKind::Coordinate(0));
        let sys = mods_build(ModsGroup::Spec(spec(&[3])), 2, kinds, DEFAULT_POINT_CAP).unwrap();
        let report = mods_verify(&sys);
        assert!(!report.ok);
        assert_eq!(report.failing_subset, Some(vec![0, 2]));
    }

    #[test]
    fn identity_diagonal_recovers_the_semilattice() {
        let g_spec = spec(&[5]);
        let table = build_table(&g_spec).unwrap();
        let mut kinds = coordinate_kinds(3);
        kinds.push(EmbeddingKind::Diagonal(vec![
            Automorphism::identity(&table),
            Automorphism::identity(&table),
        ]));
        let sys = mods_build(ModsGroup::Spec(g_spec), 3, kinds, DEFAULT_POINT_CAP).unwrap();
        let semi = diagonal_semilattice(&table, 3, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(sys.partitions().members(), semi.members());
        assert!(mods_verify(&sys).ok);
    }

    #[test]
    fn matrix_embedding_matches_diagonal_form() {
        let g_spec = spec(&[5]);
        let table = build_table(&g_spec).unwrap();
        let double = Automorphism::new(
            Perm::new((0..5).map(|x| 2 * x % 5).collect()).unwrap(),
            &table,
        )
        .unwrap();
        let kinds_a = vec![
            EmbeddingKind::Coordinate(0),
            EmbeddingKind::Coordinate(1),
            EmbeddingKind::Diagonal(vec![double]),
        ];
        let kinds_b = vec![
            EmbeddingKind::Coordinate(0),
            EmbeddingKind::Coordinate(1),
            EmbeddingKind::Matrix(vec![1, 2]),
        ];
        let a = mods_build(ModsGroup::Spec(g_spec.clone()), 2, kinds_a, DEFAULT_POINT_CAP).unwrap();
        let b = mods_build(ModsGroup::Spec(g_spec), 2, kinds_b, DEFAULT_POINT_CAP).unwrap();
        assert_eq!(a.partitions().members(), b.partitions().members());
    }

    #[test]
    fn bad_embeddings_are_rejected() {
        let g_spec = spec(&[5]);
        assert!(matches!(
            mods_build(
                ModsGroup::Spec(g_spec.clone()),
                2,
                vec![EmbeddingKind::Coordinate(0), EmbeddingKind::Coordinate(5)],
                DEFAULT_POINT_CAP
            ),
            Err(Error::BadEmbedding(_))
        ));
        // the zero matrix is not injective
        assert!(matches!(
            mods_build(
                ModsGroup::Spec(g_spec),
                2,
                vec![EmbeddingKind::Coordinate(0), EmbeddingKind::Matrix(vec![0, 0])],
                DEFAULT_POINT_CAP
            ),
            Err(Error::BadEmbedding(_))
        ));
    }

    #[test]
    fn verify_is_invariant_under_member_order() {
        let g_spec = spec(&[5]);
        let kinds = vec![
            EmbeddingKind::Matrix(vec![1, 1]),
            EmbeddingKind::Coordinate(1),
            EmbeddingKind::Coordinate(0),
            EmbeddingKind::Matrix(vec![1, 2]),
        ];
        let sys = mods_build(ModsGroup::Spec(g_spec), 2, kinds, DEFAULT_POINT_CAP).unwrap();
        assert!(mods_verify(&sys).ok);
    }

    #[test]
    fn full_factorial_oa_from_coordinates() {
        let sys = mods_build(
            ModsGroup::Spec(spec(&[2])),
            2,
            coordinate_kinds(2),
            DEFAULT_POINT_CAP,
        )
        .unwrap();
        let oa = oa_from_mods(&sys).unwrap();
        assert_eq!(
            (oa.runs(), oa.factors(), oa.levels(), oa.strength()),
            (4, 2, 2, 2)
        );
        assert!(oa_verify(&oa));
        assert_eq!(oa.row(0), &[0, 0]);
        assert_eq!(oa.row(3), &[1, 1]);
    }

    #[test]
    fn corrupt_entry_breaks_verification() {
        let rows = vec![0, 0, 0, 1, 1, 0, 1, 1];
        let good = OrthogonalArray::new(2, 2, 2, rows.clone()).unwrap();
        assert!(oa_verify(&good));
        assert_eq!(oa_first_failure(&good), None);
        let mut bad_rows = rows;
        bad_rows[3] = 0;
        let bad = OrthogonalArray::new(2, 2, 2, bad_rows).unwrap();
        assert!(!oa_verify(&bad));
        let (cols, tuple, count) = oa_first_failure(&bad).unwrap();
        assert_eq!(cols, vec![0, 1]);
        assert_eq!(tuple, vec![0, 0]);
        assert_eq!(count, 2);
    }

    #[test]
    fn mols_round_trip_through_oa() {
        let a = LatinSquare::new(5, (0..25).map(|c| (c / 5 + c % 5) % 5).collect()).unwrap();
        let b =
            LatinSquare::new(5, (0..25).map(|c| (c / 5 + 2 * (c % 5)) % 5).collect()).unwrap();
        let ms = MolsSet::new(vec![a, b]).unwrap();
        let oa = oa_from_mols(&ms).unwrap();
        assert!(oa_verify(&oa));
        let back = mols_from_oa(&oa).unwrap();
        assert_eq!(back.squares(), ms.squares());
    }

    #[test]
    fn oa_from_cyclic_cayley_table() {
        let l = LatinSquare::new(3, (0..9).map(|c| (c / 3 + c % 3) % 3).collect()).unwrap();
        let ms = MolsSet::new(vec![l.clone()]).unwrap();
        let oa = oa_from_mols(&ms).unwrap();
        let back = mols_from_oa(&oa).unwrap();
        assert_eq!(back.squares(), &[l]);
    }

    #[test]
    fn bounds_lines_render() {
        let b = BoundsReport::from_regular_system(3, 5, "Z5".into(), 3).unwrap();
        assert_eq!(
            b.lines(),
            vec![
                "T(3,Z5) >= 3 [constructed]".to_string(),
                "t(3,5) >= 3 [constructed]".to_string(),
            ]
        );
        let b2 = BoundsReport::from_regular_system(2, 6, "Z6".into(), 1).unwrap();
        assert!(b2.lines().contains(&"t(2,6) <= 5 [known]".to_string()));
        assert!(b2.lines().contains(&"t_g(2,6) = 1 [known]".to_string()));
    }

    #[test]
    fn group_token_examples() {
        assert_eq!(group_token(&spec(&[5])), "Z5");
        assert_eq!(group_token(&spec(&[4, 4])), "Z4^2");
        assert_eq!(group_token(&spec(&[2, 4])), "Z2xZ4");
    }

    #[test]
    fn analyzer_skips_small_r() {
        let table = build_table(&spec(&[5])).unwrap();
        let mut kinds = coordinate_kinds(3);
        kinds.push(EmbeddingKind::Diagonal(vec![
            Automorphism::identity(&table),
            Automorphism::identity(&table),
        ]));
        let sys = mods_build(ModsGroup::Spec(spec(&[5])), 3, kinds, DEFAULT_POINT_CAP).unwrap();
        assert!(mods_regular_analyze(&sys).unwrap().is_empty());
    }

    #[test]
    fn analyzer_reports_triples_for_a_multiplier_system() {
        // five embeddings over C5: coordinates plus two diagonals built
        // from multiplier maps
        let g_spec = spec(&[5]);
        let table = build_table(&g_spec).unwrap();
        let mult = |a: usize| {
            Automorphism::new(
                Perm::new((0..5).map(|x| a * x % 5).collect()).unwrap(),
                &table,
            )
            .unwrap()
        };
        let kinds = vec![
            EmbeddingKind::Coordinate(0),
            EmbeddingKind::Coordinate(1),
            EmbeddingKind::Coordinate(2),
            EmbeddingKind::Diagonal(vec![mult(1), mult(1)]),
            EmbeddingKind::Diagonal(vec![mult(2), mult(4)]),
        ];
        let sys = mods_build(ModsGroup::Spec(g_spec), 3, kinds, DEFAULT_POINT_CAP).unwrap();
        assert!(mods_verify(&sys).ok);
        let report = mods_regular_analyze(&sys).unwrap();
        assert_eq!(report.len(), 5); // C(5, 4)
        for entry in &report {
            assert_eq!(entry.group.as_str(), "C5");
            assert_eq!(entry.tuple.len(), 2);
            assert!(entry.triple[0]
                .then(&entry.triple[1])
                .then(&entry.triple[2])
                .is_identity());
            for t in &entry.triple {
                assert_eq!(t.fixed_points(), 1);
            }
        }
    }

    #[test]
    fn no_regular_system_over_c3() {
        // the group of order 3 admits no fixed-point-free triple, so no
        // choice of two diagonal multipliers can pass verification
        let g_spec = spec(&[3]);
        let table = build_table(&g_spec).unwrap();
        let mult = |a: usize| {
            Automorphism::new(
                Perm::new((0..3).map(|x| a * x % 3).collect()).unwrap(),
                &table,
            )
            .unwrap()
        };
        for a in 1..3 {
            for b in 1..3 {
                for c in 1..3 {
                    for d in 1..3 {
                        let kinds = vec![
                            EmbeddingKind::Coordinate(0),
                            EmbeddingKind::Coordinate(1),
                            EmbeddingKind::Coordinate(2),
                            EmbeddingKind::Diagonal(vec![mult(a), mult(b)]),
                            EmbeddingKind::Diagonal(vec![mult(c), mult(d)]),
                        ];
                        let sys =
                            mods_build(ModsGroup::Spec(g_spec.clone()), 3, kinds, DEFAULT_POINT_CAP)
                                .unwrap();
                        assert!(!mods_verify(&sys).ok, "a={a} b={b} c={c} d={d}");
                    }
                }
            }
        }
    }
}
