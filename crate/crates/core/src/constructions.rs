//! Explicit families of orthogonal squares and partition systems: squares
//! built from a Frobenius kernel and complement together with the
//! isotopisms that carry every derived square back onto the Cayley table,
//! normal rational curve arcs over fields and their Galois-ring lifts,
//! the conversion from arcs to partition systems, and a built-in pair of
//! order-8 squares whose derived groups are not all isomorphic.

use crate::algebra::{gr_build, gr_matrix_is_unimodular, GaloisField, GaloisRing};
use crate::designs::{
    group_token, mods_build, mods_verify, BoundsReport, EmbeddingKind, ModsGroup, ModsSystem,
};
use crate::groups::{is_fixed_point_free, AbelianSpec, Automorphism, GroupTable};
use crate::latin::{apply_isotopism, Isotopism, LatinSquare, MolsSet};
use crate::perm::Perm;
use crate::{Error, Result};
use itertools::Itertools;
use std::collections::BTreeSet;

/// Ceiling on closure size when generating a complement from a few maps.
const COMPLEMENT_CAP: usize = 4096;

/// An abelian kernel together with a group of automorphisms acting on it
/// so that the quotient of any two distinct members fixes only the
/// identity.
#[derive(Clone, Debug)]
pub struct FrobeniusData {
    kernel: GroupTable,
    complement: Vec<Automorphism>,
}

impl FrobeniusData {
    pub fn new(kernel: GroupTable, complement: Vec<Automorphism>) -> Result<FrobeniusData> {
        if !kernel.is_abelian() {
            return Err(Error::InvalidGroup("kernel must be abelian".into()));
        }
        let complement: Vec<Automorphism> = complement
            .iter()
            .map(|a| Automorphism::new(a.perm().clone(), &kernel))
            .collect::<Result<_>>()?;
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        for a in &complement {
            if !seen.insert(a.perm().clone()) {
                return Err(Error::InvalidGroup("complement has a duplicate map".into()));
            }
        }
        if !complement.iter().any(|a| a.perm().is_identity()) {
            return Err(Error::InvalidGroup(
                "complement must contain the identity map".into(),
            ));
        }
        for a in &complement {
            if !seen.contains(a.inverse().perm()) {
                return Err(Error::InvalidGroup(
                    "complement is not closed under inverse".into(),
                ));
            }
            for b in &complement {
                if !seen.contains(a.then(b).perm()) {
                    return Err(Error::InvalidGroup(
                        "complement is not closed under composition".into(),
                    ));
                }
            }
        }
        for (i, h) in complement.iter().enumerate() {
            for (j, k) in complement.iter().enumerate() {
                if i != j && !is_fixed_point_free(&k.inverse().then(h), &kernel) {
                    return Err(Error::NotFpf);
                }
            }
        }
        Ok(FrobeniusData { kernel, complement })
    }

    pub fn kernel(&self) -> &GroupTable {
        &self.kernel
    }

    pub fn complement(&self) -> &[Automorphism] {
        &self.complement
    }
}

/// The map g -> g^a, valid as an automorphism of an abelian group when a
/// is coprime to the exponent.
pub fn power_automorphism(g: &GroupTable, a: usize) -> Result<Automorphism> {
    let images: Vec<usize> = (0..g.order()).map(|x| g.pow(x, a)).collect();
    let perm = Perm::new(images)
        .map_err(|_| Error::input(format!("the power map {a} is not invertible here")))?;
    Automorphism::new(perm, g)
}

/// Closure of the given maps under composition, starting from the
/// identity, in breadth-first order.
pub fn generated_complement(
    g: &GroupTable,
    gens: &[Automorphism],
) -> Result<Vec<Automorphism>> {
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    let mut out = vec![Automorphism::identity(g)];
    seen.insert(out[0].perm().clone());
    let mut cursor = 0;
    while cursor < out.len() {
        let current = out[cursor].clone();
        cursor += 1;
        for gen in gens {
            let next = current.then(gen);
            if seen.insert(next.perm().clone()) {
                if out.len() >= COMPLEMENT_CAP {
                    return Err(Error::CapExceeded {
                        what: "complement closure",
                        needed: out.len() + 1,
                        limit: COMPLEMENT_CAP,
                    });
                }
                out.push(next);
            }
        }
    }
    Ok(out)
}

/// The Cayley table of a group as a Latin square.
pub fn cayley_table(g: &GroupTable) -> LatinSquare {
    let n = g.order();
    let cells = (0..n * n).map(|c| g.mul(c / n, c % n)).collect();
    LatinSquare::new(n, cells).expect("a group table is a Latin square")
}

/// One square per complement member: cell (x, y) of the square for h
/// holds x * h(y).  The output squares are pairwise orthogonal.
pub fn frobenius_mogs(fd: &FrobeniusData) -> Result<MolsSet> {
    let n = fd.kernel.order();
    let squares = fd
        .complement
        .iter()
        .map(|h| {
            let cells = (0..n * n)
                .map(|c| fd.kernel.mul(c / n, h.apply(c % n)))
                .collect();
            LatinSquare::new(n, cells)
        })
        .collect::<Result<_>>()?;
    MolsSet::new(squares)
}

/// The map x -> x^{-1} h(x).  It is injective exactly when the quotient
/// of h by the identity fixes only the identity element.
pub fn zeta(g: &GroupTable, h: &Automorphism) -> Result<Perm> {
    let images = (0..g.order())
        .map(|x| g.mul(g.inv(x), h.apply(x)))
        .collect();
    Perm::new(images).map_err(|_| Error::NotFpf)
}

/// Inverse of `zeta`.
pub fn eta(g: &GroupTable, h: &Automorphism) -> Result<Perm> {
    Ok(zeta(g, h)?.inverse())
}

fn complement_member(fd: &FrobeniusData, index: usize) -> Result<&Automorphism> {
    fd.complement
        .get(index)
        .ok_or_else(|| Error::input(format!("no complement member {index}")))
}

/// The derived square whose rows are the original rows and whose columns
/// are relabeled by the plain product z = x * y; the letter at (x, z) is
/// the entry of the square for h, namely x * h(x^{-1} z).
pub fn derived_square_rows(fd: &FrobeniusData, h: usize) -> Result<LatinSquare> {
    let h = complement_member(fd, h)?;
    if h.perm().is_identity() {
        return Err(Error::NotFpf);
    }
    let g = &fd.kernel;
    let n = g.order();
    let cells = (0..n * n)
        .map(|c| {
            let (x, z) = (c / n, c % n);
            g.mul(x, h.apply(g.mul(g.inv(x), z)))
        })
        .collect();
    LatinSquare::new(n, cells)
}

/// The derived square built from three letter partitions: rows carry
/// u = x * y, columns carry v = x * h(y), and the letter is w = x * k(y).
pub fn derived_square_letters(fd: &FrobeniusData, h: usize, k: usize) -> Result<LatinSquare> {
    if h == k {
        return Err(Error::NotFpf);
    }
    let h = complement_member(fd, h)?;
    let k = complement_member(fd, k)?;
    if h.perm().is_identity() || k.perm().is_identity() {
        return Err(Error::NotFpf);
    }
    let g = &fd.kernel;
    let n = g.order();
    let mut cells = vec![usize::MAX; n * n];
    for x in 0..n {
        for y in 0..n {
            let u = g.mul(x, y);
            let v = g.mul(x, h.apply(y));
            if cells[u * n + v] != usize::MAX {
                return Err(Error::InternalWitnessFailure(
                    "u and v do not separate the cells".into(),
                ));
            }
            cells[u * n + v] = g.mul(x, k.apply(y));
        }
    }
    LatinSquare::new(n, cells)
}

fn checked_witness(
    square: &LatinSquare,
    g: &GroupTable,
    rho: Vec<usize>,
    sigma: Vec<usize>,
) -> Result<Isotopism> {
    let n = g.order();
    let build = |images: Vec<usize>| {
        Perm::new(images)
            .map_err(|_| Error::InternalWitnessFailure("witness map is not a bijection".into()))
    };
    let iso = Isotopism::new(build(rho)?, build(sigma)?, Perm::identity(n))?;
    if apply_isotopism(square, &iso)? != cayley_table(g) {
        return Err(Error::InternalWitnessFailure(
            "witness does not reach the Cayley table".into(),
        ));
    }
    Ok(iso)
}

/// Explicit isotopism carrying `derived_square_rows(fd, h)` onto the
/// Cayley table of the kernel: rows through x -> zeta(h)(x^{-1}),
/// columns through h itself, letters untouched.
pub fn isotopism_witness_rows(fd: &FrobeniusData, h: usize) -> Result<Isotopism> {
    let square = derived_square_rows(fd, h)?;
    let h = complement_member(fd, h)?;
    let g = &fd.kernel;
    let z = zeta(g, h)?;
    let rho = (0..g.order()).map(|x| z.apply(g.inv(x))).collect();
    let sigma = h.perm().images().to_vec();
    checked_witness(&square, g, rho, sigma)
}

/// Explicit isotopism carrying `derived_square_letters(fd, h, k)` onto
/// the Cayley table: rows through u -> eta(h^{-1})(u^{-1}) *
/// k(eta(h)(u^{-1})), columns through v -> eta(h^{-1})(h^{-1}(v)) *
/// k(eta(h)(v)), letters untouched.
pub fn isotopism_witness_letters(fd: &FrobeniusData, h: usize, k: usize) -> Result<Isotopism> {
    let square = derived_square_letters(fd, h, k)?;
    let h = complement_member(fd, h)?;
    let k = complement_member(fd, k)?;
    let g = &fd.kernel;
    let h_inv = h.inverse();
    let eta_h = eta(g, h)?;
    let eta_h_inv = eta(g, &h_inv)?;
    let rho = (0..g.order())
        .map(|u| {
            let ui = g.inv(u);
            g.mul(eta_h_inv.apply(ui), k.apply(eta_h.apply(ui)))
        })
        .collect();
    let sigma = (0..g.order())
        .map(|v| {
            g.mul(
                eta_h_inv.apply(h_inv.apply(v)),
                k.apply(eta_h.apply(v)),
            )
        })
        .collect();
    checked_witness(&square, g, rho, sigma)
}

/// Vectors over a Galois ring, any m of which span: the matrix they form
/// is invertible over the ring.
#[derive(Clone, Debug)]
pub struct Arc {
    ring: GaloisRing,
    m: usize,
    vectors: Vec<Vec<u64>>,
}

impl Arc {
    pub fn new(ring: GaloisRing, m: usize, vectors: Vec<Vec<u64>>) -> Result<Arc> {
        if m < 2 {
            return Err(Error::input("arc dimension must be at least 2"));
        }
        if vectors.len() < m {
            return Err(Error::input("an arc needs at least m vectors"));
        }
        for v in &vectors {
            if v.len() != m {
                return Err(Error::input("every arc vector must have length m"));
            }
            if v.iter().any(|&x| x >= ring.order()) {
                return Err(Error::input("arc entry out of ring range"));
            }
        }
        for subset in (0..vectors.len()).combinations(m) {
            let rows: Vec<Vec<u64>> = subset.iter().map(|&i| vectors[i].clone()).collect();
            if !gr_matrix_is_unimodular(&ring, &rows) {
                return Err(Error::input(format!(
                    "arc vectors {subset:?} do not span"
                )));
            }
        }
        Ok(Arc { ring, m, vectors })
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }
}

/// The normal rational curve: one moment vector (1, a, a^2, ..) per
/// field element, closed off with the last unit vector, giving q+1
/// vectors in total.
pub fn nrc_arc(field: &GaloisField, m: usize) -> Result<Arc> {
    let q = field.order();
    if m < 2 || m as u64 > q + 1 {
        return Err(Error::input(format!(
            "dimension must lie between 2 and {}",
            q + 1
        )));
    }
    let ring = gr_build(field.characteristic(), 1, field.degree())?;
    let mut vectors: Vec<Vec<u64>> = (0..q)
        .map(|a| (0..m).map(|i| ring.pow(a, i as u64)).collect())
        .collect();
    let mut unit = vec![0u64; m];
    unit[m - 1] = 1;
    vectors.push(unit);
    Arc::new(ring, m, vectors)
}

/// Moment vectors of the Teichmuller set over a Galois ring, plus the
/// last unit vector; coordinatewise reduction recovers the curve over
/// the residue field.
pub fn lifted_arc(ring: &GaloisRing, m: usize) -> Result<Arc> {
    let q = ring.residue_order();
    if m < 2 || m as u64 > q + 1 {
        return Err(Error::input(format!(
            "dimension must lie between 2 and {}",
            q + 1
        )));
    }
    let mut vectors: Vec<Vec<u64>> = ring
        .teichmuller()
        .iter()
        .map(|&u| (0..m).map(|i| ring.pow(u, i as u64)).collect())
        .collect();
    let mut unit = vec![0u64; m];
    unit[m - 1] = 1;
    vectors.push(unit);
    let arc = Arc::new(ring.clone(), m, vectors)?;
    let residue = nrc_arc(ring.residue_field(), m)?;
    for (lifted, base) in arc.vectors.iter().zip(residue.vectors()) {
        for (&l, &b) in lifted.iter().zip(base) {
            if ring.reduce_mod_p(l) != b {
                return Err(Error::InternalWitnessFailure(
                    "lift does not reduce to the residue curve".into(),
                ));
            }
        }
    }
    Ok(arc)
}

/// Each arc vector v becomes the embedding g -> (v_1 g, .., v_m g) of
/// the additive group of the ring into its m-th power; the resulting
/// system is verified and yields the lower bound r = k - m.
pub fn arc_to_mods(arc: &Arc, point_cap: usize) -> Result<(ModsSystem, BoundsReport)> {
    let ring = arc.ring();
    let d = ring.degree();
    let spec = AbelianSpec::new(vec![ring.coeff_modulus() as usize; d])?;
    let m = arc.m();
    // mul_matrix lists coefficients lowest power first; embedding
    // matrices expect the most significant digit first on both axes
    let kinds = arc
        .vectors()
        .iter()
        .map(|v| {
            let mut entries = vec![0u64; m * d * d];
            for (block, &coord) in v.iter().enumerate() {
                let low = ring.mul_matrix(coord);
                for r in 0..d {
                    for c in 0..d {
                        entries[(block * d + r) * d + c] = low[(d - 1 - r) * d + (d - 1 - c)];
                    }
                }
            }
            EmbeddingKind::Matrix(entries)
        })
        .collect();
    let sys = mods_build(ModsGroup::Spec(spec.clone()), m, kinds, point_cap)?;
    let report = mods_verify(&sys);
    if !report.ok {
        return Err(Error::InternalWitnessFailure(format!(
            "arc system failed verification at subset {:?}",
            report.failing_subset
        )));
    }
    let bounds = BoundsReport::from_regular_system(
        m,
        ring.order() as usize,
        group_token(&spec),
        arc.len() - m,
    )?;
    Ok((sys, bounds))
}

/// A pair of orthogonal order-8 squares, both Cayley tables, whose four
/// derived groups are not all isomorphic.  Cell digits are stored 1-based
/// and shifted down on load.
pub fn example_8x8() -> (LatinSquare, LatinSquare) {
    const CELLS: [[u8; 8]; 8] = [
        [11, 22, 33, 44, 55, 66, 77, 88],
        [42, 34, 21, 13, 86, 78, 65, 57],
        [53, 61, 74, 82, 17, 25, 38, 46],
        [84, 73, 62, 51, 48, 37, 26, 15],
        [35, 47, 16, 28, 71, 83, 52, 64],
        [76, 85, 58, 67, 32, 41, 14, 23],
        [27, 18, 45, 36, 63, 54, 81, 72],
        [68, 56, 87, 75, 24, 12, 43, 31],
    ];
    let mut first = Vec::with_capacity(64);
    let mut second = Vec::with_capacity(64);
    for row in &CELLS {
        for &cell in row {
            first.push((cell / 10 - 1) as usize);
            second.push((cell % 10 - 1) as usize);
        }
    }
    (
        LatinSquare::new(8, first).expect("built-in square is Latin"),
        LatinSquare::new(8, second).expect("built-in square is Latin"),
    )
}
