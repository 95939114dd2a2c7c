//! Plain-text formats for squares, partitions, orthogonal arrays, and
//! embedding descriptors, plus parsers for the group, field, and ring
//! tokens the command line uses.
//!
//! Square files accept 1-based symbols and shift them down; everything
//! is written back 0-based.

use crate::algebra::{gf_build, gr_build, GaloisField, GaloisRing};
use crate::designs::{
    group_token, mods_build, EmbeddingKind, ModsGroup, ModsSystem, OrthogonalArray,
};
use crate::groups::{
    build_table, dihedral_table, identify_group, prime_power_base, primary_decomposition,
    AbelianSpec, Automorphism, GroupTable,
};
use crate::latin::{LatinSquare, MolsSet};
use crate::partitions::{Partition, PartitionSet};
use crate::perm::Perm;
use crate::{Error, Result};
use std::fmt::Write as _;

/// A group named on the command line: either an abelian product of
/// cyclic prime-power factors or a dihedral group.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Abelian(AbelianSpec),
    /// Polygon size; the group order is twice this.
    Dihedral(usize),
}

impl GroupSpec {
    pub fn table(&self) -> Result<GroupTable> {
        match self {
            GroupSpec::Abelian(s) => build_table(s),
            GroupSpec::Dihedral(k) => dihedral_table(*k),
        }
    }

    pub fn abelian(&self) -> Option<&AbelianSpec> {
        match self {
            GroupSpec::Abelian(s) => Some(s),
            GroupSpec::Dihedral(_) => None,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Abelian(s) => s.order(),
            GroupSpec::Dihedral(k) => 2 * k,
        }
    }

    pub fn token(&self) -> String {
        match self {
            GroupSpec::Abelian(s) => group_token(s),
            GroupSpec::Dihedral(k) => format!("D{}", 2 * k),
        }
    }

    pub fn mods_group(&self) -> Result<ModsGroup> {
        Ok(match self {
            GroupSpec::Abelian(s) => ModsGroup::Spec(s.clone()),
            GroupSpec::Dihedral(k) => ModsGroup::Table(dihedral_table(*k)?),
        })
    }
}

/// Prime-power factors of k in increasing order, so 12 becomes [3, 4].
fn prime_power_factors(mut k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            let mut q = 1;
            while k % p == 0 {
                q *= p;
                k /= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out.sort_unstable();
    out
}

/// Grammar: terms `Z<k>` or `Z<k>^<d>` joined by `x`, or the literal
/// `D<order>`.  Composite k splits into its prime-power factors.
pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('D') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            let order: usize = rest
                .parse()
                .map_err(|_| Error::parse(format!("bad dihedral order in {s:?}")))?;
            if order < 6 || order % 2 != 0 {
                return Err(Error::parse(format!(
                    "dihedral spec needs an even order of at least 6, got {s:?}"
                )));
            }
            return Ok(GroupSpec::Dihedral(order / 2));
        }
    }
    let mut orders = Vec::new();
    for term in s.split('x') {
        let term = term.trim();
        let body = term.strip_prefix('Z').ok_or_else(|| {
            Error::parse(format!("bad group term {term:?}; expected Z<k> or Z<k>^<d>"))
        })?;
        let (k_str, d) = match body.split_once('^') {
            Some((k, d)) => (
                k,
                d.parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad exponent in {term:?}")))?,
            ),
            None => (body, 1),
        };
        let k: usize = k_str
            .parse()
            .map_err(|_| Error::parse(format!("bad cyclic order in {term:?}")))?;
        if k < 2 || d < 1 {
            return Err(Error::parse(format!("bad group term {term:?}")));
        }
        let factors = prime_power_factors(k);
        for _ in 0..d {
            orders.extend(factors.iter().copied());
        }
    }
    if orders.is_empty() {
        return Err(Error::parse("empty group spec"));
    }
    Ok(GroupSpec::Abelian(AbelianSpec::new(orders)?))
}

/// Field spec `gf:<q>` with q a prime power, e.g. `gf:9`.
pub fn parse_field_spec(s: &str) -> Result<GaloisField> {
    let body = s
        .trim()
        .strip_prefix("gf:")
        .ok_or_else(|| Error::parse(format!("field spec must look like gf:<q>, got {s:?}")))?;
    let q: usize = body
        .parse()
        .map_err(|_| Error::parse(format!("bad field order {body:?}")))?;
    let p = prime_power_base(q)
        .ok_or_else(|| Error::parse(format!("field order {q} is not a prime power")))?;
    let mut d = 0;
    let mut t = q;
    while t > 1 {
        t /= p;
        d += 1;
    }
    gf_build(p as u64, d)
}

/// Ring spec `gr:<p>^<e>:<d>`, e.g. `gr:2^2:2`.
pub fn parse_ring_spec(s: &str) -> Result<GaloisRing> {
    let bad = || Error::parse(format!("ring spec must look like gr:<p>^<e>:<d>, got {s:?}"));
    let body = s.trim().strip_prefix("gr:").ok_or_else(bad)?;
    let (pe, d) = body.split_once(':').ok_or_else(bad)?;
    let (p, e) = pe.split_once('^').ok_or_else(bad)?;
    gr_build(
        p.parse().map_err(|_| bad())?,
        e.parse().map_err(|_| bad())?,
        d.parse().map_err(|_| bad())?,
    )
}

struct Tokens<'a> {
    iter: std::str::SplitWhitespace<'a>,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Tokens {
            iter: text.split_whitespace(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.iter
            .next()
            .ok_or_else(|| Error::parse(format!("missing {what}")))
    }

    fn usize(&mut self, what: &str) -> Result<usize> {
        let tok = self.next(what)?;
        tok.parse()
            .map_err(|_| Error::parse(format!("bad {what}: {tok:?}")))
    }

    fn expect(&mut self, keyword: &str) -> Result<()> {
        let tok = self.next(keyword)?;
        if tok != keyword {
            return Err(Error::parse(format!(
                "expected header {keyword:?}, found {tok:?}"
            )));
        }
        Ok(())
    }

    fn done(&mut self) -> Result<()> {
        match self.iter.next() {
            Some(tok) => Err(Error::parse(format!("unexpected trailing token {tok:?}"))),
            None => Ok(()),
        }
    }
}

/// Accepts symbols 0..n-1 as-is, or 1..n shifted down by one.
fn normalize_symbols(n: usize, mut values: Vec<usize>) -> Result<Vec<usize>> {
    if values.iter().all(|&v| v < n) {
        return Ok(values);
    }
    if values.iter().all(|&v| (1..=n).contains(&v)) {
        for v in &mut values {
            *v -= 1;
        }
        return Ok(values);
    }
    Err(Error::parse(format!(
        "symbols must lie in 0..{} or 1..={}",
        n - 1,
        n
    )))
}

pub fn read_latin(text: &str) -> Result<LatinSquare> {
    let mut t = Tokens::new(text);
    t.expect("latin")?;
    let n = t.usize("order")?;
    let mut cells = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        cells.push(t.usize("cell")?);
    }
    t.done()?;
    LatinSquare::new(n, normalize_symbols(n, cells)?)
}

pub fn write_latin(l: &LatinSquare) -> String {
    let n = l.order();
    let mut out = format!("latin {n}\n");
    for row in l.to_rows() {
        writeln!(out, "{}", join(&row)).unwrap();
    }
    out
}

pub fn read_latin_pair(text: &str) -> Result<(LatinSquare, LatinSquare)> {
    let mut t = Tokens::new(text);
    t.expect("latin2")?;
    let n = t.usize("order")?;
    let mut first = Vec::with_capacity(n * n);
    let mut second = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let tok = t.next("cell pair")?;
        let (a, b) = tok
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("cell {tok:?} is not an a:b pair")))?;
        first.push(
            a.parse()
                .map_err(|_| Error::parse(format!("bad cell {tok:?}")))?,
        );
        second.push(
            b.parse()
                .map_err(|_| Error::parse(format!("bad cell {tok:?}")))?,
        );
    }
    t.done()?;
    Ok((
        LatinSquare::new(n, normalize_symbols(n, first)?)?,
        LatinSquare::new(n, normalize_symbols(n, second)?)?,
    ))
}

pub fn write_latin_pair(a: &LatinSquare, b: &LatinSquare) -> String {
    let n = a.order();
    let mut out = format!("latin2 {n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| format!("{}:{}", a.get(i, j), b.get(i, j)))
            .collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn read_partition(text: &str) -> Result<Partition> {
    let mut t = Tokens::new(text);
    t.expect("partition")?;
    let size = t.usize("size")?;
    let parts = t.usize("part count")?;
    let mut labels = Vec::with_capacity(size);
    for _ in 0..size {
        labels.push(t.usize("label")?);
    }
    t.done()?;
    let p = Partition::new(&labels)?;
    if p.part_count() != parts {
        return Err(Error::parse(format!(
            "header declares {parts} parts but the labels form {}",
            p.part_count()
        )));
    }
    Ok(p)
}

pub fn write_partition(p: &Partition) -> String {
    format!(
        "partition {} {}\n{}\n",
        p.size(),
        p.part_count(),
        join(p.labels())
    )
}

pub fn read_partition_set(text: &str) -> Result<PartitionSet> {
    let mut t = Tokens::new(text);
    t.expect("partitions")?;
    let size = t.usize("size")?;
    let count = t.usize("member count")?;
    let mut members = Vec::with_capacity(count);
    for _ in 0..count {
        let mut labels = Vec::with_capacity(size);
        for _ in 0..size {
            labels.push(t.usize("label")?);
        }
        members.push(Partition::new(&labels)?);
    }
    t.done()?;
    PartitionSet::new(members)
}

pub fn write_partition_set(ps: &PartitionSet) -> String {
    let members = ps.members();
    let size = members.first().map_or(0, |p| p.size());
    let mut out = format!("partitions {} {}\n", size, members.len());
    for p in members {
        writeln!(out, "{}", join(p.labels())).unwrap();
    }
    out
}

pub fn read_oa(text: &str) -> Result<OrthogonalArray> {
    let mut t = Tokens::new(text);
    t.expect("oa")?;
    let runs = t.usize("run count")?;
    let k = t.usize("factor count")?;
    let n = t.usize("level count")?;
    let m = t.usize("strength")?;
    let mut rows = Vec::with_capacity(runs * k);
    for _ in 0..runs * k {
        rows.push(t.usize("entry")?);
    }
    t.done()?;
    let oa = OrthogonalArray::new(n, m, k, rows)?;
    if oa.runs() != runs {
        return Err(Error::parse(format!(
            "header declares {runs} runs but n^m = {}",
            oa.runs()
        )));
    }
    Ok(oa)
}

pub fn write_oa(oa: &OrthogonalArray) -> String {
    let mut out = format!(
        "oa {} {} {} {}\n",
        oa.runs(),
        oa.factors(),
        oa.levels(),
        oa.strength()
    );
    for run in 0..oa.runs() {
        writeln!(out, "{}", join(oa.row(run))).unwrap();
    }
    out
}

/// Reads any square file: `latin` (one square), `latin2` (a pair), or
/// `mols <n> <count>` (stacked squares).  Orthogonality is not checked.
pub fn read_squares(text: &str) -> Result<Vec<LatinSquare>> {
    let header = Tokens::new(text).next("header")?;
    match header {
        "latin" => Ok(vec![read_latin(text)?]),
        "latin2" => {
            let (a, b) = read_latin_pair(text)?;
            Ok(vec![a, b])
        }
        "mols" => {
            let mut t = Tokens::new(text);
            t.expect("mols")?;
            let n = t.usize("order")?;
            let count = t.usize("square count")?;
            let mut squares = Vec::with_capacity(count);
            for _ in 0..count {
                let mut cells = Vec::with_capacity(n * n);
                for _ in 0..n * n {
                    cells.push(t.usize("cell")?);
                }
                squares.push(LatinSquare::new(n, normalize_symbols(n, cells)?)?);
            }
            t.done()?;
            Ok(squares)
        }
        other => Err(Error::parse(format!(
            "expected a latin, latin2, or mols file, found header {other:?}"
        ))),
    }
}

pub fn read_mols(text: &str) -> Result<MolsSet> {
    MolsSet::new(read_squares(text)?)
}

pub fn write_mols(ms: &MolsSet) -> String {
    let n = ms.order();
    let mut out = format!("mols {} {}\n", n, ms.squares().len());
    for s in ms.squares() {
        out.push('\n');
        for row in s.to_rows() {
            writeln!(out, "{}", join(&row)).unwrap();
        }
    }
    out
}

/// Descriptor format: header `mods <groupspec> <m> <count>` and one line
/// per embedding, `coord <i>`, `diag <perm..>` ((m-1)*n images), or
/// `mat <entries..>` (m*d*d entries).
pub fn read_mods(text: &str, point_cap: usize) -> Result<ModsSystem> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::parse("empty file"))?;
    let mut t = Tokens::new(header);
    t.expect("mods")?;
    let group = parse_group_spec(t.next("group spec")?)?;
    let m = t.usize("dimension")?;
    let count = t.usize("embedding count")?;
    t.done()?;
    let table = group.table()?;
    let n = table.order();
    let mut kinds = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines
            .next()
            .ok_or_else(|| Error::parse("missing embedding line"))?;
        let mut t = Tokens::new(line);
        let kind = match t.next("embedding tag")? {
            "coord" => {
                let i = t.usize("coordinate")?;
                EmbeddingKind::Coordinate(i)
            }
            "diag" => {
                if m < 1 {
                    return Err(Error::parse("diag embedding needs m >= 1"));
                }
                let mut auts = Vec::with_capacity(m - 1);
                for _ in 0..m - 1 {
                    let mut images = Vec::with_capacity(n);
                    for _ in 0..n {
                        images.push(t.usize("image")?);
                    }
                    let perm = Perm::new(images)?;
                    auts.push(Automorphism::new(perm, &table).map_err(|_| {
                        Error::BadEmbedding("diag map is not an automorphism".into())
                    })?);
                }
                EmbeddingKind::Diagonal(auts)
            }
            "mat" => {
                let spec = group.abelian().ok_or_else(|| {
                    Error::parse("mat embeddings need an abelian group spec")
                })?;
                let d = spec.orders().len();
                let mut entries = Vec::with_capacity(m * d * d);
                for _ in 0..m * d * d {
                    entries.push(t.usize("entry")? as u64);
                }
                EmbeddingKind::Matrix(entries)
            }
            other => {
                return Err(Error::parse(format!(
                    "unknown embedding tag {other:?}"
                )))
            }
        };
        t.done()?;
        kinds.push(kind);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::parse(format!(
            "unexpected trailing line {:?}",
            extra.trim()
        )));
    }
    mods_build(group.mods_group()?, m, kinds, point_cap)
}

fn serializable_token(sys: &ModsSystem) -> Result<String> {
    match sys.group() {
        ModsGroup::Spec(spec) => Ok(group_token(spec)),
        ModsGroup::Table(t) => {
            if let Some(primary) = primary_decomposition(t) {
                return Ok(group_token(&AbelianSpec::new(primary)?));
            }
            let name = identify_group(t)?;
            let token = name.as_str().to_string();
            match parse_group_spec(&token) {
                Ok(GroupSpec::Dihedral(_)) => Ok(token),
                _ => Err(Error::input(format!(
                    "no spec string serializes the group {token}"
                ))),
            }
        }
    }
}

pub fn write_mods(sys: &ModsSystem) -> Result<String> {
    let token = serializable_token(sys)?;
    let mut out = format!(
        "mods {} {} {}\n",
        token,
        sys.m(),
        sys.embeddings().len()
    );
    for e in sys.embeddings() {
        match e.kind() {
            EmbeddingKind::Coordinate(i) => writeln!(out, "coord {i}").unwrap(),
            EmbeddingKind::Diagonal(auts) => {
                let images: Vec<usize> = auts
                    .iter()
                    .flat_map(|a| a.perm().images().iter().copied())
                    .collect();
                writeln!(out, "diag {}", join(&images)).unwrap();
            }
            EmbeddingKind::Matrix(entries) => {
                let entries: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
                writeln!(out, "mat {}", entries.join(" ")).unwrap();
            }
        }
    }
    Ok(out)
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
