//! Command line front end: builds the library's square and partition
//! systems, verifies properties of text fixtures, names the groups behind
//! squares, and converts between the square, array, and descriptor
//! formats.
//!
//! Exit codes: 0 when an action succeeds or a verification holds, 1 when
//! a verification fails (the witness is printed), 2 for usage or input
//! errors.

use clap::{Parser, Subcommand};
use mods_core::constructions::{
    arc_to_mods, example_8x8, frobenius_mogs, generated_complement, lifted_arc, nrc_arc,
    power_automorphism, Arc, FrobeniusData,
};
use mods_core::designs::{
    mods_build, mods_verify, mols_from_oa, oa_first_failure, oa_from_mods, oa_from_mols,
    oa_verify, BoundsReport, EmbeddingKind, ModsSystem,
};
use mods_core::groups::{fpf_triple_bruteforce, fpf_triple_witness, fpf_violation, identify_group, Automorphism};
use mods_core::io::{
    parse_field_spec, parse_group_spec, parse_ring_spec, read_mods, read_oa, read_partition_set,
    read_squares, write_latin_pair, write_mods, write_mols, write_oa, GroupSpec,
};
use mods_core::latin::{group_profile, is_group_isotopic, LatinSquare, MolsSet};
use mods_core::partitions::{is_cartesian, PartitionSet};
use mods_core::{Error, Result};
use std::io::Read as _;
use std::path::{Path, PathBuf};

/// Automorphism enumeration budget for brute-force classification.
const BRUTE_AUT_CAP: usize = 10_000;

#[derive(Parser)]
#[command(name = "mods", version, about = "Orthogonal squares, partition systems, and orthogonal arrays over finite groups")]
struct Cli {
    /// Largest point set a build may allocate.
    #[arg(long, global = true, default_value_t = mods_core::DEFAULT_POINT_CAP)]
    cap: usize,

    /// Worker threads for the verification phases.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Write the main artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an artifact: nrc, lift, frobenius, semilattice, or example8.
    ///
    /// Examples: `construct nrc gf:5 m:3`, `construct lift gr:2^2:2 m:3`,
    /// `construct frobenius N:Z5 H:mult:2`, `construct semilattice Z2 m:3`.
    Construct {
        /// What to build, followed by key:value parameters.
        #[arg(required = true)]
        spec: Vec<String>,
    },
    /// Check a property of an input; exits 1 with a witness if it fails.
    Verify {
        /// One of: mols, mods, oa, cartesian.
        what: String,
        /// Input file; stdin when omitted; `example8` for the built-in pair.
        file: Option<PathBuf>,
    },
    /// Name the groups behind a square, a square set, or a partition set.
    Identify {
        /// One of: latin, profile.
        what: String,
        /// Input file; stdin when omitted; `example8` for the built-in pair.
        file: Option<PathBuf>,
    },
    /// Decide a structural property of a group.
    Classify {
        /// Only `fpf` is understood: can three fixed-point-free
        /// automorphisms compose to the identity?
        what: String,
        /// Group spec such as Z5, Z4xZ2, Z2^3, or D8.
        spec: String,
    },
    /// Translate a file: mods-to-oa, oa-to-mols, or mols-to-oa.
    Convert {
        direction: String,
        /// Input file; stdin when omitted.
        file: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<i32> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
        .map_err(|e| Error::InvalidInput(format!("cannot size the worker pool: {e}")))?;
    match &cli.command {
        Command::Construct { spec } => cmd_construct(cli, spec),
        Command::Verify { what, file } => cmd_verify(cli, what, file),
        Command::Identify { what, file } => cmd_identify(cli, what, file),
        Command::Classify { what, spec } => cmd_classify(what, spec),
        Command::Convert { direction, file } => cmd_convert(cli, direction, file),
    }
}

struct KeyValues<'a> {
    pairs: Vec<(&'a str, &'a str)>,
    bare: Vec<&'a str>,
}

impl<'a> KeyValues<'a> {
    fn new(tokens: &'a [String]) -> KeyValues<'a> {
        let mut pairs = Vec::new();
        let mut bare = Vec::new();
        for tok in tokens {
            match tok.split_once(':') {
                Some((k, v)) => pairs.push((k, v)),
                None => bare.push(tok.as_str()),
            }
        }
        KeyValues { pairs, bare }
    }

    fn require(&self, key: &str) -> Result<&'a str> {
        self.pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::InvalidInput(format!("missing parameter {key}:<value>")))
    }

    fn require_usize(&self, key: &str) -> Result<usize> {
        let v = self.require(key)?;
        v.parse()
            .map_err(|_| Error::InvalidInput(format!("bad value for {key}: {v:?}")))
    }
}

fn read_input(file: &Option<PathBuf>) -> Result<String> {
    match file {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_squares_arg(file: &Option<PathBuf>) -> Result<Vec<LatinSquare>> {
    if file.as_deref() == Some(Path::new("example8")) {
        let (a, b) = example_8x8();
        return Ok(vec![a, b]);
    }
    read_squares(&read_input(file)?)
}

fn emit(cli: &Cli, artifact: &str, report: &[String]) -> Result<()> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, artifact)
                .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
            for line in report {
                println!("{line}");
            }
        }
        None => {
            print!("{artifact}");
            for line in report {
                eprintln!("{line}");
            }
        }
    }
    Ok(())
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn cmd_construct(cli: &Cli, tokens: &[String]) -> Result<i32> {
    let what = tokens[0].as_str();
    let kv = KeyValues::new(&tokens[1..]);
    match what {
        "nrc" => {
            let field = parse_field_spec(&format!("gf:{}", kv.require("gf")?))?;
            let m = kv.require_usize("m")?;
            let arc = nrc_arc(&field, m)?;
            finish_arc(cli, &arc)
        }
        "lift" => {
            let ring = parse_ring_spec(&format!("gr:{}", kv.require("gr")?))?;
            let m = kv.require_usize("m")?;
            let arc = lifted_arc(&ring, m)?;
            finish_arc(cli, &arc)
        }
        "frobenius" => {
            let group = parse_group_spec(kv.require("N")?)?;
            let table = group.table()?;
            let hspec = kv.require("H")?;
            let a: usize = hspec
                .strip_prefix("mult:")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::InvalidInput("complement spec must look like H:mult:<a>".into()))?;
            let gen = power_automorphism(&table, a)?;
            let complement = generated_complement(&table, &[gen])?;
            let fd = FrobeniusData::new(table, complement)?;
            let ms = frobenius_mogs(&fd)?;
            let n = ms.order();
            let r = ms.squares().len();
            let mut report = vec![format!(
                "ok: {r} pairwise orthogonal squares of order {n}"
            )];
            report.extend(BoundsReport::from_regular_system(2, n, group.token(), r)?.lines());
            emit(cli, &write_mols(&ms), &report)?;
            Ok(0)
        }
        "semilattice" => {
            let spec = kv
                .bare
                .first()
                .ok_or_else(|| Error::InvalidInput("semilattice needs a group spec".into()))?;
            let group = parse_group_spec(spec)?;
            let m = kv.require_usize("m")?;
            if m < 2 {
                return Err(Error::InvalidInput("dimension must be at least 2".into()));
            }
            let table = group.table()?;
            let mut kinds: Vec<EmbeddingKind> = (0..m).map(EmbeddingKind::Coordinate).collect();
            kinds.push(EmbeddingKind::Diagonal(vec![
                Automorphism::identity(&table);
                m - 1
            ]));
            let sys = mods_build(group.mods_group()?, m, kinds, cli.cap)?;
            let artifact = write_mods(&sys)?;
            verified_system_report(cli, &sys, &artifact, &[format!(
                "diagonal semilattice of {} in dimension {m}",
                group.token()
            )])
        }
        "example8" => {
            let (a, b) = example_8x8();
            let artifact = write_latin_pair(&a, &b);
            let ms = MolsSet::new(vec![a, b])?;
            let report = profile_lines(&ms.partitions(), &square_roles(2))?;
            emit(cli, &artifact, &report)?;
            Ok(0)
        }
        other => Err(Error::InvalidInput(format!("unknown construction {other:?}"))),
    }
}

fn finish_arc(cli: &Cli, arc: &Arc) -> Result<i32> {
    let (sys, bounds) = arc_to_mods(arc, cli.cap)?;
    let artifact = write_mods(&sys)?;
    let k = sys.embeddings().len();
    let m = sys.m();
    let mut report = vec![format!(
        "ok: {k} embeddings of {} in dimension {m}, all {} {m}-subsets Cartesian over {} points",
        bounds.group_token,
        binom(k, m),
        sys.point_count()
    )];
    report.extend(bounds.lines());
    emit(cli, &artifact, &report)?;
    Ok(0)
}

fn verified_system_report(
    cli: &Cli,
    sys: &ModsSystem,
    artifact: &str,
    prefix: &[String],
) -> Result<i32> {
    let rep = mods_verify(sys);
    let mut report = prefix.to_vec();
    if let Some(subset) = rep.failing_subset {
        report.push(format!(
            "partitions {subset:?} are not the minimal partitions of a Cartesian lattice"
        ));
        emit(cli, artifact, &report)?;
        return Ok(1);
    }
    report.push(format!(
        "ok: {} partitions of {} points, every {}-subset Cartesian",
        sys.embeddings().len(),
        sys.point_count(),
        sys.m()
    ));
    emit(cli, artifact, &report)?;
    Ok(0)
}

fn orthogonality_failure(
    squares: &[LatinSquare],
) -> Result<Option<(usize, usize, (usize, usize), (usize, usize))>> {
    for w in squares.windows(2) {
        if w[0].order() != w[1].order() {
            return Err(Error::InvalidInput("squares have different orders".into()));
        }
    }
    let n = squares.first().map_or(0, |s| s.order());
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            let mut seen: Vec<Option<(usize, usize)>> = vec![None; n * n];
            for r in 0..n {
                for c in 0..n {
                    let key = squares[i].get(r, c) * n + squares[j].get(r, c);
                    if let Some(prev) = seen[key] {
                        return Ok(Some((i, j, prev, (r, c))));
                    }
                    seen[key] = Some((r, c));
                }
            }
        }
    }
    Ok(None)
}

fn cmd_verify(cli: &Cli, what: &str, file: &Option<PathBuf>) -> Result<i32> {
    match what {
        "mols" => {
            let squares = read_squares_arg(file)?;
            match orthogonality_failure(&squares)? {
                None => {
                    println!(
                        "ok: {} squares of order {}, all pairs orthogonal",
                        squares.len(),
                        squares.first().map_or(0, |s| s.order())
                    );
                    Ok(0)
                }
                Some((i, j, first, second)) => {
                    println!(
                        "squares {i} and {j} repeat a symbol pair at cells {first:?} and {second:?}"
                    );
                    Ok(1)
                }
            }
        }
        "mods" => {
            let sys = read_mods(&read_input(file)?, cli.cap)?;
            let rep = mods_verify(&sys);
            match rep.failing_subset {
                None => {
                    println!(
                        "ok: all {} {}-subsets Cartesian over {} points",
                        binom(sys.embeddings().len(), sys.m()),
                        sys.m(),
                        sys.point_count()
                    );
                    Ok(0)
                }
                Some(subset) => {
                    println!(
                        "partitions {subset:?} are not the minimal partitions of a Cartesian lattice"
                    );
                    Ok(1)
                }
            }
        }
        "oa" => {
            let oa = read_oa(&read_input(file)?)?;
            if oa_verify(&oa) {
                println!(
                    "ok: OA({},{},{},{}) has strength {} and index 1",
                    oa.runs(),
                    oa.factors(),
                    oa.levels(),
                    oa.strength(),
                    oa.strength()
                );
                Ok(0)
            } else {
                let (cols, tuple, count) =
                    oa_first_failure(&oa).expect("failed verification has a witness");
                println!(
                    "columns {cols:?} see the tuple {tuple:?} {count} times instead of once"
                );
                Ok(1)
            }
        }
        "cartesian" => {
            let ps = read_partition_set(&read_input(file)?)?;
            if is_cartesian(ps.members()) {
                println!(
                    "ok: {} partitions are the minimal partitions of a Cartesian lattice",
                    ps.members().len()
                );
                Ok(0)
            } else {
                println!("the partitions are not the minimal partitions of a Cartesian lattice");
                Ok(1)
            }
        }
        other => Err(Error::InvalidInput(format!("unknown verification {other:?}"))),
    }
}

fn square_roles(squares: usize) -> Vec<String> {
    let mut roles = vec!["rows".to_string(), "columns".to_string()];
    for i in 1..=squares {
        roles.push(format!("letters{i}"));
    }
    roles
}

fn profile_lines(ps: &PartitionSet, roles: &[String]) -> Result<Vec<String>> {
    let profile = group_profile(ps)?;
    Ok(profile
        .iter()
        .map(|(subset, name)| {
            let labels: Vec<&str> = subset.iter().map(|&i| roles[i].as_str()).collect();
            let name = name
                .as_ref()
                .map_or_else(|| "non-group".to_string(), |n| n.as_str().to_string());
            format!("{}: {}", labels.join(","), name)
        })
        .collect())
}

fn cmd_identify(_cli: &Cli, what: &str, file: &Option<PathBuf>) -> Result<i32> {
    if what != "latin" && what != "profile" {
        return Err(Error::InvalidInput(format!("unknown identification {what:?}")));
    }
    if what == "profile" {
        let text = if file.as_deref() == Some(Path::new("example8")) {
            let (a, b) = example_8x8();
            write_latin_pair(&a, &b)
        } else {
            read_input(file)?
        };
        let header = text.split_whitespace().next().unwrap_or("");
        if header == "partitions" {
            let ps = read_partition_set(&text)?;
            let roles: Vec<String> = (1..=ps.members().len()).map(|i| format!("P{i}")).collect();
            for line in profile_lines(&ps, &roles)? {
                println!("{line}");
            }
            return Ok(0);
        }
        let squares = read_squares(&text)?;
        let count = squares.len();
        let ms = MolsSet::new(squares)?;
        for line in profile_lines(&ms.partitions(), &square_roles(count))? {
            println!("{line}");
        }
        return Ok(0);
    }
    let squares = read_squares_arg(file)?;
    if squares.len() == 1 {
        match is_group_isotopic(&squares[0]) {
            Some(table) => println!("{}", identify_group(&table)?),
            None => println!("non-group"),
        }
        return Ok(0);
    }
    let count = squares.len();
    let ms = MolsSet::new(squares)?;
    for line in profile_lines(&ms.partitions(), &square_roles(count))? {
        println!("{line}");
    }
    Ok(0)
}

fn cmd_classify(what: &str, spec: &str) -> Result<i32> {
    if what != "fpf" {
        return Err(Error::InvalidInput(format!("unknown classification {what:?}")));
    }
    match parse_group_spec(spec)? {
        GroupSpec::Abelian(s) => match fpf_violation(&s) {
            Some(q) => println!("no: factor of order {q} has multiplicity 1"),
            None => {
                fpf_triple_witness(&s)?;
                println!(
                    "yes: verified triple of fixed-point-free automorphisms on {} elements",
                    s.order()
                );
            }
        },
        group @ GroupSpec::Dihedral(_) => {
            let table = group.table()?;
            match fpf_triple_bruteforce(&table, BRUTE_AUT_CAP)? {
                Some(_) => println!(
                    "yes: verified triple of fixed-point-free automorphisms on {} elements",
                    table.order()
                ),
                None => println!("no: exhaustive search over the automorphism group found no triple"),
            }
        }
    }
    Ok(0)
}

fn cmd_convert(cli: &Cli, direction: &str, file: &Option<PathBuf>) -> Result<i32> {
    match direction {
        "mods-to-oa" => {
            let sys = read_mods(&read_input(file)?, cli.cap)?;
            let oa = oa_from_mods(&sys)?;
            let report = vec![format!(
                "OA({},{},{},{})",
                oa.runs(),
                oa.factors(),
                oa.levels(),
                oa.strength()
            )];
            emit(cli, &write_oa(&oa), &report)?;
            Ok(0)
        }
        "oa-to-mols" => {
            let oa = read_oa(&read_input(file)?)?;
            let ms = mols_from_oa(&oa)?;
            let report = vec![format!(
                "{} squares of order {}",
                ms.squares().len(),
                ms.order()
            )];
            emit(cli, &write_mols(&ms), &report)?;
            Ok(0)
        }
        "mols-to-oa" => {
            let ms = MolsSet::new(read_squares_arg(file)?)?;
            let oa = oa_from_mols(&ms)?;
            let report = vec![format!(
                "OA({},{},{},{})",
                oa.runs(),
                oa.factors(),
                oa.levels(),
                oa.strength()
            )];
            emit(cli, &write_oa(&oa), &report)?;
            Ok(0)
        }
        other => Err(Error::InvalidInput(format!("unknown conversion {other:?}"))),
    }
}
