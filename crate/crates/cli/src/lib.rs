//! The `hh` command line: loads group and algebra specs, runs the engine, writes JSON reports.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hochschild::algebra::{Bimodule, GroupAlgebra};
use hochschild::bv::axioms::{check_algebra, check_bv_equivalences, check_gerstenhaber};
use hochschild::bv::GradedAlgebraSpec;
use hochschild::comparison::{
    check_cap_diagram, check_cup_diagram, check_eckmann_shapiro, check_section_cap, check_section_properties, DiagramRow,
};
use hochschild::duality::{calabi_yau_check, check_bv_on_hh, BvOptions};
use hochschild::group::Group;
use hochschild::hochschild::truncated_cohomology;
use hochschild::hochschild::truncated_homology;
use hochschild::linalg::HomologyPresentation;
use hochschild::report::CheckRecord;
use hochschild::resolution::{hochschild_via_resolution, KoszulResolution, PeriodicResolution, SmallModule, Variant};
use hochschild::{Error, ParseError, Ring};

/// Largest accepted `--max-degree`.
pub const MAX_DEGREE_BOUND: usize = 8;
/// Monomial span of the Calabi–Yau window.
pub const CY_SPAN: i64 = 5;

#[derive(Parser, Debug, Clone)]
#[command(name = "hh", version, about = "Hochschild (co)homology, BV structures and duality for group algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here and print a table instead.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for independent checks; never changes the report.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// HH_* and HH^* with coefficients in the algebra.
    Compute(GroupArgs),
    /// Duality matrices, Δ tables and BV checks for free abelian groups.
    Bv(BvArgs),
    /// BV equivalences and Gerstenhaber axioms on a graded algebra spec.
    Axioms(SpecArgs),
    /// Comparison diagrams between Hochschild and group (co)homology.
    CompareGroup(GroupArgs),
    /// Calabi–Yau conditions (rank one).
    CyCheck(CyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: PathBuf,
    /// z, q or f<p>.
    #[arg(long, default_value = "q")]
    pub ring: String,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
}

#[derive(Args, Debug, Clone)]
pub struct BvArgs {
    #[arg(long)]
    pub group: PathBuf,
    #[arg(long, default_value = "q")]
    pub ring: String,
    /// Exponent bound K of the truncated basis.
    #[arg(long, default_value_t = 3)]
    pub trunc_k: i64,
    /// Permit ranks above 2.
    #[arg(long)]
    pub allow_slow: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    #[arg(long)]
    pub spec: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct CyArgs {
    #[arg(long)]
    pub group: PathBuf,
    #[arg(long, default_value = "q")]
    pub ring: String,
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    CheckFailed = 1,
    BadInput = 2,
    Unsupported = 3,
    TheoremViolation = 4,
}

/// A failure before a report could be produced.
#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure { exit: Exit::BadInput, message: message.into() }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match &e {
            Error::Parse(_) => Exit::BadInput,
            Error::UnsupportedRank(_)
            | Error::UnsupportedRing(_)
            | Error::InfiniteGroup
            | Error::NotFreeAbelian
            | Error::UnsupportedModule(_)
            | Error::UnsupportedBackend(_)
            | Error::CoefficientsNotInA => Exit::Unsupported,
            Error::NotInvertible(_) | Error::LinearSolveFailed(_) => Exit::TheoremViolation,
            _ => Exit::CheckFailed,
        };
        Failure { exit, message: e.to_string() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        bad_input(e.to_string())
    }
}

/// A finished run: the report and its exit status.
#[derive(Debug)]
pub struct Outcome {
    pub exit: Exit,
    pub report: Value,
}

struct Input {
    value: Value,
    digest: String,
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_json(path: &Path) -> Result<Input, Failure> {
    let bytes = std::fs::read(path).map_err(|e| bad_input(format!("cannot read {}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes).map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
    Ok(Input { value, digest: sha256(&bytes) })
}

fn parse_ring(s: &str) -> Result<Ring, Failure> {
    s.parse::<Ring>().map_err(Failure::from)
}

fn load_group(path: &Path) -> Result<(Group, String), Failure> {
    let input = read_json(path)?;
    Ok((Group::from_json(&input.value)?, input.digest))
}

fn check_degree(max_degree: usize) -> Result<(), Failure> {
    if max_degree > MAX_DEGREE_BOUND {
        return Err(bad_input(format!("--max-degree must be at most {MAX_DEGREE_BOUND}")));
    }
    Ok(())
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| bad_input(format!("--jobs: {e}")))
}

/// Wraps a command result with version, configuration and its hash.
fn envelope(command: &str, config: Value, status: bool, result: Value) -> Value {
    let canonical = serde_json::to_string(&config).expect("json");
    json!({
        "tool": "hh",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
        "config_hash": sha256(canonical.as_bytes()),
        "status": if status { "pass" } else { "fail" },
        "result": result,
    })
}

fn checks_json(records: &[CheckRecord]) -> Value {
    json!(records
        .iter()
        .map(|r| {
            let status = if r.passed { "pass" } else { "fail" };
            let key = if r.passed { "detail" } else { "witness" };
            json!({"name": r.check, "status": status, key: r.detail})
        })
        .collect::<Vec<_>>())
}

fn presentation(p: &HomologyPresentation) -> Value {
    json!({
        "free_rank": p.free_rank,
        "torsion": p.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}

fn cyclic_order(g: &Group) -> Option<usize> {
    let n = g.order()?;
    if n < 2 || !g.is_commutative() {
        return None;
    }
    let elems = g.elements().ok()?;
    let full = elems.iter().any(|x| {
        let mut y = x.clone();
        let mut k = 1;
        while !g.is_identity(&y) {
            y = g.mul(&y, x);
            k += 1;
        }
        k == n
    });
    full.then_some(n)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}

fn cmd_compute(args: &GroupArgs, jobs: usize) -> Result<Outcome, Failure> {
    check_degree(args.max_degree)?;
    let ring = parse_ring(&args.ring)?;
    let (group, digest) = load_group(&args.group)?;
    let max = args.max_degree;
    let config = json!({"group_sha256": digest, "group": group.name(), "ring": ring.tag(), "max_degree": max});
    if let Some(d) = group.rank() {
        let res = KoszulResolution::new(d, ring, Variant::Left)?;
        let small = hochschild_via_resolution(&res, SmallModule::Algebra, max)?;
        let vanish = small.differentials_vanish();
        let rows: Vec<Value> = (0..=max)
            .map(|n| {
                let r = binomial(d, n);
                json!({"degree": n, "free_rank_over_A": r, "homology": format!("free rank {r} over A"), "cohomology": format!("free rank {r} over A")})
            })
            .collect();
        let result = json!({"model": "koszul", "zero_differential": vanish, "degrees": rows});
        return Ok(Outcome { exit: if vanish { Exit::Ok } else { Exit::CheckFailed }, report: envelope("compute", config, vanish, result) });
    }
    let alg = GroupAlgebra::new(group.clone(), ring);
    let periodic_order = cyclic_order(&group);
    let (bar, periodic) = pool(jobs)?.install(|| {
        rayon::join(
            || -> hochschild::Result<_> {
                Ok((
                    truncated_homology(&alg, Bimodule::Algebra, 0..=max)?,
                    truncated_cohomology(&alg, Bimodule::Algebra, 0..=max)?,
                ))
            },
            || -> hochschild::Result<Option<_>> {
                let Some(n) = periodic_order else { return Ok(None) };
                let res = PeriodicResolution::new(n, ring, max)?;
                let small = hochschild_via_resolution(&res, SmallModule::Algebra, max)?;
                let h = (0..=max).map(|k| small.homology(k)).collect::<hochschild::Result<Vec<_>>>()?;
                let c = (0..=max).map(|k| small.cohomology(k)).collect::<hochschild::Result<Vec<_>>>()?;
                Ok(Some((h, c)))
            },
        )
    });
    let (hom, coh) = bar?;
    let periodic = periodic?;
    let same = |a: &HomologyPresentation, b: &HomologyPresentation| a.free_rank == b.free_rank && a.torsion == b.torsion;
    let agree = periodic
        .as_ref()
        .map(|(h, c)| h.iter().zip(&hom).all(|(a, b)| same(a, b)) && c.iter().zip(&coh).all(|(a, b)| same(a, b)));
    let rows: Vec<Value> = (0..=max)
        .map(|n| {
            let mut row = json!({"degree": n, "homology": presentation(&hom[n]), "cohomology": presentation(&coh[n])});
            if let Some((h, c)) = &periodic {
                row["periodic_homology"] = presentation(&h[n]);
                row["periodic_cohomology"] = presentation(&c[n]);
            }
            row
        })
        .collect();
    let result = json!({
        "model": "normalized_bar",
        "dimensions": hom.iter().map(|p| p.free_rank).collect::<Vec<_>>(),
        "cohomology_dimensions": coh.iter().map(|p| p.free_rank).collect::<Vec<_>>(),
        "oracles_agree": agree,
        "degrees": rows,
    });
    let ok = agree != Some(false);
    Ok(Outcome { exit: if ok { Exit::Ok } else { Exit::CheckFailed }, report: envelope("compute", config, ok, result) })
}

fn cmd_bv(args: &BvArgs) -> Result<Outcome, Failure> {
    if args.trunc_k < 1 {
        return Err(bad_input("--trunc-k must be at least 1"));
    }
    let ring = parse_ring(&args.ring)?;
    let (group, digest) = load_group(&args.group)?;
    let d = group.rank().ok_or(Error::NotFreeAbelian)?;
    let config = json!({"group_sha256": digest, "group": group.name(), "ring": ring.tag(), "trunc_k": args.trunc_k, "allow_slow": args.allow_slow});
    let mut opts = BvOptions::new(d, ring, args.trunc_k);
    opts.allow_slow = args.allow_slow;
    let report = check_bv_on_hh(&opts)?;
    let exit = if report.theorem_violation() {
        Exit::TheoremViolation
    } else if report.passed() {
        Exit::Ok
    } else {
        Exit::CheckFailed
    };
    Ok(Outcome { exit, report: envelope("bv", config, report.passed(), report.to_json()) })
}

fn cmd_axioms(args: &SpecArgs) -> Result<Outcome, Failure> {
    let input = read_json(&args.spec)?;
    let spec = GradedAlgebraSpec::from_json(&input.value)?;
    let config = json!({"spec_sha256": input.digest, "spec": spec.name});
    let mut result = json!({"spec": spec.name, "dimension": spec.dim(), "ring": spec.ring.tag()});
    let mut ok = true;
    if spec.delta.is_some() {
        let mut delta_only = spec.clone();
        delta_only.bracket = None;
        let eq = check_bv_equivalences(&delta_only);
        ok &= eq.second_order && eq.gerstenhaber && eq.derived;
        result["bv_equivalences"] = eq.to_json();
    }
    if spec.bracket.is_some() {
        let rs = check_gerstenhaber(&spec)?;
        ok &= rs.iter().all(|r| r.passed);
        result["gerstenhaber"] = checks_json(&rs);
    }
    if spec.delta.is_none() && spec.bracket.is_none() {
        let rs = check_algebra(&spec, true);
        ok &= rs.iter().all(|r| r.passed);
        result["algebra"] = checks_json(&rs);
    }
    Ok(Outcome { exit: if ok { Exit::Ok } else { Exit::CheckFailed }, report: envelope("axioms", config, ok, result) })
}

type Family = fn(&GroupAlgebra, usize) -> hochschild::Result<Vec<DiagramRow>>;

fn cmd_compare_group(args: &GroupArgs, jobs: usize) -> Result<Outcome, Failure> {
    check_degree(args.max_degree)?;
    let ring = parse_ring(&args.ring)?;
    let (group, digest) = load_group(&args.group)?;
    if !group.is_finite() {
        return Err(Error::InfiniteGroup.into());
    }
    let config = json!({"group_sha256": digest, "group": group.name(), "ring": ring.tag(), "max_degree": args.max_degree});
    let alg = GroupAlgebra::new(group, ring);
    let families: Vec<Family> = vec![
        check_cup_diagram,
        check_cap_diagram,
        check_section_cap,
        check_section_properties,
        |a, n| check_eckmann_shapiro(a, Bimodule::Algebra, n),
        |a, n| check_eckmann_shapiro(a, Bimodule::Trivial, n),
    ];
    let max = args.max_degree;
    let rows: Vec<DiagramRow> = pool(jobs)?.install(|| {
        use rayon::prelude::*;
        families.par_iter().map(|f| f(&alg, max)).collect::<hochschild::Result<Vec<_>>>()
    })?
    .into_iter()
    .flatten()
    .collect();
    let ok = rows.iter().all(DiagramRow::passed);
    let result = json!({"rows": rows, "failures": rows.iter().filter(|r| !r.passed()).count()});
    Ok(Outcome { exit: if ok { Exit::Ok } else { Exit::CheckFailed }, report: envelope("compare-group", config, ok, result) })
}

fn cmd_cy(args: &CyArgs) -> Result<Outcome, Failure> {
    let ring = parse_ring(&args.ring)?;
    let (group, digest) = load_group(&args.group)?;
    let d = group.rank().ok_or(Error::NotFreeAbelian)?;
    let config = json!({"group_sha256": digest, "group": group.name(), "ring": ring.tag(), "span": CY_SPAN});
    let report = calabi_yau_check(d, ring, CY_SPAN)?;
    let ok = report.passed();
    Ok(Outcome { exit: if ok { Exit::Ok } else { Exit::CheckFailed }, report: envelope("cy-check", config, ok, report.to_json()) })
}

/// Runs one command.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Compute(a) => cmd_compute(a, cli.jobs),
        Command::Bv(a) => cmd_bv(a),
        Command::Axioms(a) => cmd_axioms(a),
        Command::CompareGroup(a) => cmd_compare_group(a, cli.jobs),
        Command::CyCheck(a) => cmd_cy(a),
    }
}

/// Serialized report bytes (pretty JSON with a trailing newline).
pub fn render_json(report: &Value) -> String {
    serde_json::to_string_pretty(report).expect("json") + "\n"
}

/// A plain table of the report's checks or rows, rendered from the JSON.
pub fn render_table(report: &Value) -> String {
    let mut out = format!(
        "{} {} [{}] config {}\n",
        report["command"].as_str().unwrap_or(""),
        report["status"].as_str().unwrap_or(""),
        report["version"].as_str().unwrap_or(""),
        &report["config_hash"].as_str().unwrap_or("")[..12.min(report["config_hash"].as_str().unwrap_or("").len())],
    );
    let result = &report["result"];
    let rows = result["checks"].as_array().or_else(|| result["rows"].as_array()).or_else(|| result["degrees"].as_array());
    for row in rows.into_iter().flatten() {
        let name = row["name"].as_str().map(str::to_string).unwrap_or_else(|| {
            [&row["diagram"], &row["module"], &row["degree"]]
                .iter()
                .map(|v| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()))
                .collect::<Vec<_>>()
                .join(" ")
        });
        let status = row["status"].as_str().map(str::to_string).unwrap_or_else(|| row["homology"].to_string());
        out.push_str(&format!("  {name:<48} {status}\n"));
    }
    out
}

/// First failing check or row, for printing as a witness.
pub fn first_witness(report: &Value) -> Option<Value> {
    let result = &report["result"];
    let mut candidates: Vec<&Value> = Vec::new();
    for key in ["checks", "rows"] {
        candidates.extend(result[key].as_array().into_iter().flatten());
    }
    if let Some(eq) = result.get("bv_equivalences") {
        candidates.extend(eq["checks"].as_array().into_iter().flatten());
    }
    candidates.extend(result["gerstenhaber"].as_array().into_iter().flatten());
    candidates
        .into_iter()
        .find(|r| r["status"] == "fail" || r["passed"] == false || r["status"] == "error")
        .cloned()
}

/// Entry point shared by the binary and the tests: returns the exit code.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(outcome) => {
            let text = render_json(&outcome.report);
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return Exit::BadInput as i32;
                    }
                    print!("{}", render_table(&outcome.report));
                }
                None => print!("{text}"),
            }
            if outcome.exit != Exit::Ok {
                if let Some(w) = first_witness(&outcome.report) {
                    eprintln!("witness: {w}");
                }
            }
            outcome.exit as i32
        }
        Err(f) => {
            eprintln!("error: {f}");
            f.exit as i32
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("hh").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults() {
        let cli = parse(&["compute", "--group", "g.json"]);
        assert_eq!(cli.jobs, 1);
        let Command::Compute(a) = cli.command else { panic!() };
        assert_eq!((a.ring.as_str(), a.max_degree), ("q", 3));
        let Command::Bv(b) = parse(&["bv", "--group", "g.json"]).command else { panic!() };
        assert_eq!(b.trunc_k, 3);
        assert!(!b.allow_slow);
    }

    #[test]
    fn error_mapping() {
        assert_eq!(Failure::from(Error::UnsupportedRank(3)).exit, Exit::Unsupported);
        assert_eq!(Failure::from(Error::InfiniteGroup).exit, Exit::Unsupported);
        assert_eq!(Failure::from(Error::NotInvertible(1)).exit, Exit::TheoremViolation);
        assert_eq!(bad_input("x").exit, Exit::BadInput);
    }

    #[test]
    fn binomials() {
        assert_eq!((0..=4).map(|k| binomial(4, k)).collect::<Vec<_>>(), vec![1, 4, 6, 4, 1]);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn cyclic_detection() {
        assert_eq!(cyclic_order(&Group::cyclic(4)), Some(4));
        assert_eq!(cyclic_order(&Group::symmetric3()), None);
        assert_eq!(cyclic_order(&Group::trivial()), None);
    }

    #[test]
    fn table_and_witness_rendering() {
        let report = envelope(
            "bv",
            json!({"a": 1}),
            false,
            json!({"checks": [{"name": "x", "status": "pass"}, {"name": "y", "status": "fail", "witness": 3}]}),
        );
        let t = render_table(&report);
        assert!(t.starts_with("bv fail"));
        assert!(t.contains("y") && t.contains("fail"));
        assert_eq!(first_witness(&report).unwrap()["name"], "y");
        assert_eq!(render_json(&report), render_json(&report.clone()));
    }
}
