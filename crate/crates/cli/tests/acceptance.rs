//! Acceptance suite: one pass/fail line per criterion, with wall-clock time and budget.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use hochschild::algebra::{Bimodule, GroupAlgebra};
use hochschild::bv::check_bv_equivalences;
use hochschild::bv::corpus::corpus;
use hochschild::bv::derived::{
    check_left_multiplication_embedding, check_lie, find_poisson_counterexample, variant_lie_bracket,
    EndomorphismGerstenhaber,
};
use hochschild::comparison::{check_cap_diagram, check_cup_diagram, check_section_cap, check_section_properties};
use hochschild::duality::{calabi_yau_check, check_bv_on_hh, BvOptions, BvReport};
use hochschild::group::Group;
use hochschild::hochschild::sanity::check_differentials;
use hochschild::hochschild::truncated_homology;
use hochschild::linalg::Matrix;
use hochschild::resolution::{hochschild_via_resolution, PeriodicResolution, SmallModule};
use hochschild::Ring;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1() -> Verdict {
    let cases = [
        (Group::cyclic(2), Ring::PrimeField(2), 5),
        (Group::cyclic(3), Ring::PrimeField(3), 4),
        (Group::cyclic(4), Ring::Integers, 4),
        (Group::symmetric3(), Ring::PrimeField(3), 4),
    ];
    let mut checked = 0;
    for (g, ring, len) in cases {
        let name = g.name();
        let rs = check_differentials(&GroupAlgebra::new(g, ring), len).map_err(|e| e.to_string())?;
        if let Some(r) = rs.iter().find(|r| !r.passed) {
            return Err(format!("{name}: {} {}", r.check, r.detail));
        }
        checked += rs.len();
    }
    Ok(format!("{checked} identity checks on Z/2 (len 5), Z/3, Z/4, S3 (len 4)"))
}

fn c2() -> Verdict {
    let mut summary = Vec::new();
    for n in [2usize, 3] {
        let ring = Ring::PrimeField(n as u64);
        let alg = GroupAlgebra::new(Group::cyclic(n), ring);
        let bar: Vec<usize> = truncated_homology(&alg, Bimodule::Algebra, 0..=5)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|p| p.free_rank)
            .collect();
        let res = PeriodicResolution::new(n, ring, 5).map_err(|e| e.to_string())?;
        let small = hochschild_via_resolution(&res, SmallModule::Algebra, 5).map_err(|e| e.to_string())?;
        let periodic: Vec<usize> =
            (0..=5).map(|k| small.homology(k).map(|p| p.free_rank)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        ensure(bar == periodic, format!("Z/{n}: bar {bar:?} periodic {periodic:?}"))?;
        ensure(bar.iter().all(|&d| d == n), format!("Z/{n}: expected {n} in every degree, got {bar:?}"))?;
        summary.push(format!("Z/{n}: {bar:?}"));
    }
    Ok(summary.join("; "))
}

fn surface() -> Vec<GroupAlgebra> {
    vec![
        GroupAlgebra::new(Group::cyclic(2), Ring::PrimeField(2)),
        GroupAlgebra::new(Group::cyclic(3), Ring::PrimeField(3)),
        GroupAlgebra::new(Group::symmetric3(), Ring::PrimeField(3)),
    ]
}

type Family = fn(&GroupAlgebra, usize) -> hochschild::Result<Vec<hochschild::comparison::DiagramRow>>;

fn diagrams(families: &[Family]) -> Verdict {
    let mut rows = 0;
    for alg in surface() {
        for f in families {
            for row in f(&alg, 2).map_err(|e| e.to_string())? {
                if !row.passed() {
                    return Err(format!("{}: {}", alg.group().name(), serde_json::to_string(&row).unwrap()));
                }
                rows += 1;
            }
        }
    }
    Ok(format!("{rows} diagram rows, zero failures"))
}

fn c3() -> Verdict {
    diagrams(&[check_cup_diagram, check_cap_diagram, check_section_cap])
}

fn c4() -> Verdict {
    diagrams(&[check_section_properties])
}

fn c5() -> Verdict {
    let entries = corpus();
    ensure(entries.len() >= 20, format!("corpus has {} specs", entries.len()))?;
    let mut controls = 0;
    for e in &entries {
        let eq = check_bv_equivalences(&e.spec);
        ensure(eq.agree(), format!("{}: characterizations disagree {}", e.spec.name, eq.to_json()))?;
        ensure(eq.second_order == e.expect_bv, format!("{}: expected {}", e.spec.name, e.expect_bv))?;
        if !e.expect_bv {
            ensure(!eq.second_order && !eq.gerstenhaber && !eq.derived, format!("{}: control passed", e.spec.name))?;
            controls += 1;
        }
    }
    Ok(format!("{} specs, {controls} negative controls, biconditional holds", entries.len()))
}

fn bv_suite(d: usize, ring: Ring, k: i64) -> Result<BvReport, String> {
    let report = check_bv_on_hh(&BvOptions::new(d, ring, k)).map_err(|e| e.to_string())?;
    if let Some(r) = report.records.iter().find(|r| !r.passed) {
        return Err(format!("d={d} {}: {} {}", ring.tag(), r.check, r.detail));
    }
    Ok(report)
}

const CORE_BV: [&str; 7] = [
    "duality_invertible",
    "b_of_c_vanishes",
    "delta_squares_to_zero",
    "delta_of_unit_vanishes",
    "bv_bracket_equals_gerstenhaber_bracket",
    "hh_rank_pattern",
    "psi_variant_independence",
];

fn has_core(report: &BvReport) -> Result<(), String> {
    for name in CORE_BV {
        ensure(report.record(name).is_some_and(|r| r.passed), format!("missing or failing {name}"))?;
    }
    Ok(())
}

fn c6() -> Verdict {
    let report = bv_suite(1, Ring::Rationals, 3)?;
    has_core(&report)?;
    ensure(report.record("delta_brute_force").is_some_and(|r| r.passed), "bar-level Δ oracle")?;
    let mut flipped = BvOptions::new(1, Ring::Rationals, 3);
    flipped.flip_b = true;
    let control = check_bv_on_hh(&flipped).map_err(|e| e.to_string())?;
    ensure(!control.passed(), "flipped Connes sign was not detected")?;
    Ok(format!("{} checks on |k| <= 3; flipped-sign control rejected", report.records.len()))
}

fn c7() -> Verdict {
    let mut n = 0;
    for ring in [Ring::Rationals, Ring::PrimeField(5)] {
        let report = bv_suite(2, ring, 2)?;
        has_core(&report)?;
        n += report.records.len();
    }
    Ok(format!("{n} checks over Q and F5 with K = 2, rank pattern (1,2,1)"))
}

fn c8() -> Verdict {
    let mut n = 0;
    for ring in [Ring::Rationals, Ring::Integers, Ring::PrimeField(3)] {
        let r = calabi_yau_check(1, ring, hh_cli::CY_SPAN).map_err(|e| e.to_string())?;
        if let Some(f) = r.records.iter().find(|f| !f.passed) {
            return Err(format!("{}: {} {}", ring.tag(), f.check, f.detail));
        }
        n += r.records.len();
    }
    Ok(format!("{n} checks over Q, Z, F3"))
}

fn c9() -> Verdict {
    let q = Ring::Rationals;
    let instances: Vec<(Vec<i64>, Matrix)> = vec![
        (vec![0, 1], Matrix::from_i64_rows(q, &[&[0, 0], &[1, 0]])),
        (vec![0, 1, 1, 2], Matrix::from_i64_rows(q, &[&[0, 0, 0, 0], &[1, 0, 0, 0], &[2, 0, 0, 0], &[0, 2, -1, 0]])),
        (vec![-1, 0, 0, 1], Matrix::from_i64_rows(q, &[&[0, 0, 0, 0], &[3, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, -2, 0]])),
        (vec![0, 1, 2], Matrix::from_i64_rows(Ring::PrimeField(3), &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]])),
    ];
    for (degrees, b) in &instances {
        let end = EndomorphismGerstenhaber::new(degrees, b).map_err(|e| e.to_string())?;
        if let Some(r) = end.check().into_iter().find(|r| !r.passed) {
            return Err(format!("End{degrees:?}: {} {}", r.check, r.detail));
        }
    }
    let mut lie = 0;
    for e in corpus().into_iter().filter(|e| e.expect_bv) {
        let Some(d) = e.spec.delta.clone() else { continue };
        let Ok(br) = variant_lie_bracket(&e.spec, &d) else { continue };
        if let Some(r) = check_lie(&e.spec, &br).into_iter().find(|r| !r.passed) {
            return Err(format!("variant bracket on {}: {}", e.spec.name, r.check));
        }
        lie += 1;
    }
    ensure(lie > 0, "no derivation in the corpus to test the variant bracket")?;
    let cx = find_poisson_counterexample().ok_or("no Poisson counterexample found")?;
    let (poisson, rest): (Vec<_>, Vec<_>) = cx.records.iter().partition(|r| r.check == "poisson");
    ensure(rest.iter().all(|r| r.passed) && poisson.iter().all(|r| !r.passed), "counterexample is not Lie-but-not-Poisson")?;
    let mut embedded = 0;
    for e in corpus().into_iter().filter(|e| e.expect_bv) {
        let rs = check_left_multiplication_embedding(&e.spec).map_err(|err| format!("{}: {err}", e.spec.name))?;
        if let Some(r) = rs.iter().find(|r| !r.passed) {
            return Err(format!("embedding of {}: {}", e.spec.name, r.check));
        }
        embedded += 1;
    }
    Ok(format!(
        "{} End(E) instances, variant bracket Lie on {lie} specs, counterexample {}, {embedded} embeddings",
        instances.len(),
        cx.spec.name
    ))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run_hh(args: &[String]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hh")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), format!("{args:?} exited with {:?}", out.status.code()))?;
    Ok(out.stdout)
}

fn c10() -> Verdict {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<String>>();
    let commands = vec![
        s(&["compute", "--group", &data("z3.json"), "--ring", "f3", "--max-degree", "4"]),
        s(&["compute", "--group", &data("free_abelian_2.json")]),
        s(&["bv", "--group", &data("free_abelian_1.json")]),
        s(&["axioms", "--spec", &data("specs/trunc5_mixed_f5.json")]),
        s(&["compare-group", "--group", &data("z2.json"), "--ring", "f2", "--max-degree", "2"]),
        s(&["cy-check", "--group", &data("free_abelian_1.json")]),
    ];
    for cmd in &commands {
        let a = run_hh(cmd)?;
        let mut parallel = cmd.clone();
        parallel.extend(s(&["--jobs", "4"]));
        let b = run_hh(&parallel)?;
        let c = run_hh(cmd)?;
        ensure(a == b && a == c, format!("{} report differs between runs", cmd[0]))?;
    }
    let q1 = check_bv_on_hh(&BvOptions::new(1, Ring::Rationals, 3)).map_err(|e| e.to_string())?;
    let q2 = check_bv_on_hh(&BvOptions::new(2, Ring::PrimeField(5), 2)).map_err(|e| e.to_string())?;
    for r in [&q1, &q2] {
        ensure(r.record("psi_variant_independence").is_some_and(|x| x.passed), "psi variant dependence")?;
    }
    ensure(q1.to_json() == check_bv_on_hh(&BvOptions::new(1, Ring::Rationals, 3)).unwrap().to_json(), "bv JSON differs")?;
    Ok(format!("{} commands byte-identical across runs and --jobs; psi-variant independence on d = 1, 2", commands.len()))
}

fn main() {
    let criteria: Vec<(&str, u64, fn() -> Verdict)> = vec![
        ("differential sanity", 60, c1),
        ("two-oracle Hochschild homology", 120, c2),
        ("comparison diagrams", 300, c3),
        ("section properties", 300, c4),
        ("BV equivalences on the corpus", 60, c5),
        ("BV structure on HH for Z", 120, c6),
        ("BV structure on HH for Z^2", 600, c7),
        ("Calabi-Yau for k[Z]", 60, c8),
        ("derived brackets and End(E)", 60, c9),
        ("determinism", 600, c10),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let (status, detail) = match &verdict {
            Ok(d) if in_time => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("over budget {budget}s: {d}")),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} [{:>7.2}s] {name}: {detail}", i + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
