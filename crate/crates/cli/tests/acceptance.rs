//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use twotrans::building::{build_building, check_projective_axioms, check_two_transitive_points};
use twotrans::catalog::{
    sharply_transitive_probe, spiral_element, verify_catalog, Catalog, SpiralParameter,
};
use twotrans::coset::{
    classify, double_coset_count_by_enumeration, double_cosets, finite_diagrams, witness_word,
};
use twotrans::coxeter::is_reduced;
use twotrans::rep::{
    real_type, sym2_decompose, tensor_decompose, weyl_dim, RealType, RootDatum, Weight,
};
use twotrans::{CoxeterDiagram, Violation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn diagram(s: &str) -> Result<CoxeterDiagram, String> {
    CoxeterDiagram::parse(s).map_err(|e| e.to_string())
}

fn weight(s: &str) -> Weight {
    s.parse().expect("literal weight")
}

fn classification_sweep() -> Outcome {
    let c = classify(8, 12).map_err(|e| e.to_string())?;
    let found: BTreeSet<(String, usize)> = c
        .two_transitive()
        .iter()
        .map(|e| (e.diagram.clone(), e.node))
        .collect();
    let expected: BTreeSet<(String, usize)> = (2..=8)
        .flat_map(|k| [(format!("A{k}"), 1), (format!("A{k}"), k)])
        .collect();
    ensure(found == expected, || format!("got {found:?}"))?;
    let degenerate: Vec<&str> = c.degenerate().iter().map(|e| e.diagram.as_str()).collect();
    ensure(degenerate == ["A1"], || {
        format!("degenerate {degenerate:?}")
    })?;
    Ok(format!(
        "{} pairs over {} entries",
        found.len(),
        c.entries.len()
    ))
}

// Node 1 is the center of a star, a leaf whose neighbor branches, and the
// far end of a path ending in a double bond.
const WITNESS_CASES: [(&str, Violation); 3] = [
    (
        r#"{"nodes": 3, "bonds": [[1, 2, 3], [1, 3, 3]]}"#,
        Violation::BranchAtFirst,
    ),
    (
        r#"{"nodes": 4, "bonds": [[1, 2, 3], [2, 3, 3], [2, 4, 3]]}"#,
        Violation::BranchAtInterior,
    ),
    (
        r#"{"nodes": 3, "bonds": [[1, 2, 3], [2, 3, 4]]}"#,
        Violation::MultipleBond,
    ),
];

fn witness_words() -> Outcome {
    let mut shown = Vec::new();
    for (doc, case) in WITNESS_CASES {
        let d = diagram(doc)?;
        let word = witness_word(&d, case).map_err(|e| e.to_string())?;
        ensure(is_reduced(&d, &word).map_err(|e| e.to_string())?, || {
            format!("{case}: {word} not reduced")
        })?;
        let dc = double_cosets(&d, 1).map_err(|e| e.to_string())?;
        let class = dc.class_of_word(&word).map_err(|e| e.to_string())?;
        ensure(dc.class_count() >= 3 && class >= 2, || {
            format!(
                "{case}: {} classes, word in class {class}",
                dc.class_count()
            )
        })?;
        shown.push(format!("{case} {word}"));
    }
    Ok(shown.join("; "))
}

fn brute_force_oracle() -> Outcome {
    let mut pairs = 0;
    for (t, name) in finite_diagrams(3, 12) {
        let d = diagram(&name)?;
        for i in 1..=t.rank() {
            let fast = double_cosets(&d, i)
                .map_err(|e| e.to_string())?
                .class_count();
            let slow =
                double_coset_count_by_enumeration(&d, i, 1_000_000).map_err(|e| e.to_string())?;
            ensure(fast == slow, || {
                format!("{name} node {i}: {fast} vs {slow}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (type, node) pairs agree"))
}

fn buildings() -> Outcome {
    let a2 = build_building(2, 2).map_err(|e| e.to_string())?;
    ensure(a2.chamber_count() == 21, || {
        format!("A2(2) has {} chambers", a2.chamber_count())
    })?;
    let mut sizes: Vec<usize> = a2.bruhat_cells(0).into_values().collect();
    sizes.sort();
    ensure(sizes == [1, 2, 2, 4, 4, 8], || format!("cells {sizes:?}"))?;
    let a3 = build_building(3, 2).map_err(|e| e.to_string())?;
    ensure(a3.chamber_count() == 315, || {
        format!("A3(2) has {} chambers", a3.chamber_count())
    })?;
    let a2q3 = build_building(2, 3).map_err(|e| e.to_string())?;
    for b in [&a2, &a2q3, &a3] {
        for report in [check_two_transitive_points(b), check_projective_axioms(b)] {
            let report = report.map_err(|e| e.to_string())?;
            ensure(report.pass(), || {
                format!("{}: {:?}", b.instance(), report.checks)
            })?;
        }
    }
    Ok("21 and 315 chambers, cells {1,2,2,4,4,8}, all checks pass".into())
}

fn decompositions() -> Outcome {
    let rd = |s: &str| RootDatum::new(s).map_err(|e| e.to_string());
    let sym2 = |t: &str, w: &str| -> Result<(String, Vec<u128>), String> {
        let s = sym2_decompose(&rd(t)?, &weight(w)).map_err(|e| e.to_string())?;
        Ok((s.pretty(), s.terms.iter().map(|t| t.dimension).collect()))
    };
    let (g2, _) = sym2("G2", "1,0")?;
    ensure(g2 == "2π1 ⊕ 0", || format!("G2: {g2}"))?;
    let (b3, _) = sym2("B3", "0,0,1")?;
    ensure(b3 == "2π3 ⊕ 0", || format!("B3: {b3}"))?;
    let (b4, dims) = sym2("B4", "0,0,0,1")?;
    ensure(b4 == "2π4 ⊕ π1 ⊕ 0" && dims == [126, 9, 1], || {
        format!("B4: {b4} {dims:?}")
    })?;
    for n in 2..=4usize {
        let c = rd(&format!("C{n}"))?;
        let pi1 = Weight::fundamental(n, 1, 1);
        let t = tensor_decompose(&c, &pi1, &pi1).map_err(|e| e.to_string())?;
        ensure(t.pretty() == "2π1 ⊕ π2 ⊕ 0", || {
            format!("C{n}: {}", t.pretty())
        })?;
        let d = weyl_dim(&c, &Weight::fundamental(n, 2, 1)).map_err(|e| e.to_string())?;
        let n = n as u128;
        ensure(d == (2 * n + 1) * (n - 1), || {
            format!("dim π2 of C{n} is {d}")
        })?;
    }
    for n in 3..=5usize {
        let a = rd(&format!("A{}", n - 1))?;
        let s = sym2_decompose(&a, &Weight::fundamental(n - 1, 1, 1)).map_err(|e| e.to_string())?;
        ensure(s.terms.len() == 1, || format!("A{}: {}", n - 1, s.pretty()))?;
    }
    Ok("G2, B3, B4, C2..C4, A2..A4 as expected".into())
}

fn real_types() -> Outcome {
    use RealType::*;
    let cases: [(&str, &str, RealType); 8] = [
        ("C3", "1,0,0", Quaternionic),
        ("C3", "0,1,0", Real),
        ("C3", "0,0,1", Quaternionic),
        ("G2", "1,0", Real),
        ("G2", "2,0", Real),
        ("B3", "0,0,1", Real),
        ("B4", "0,0,0,1", Real),
        ("A2", "1,0", Complex),
    ];
    for (t, w, want) in cases {
        let rd = RootDatum::new(t).map_err(|e| e.to_string())?;
        let got = real_type(&rd, &weight(w)).map_err(|e| e.to_string())?;
        ensure(got == want, || {
            format!("{t} ({w}): expected {want}, got {got}")
        })?;
    }
    Ok(format!("{} cases", cases.len()))
}

fn catalog_verification() -> Outcome {
    let report = verify_catalog(&Catalog::builtin());
    let failures: Vec<_> = report
        .failures()
        .map(|c| format!("{} {}", c.name, c.subject))
        .collect();
    ensure(failures.is_empty(), || failures.join(", "))?;
    for (id, want) in [
        (
            "sphere-transitive/spin9",
            "dim K = 36, dim K_x = 21, dim X = 15",
        ),
        (
            "sphere-transitive/spin7",
            "dim K = 21, dim K_x = 14, dim X = 7",
        ),
        ("sphere-transitive/g2", "dim K = 14, dim K_x = 8, dim X = 6"),
    ] {
        let c = report
            .checks
            .iter()
            .find(|c| c.name == "orbit-dimension" && c.subject == id);
        ensure(c.is_some_and(|c| c.pass && c.detail == want), || {
            format!("{id}: {c:?}")
        })?;
    }
    Ok(format!(
        "{} checks over {} entries",
        report.checks.len(),
        report.entries
    ))
}

fn probes() -> Outcome {
    let catalog = Catalog::builtin();
    let mut runs = 0;
    for e in catalog.entries().filter(|e| e.probe.is_some()) {
        let values: &[f64] = if e.id.ends_with("spiral") {
            &[-2.0, 0.0, 1.0, 3.5]
        } else {
            &[0.0]
        };
        for &a in values {
            let a = SpiralParameter::new(a).map_err(|e| e.to_string())?;
            let r = sharply_transitive_probe(e, a, 1000, 1e-9, 0).map_err(|e| e.to_string())?;
            ensure(r.pass, || format!("{r:?}"))?;
            runs += 1;
        }
    }
    ensure(runs == 7, || format!("{runs} probe runs"))?;
    for a in [-2.0, 0.0, 1.0, 3.5] {
        for k in -20..=20 {
            let (s, t) = (k as f64 * 0.17, 1.3 - k as f64 * 0.11);
            let lhs = spiral_element(a, s) * spiral_element(a, t);
            let rhs = spiral_element(a, s + t);
            ensure((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0), || {
                format!("a={a} s={s} t={t}")
            })?;
        }
    }
    Ok(format!("{runs} probe runs, subgroup law holds"))
}

const DETERMINISM_RUNS: &[&[&str]] = &[
    &["classify", "--max-rank", "8", "--max-dihedral", "12"],
    &[
        "double-cosets",
        "--type",
        r#"{"nodes": 4, "bonds": [[1, 2, 3], [2, 3, 3], [2, 4, 3]]}"#,
        "--node",
        "1",
    ],
    &["double-cosets", "--type", "B3", "--node", "2"],
    &["building", "--rank", "2", "--q", "3"],
    &[
        "decompose",
        "--type",
        "B4",
        "--op",
        "sym2",
        "--weight",
        "0,0,0,1",
    ],
    &[
        "decompose",
        "--type",
        "C3",
        "--op",
        "realtype",
        "--weight",
        "1,0,0",
    ],
    &["catalog", "verify"],
    &[
        "catalog", "probe", "--a", "-2", "--a", "0", "--a", "1", "--a", "3.5",
    ],
];

fn determinism() -> Outcome {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_twotrans"))
            .args(args)
            .args(["--format", "json", "--seed", "17"])
            .output()
            .map_err(|e| e.to_string())
    };
    let mut bytes = 0;
    for args in DETERMINISM_RUNS {
        let (a, b) = (run(args)?, run(args)?);
        ensure(a.status.success(), || {
            format!("{args:?} exited {:?}", a.status.code())
        })?;
        ensure(a.stdout == b.stdout, || {
            format!("{args:?} differs between runs")
        })?;
        bytes += a.stdout.len();
    }
    Ok(format!(
        "{} commands, {bytes} bytes identical",
        DETERMINISM_RUNS.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "classification sweep",
            classification_sweep,
            Duration::from_secs(60),
        ),
        ("witness words", witness_words, Duration::from_secs(1)),
        (
            "brute-force oracle",
            brute_force_oracle,
            Duration::from_secs(30),
        ),
        ("building checks", buildings, Duration::from_secs(120)),
        (
            "representation decompositions",
            decompositions,
            Duration::from_secs(10),
        ),
        ("real-type suite", real_types, Duration::MAX),
        (
            "catalog verification",
            catalog_verification,
            Duration::from_secs(5),
        ),
        ("sharply transitive probes", probes, Duration::from_secs(5)),
        ("determinism", determinism, Duration::MAX),
    ];
    let mut failed = 0;
    for (k, (name, f, bound)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(_) if elapsed > bound => ("FAIL", format!("took longer than {bound:?}")),
            Ok(detail) => ("PASS", detail),
            Err(detail) => ("FAIL", detail),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} {} {name} ({:.2}s): {detail}",
            k + 1,
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
