//! Subcommand bodies. Each returns a JSON document, optional per-line
//! records, a text rendering and whether every check passed.

use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};
use twotrans::building::{
    check_projective_axioms, check_structure, check_two_transitive_points, Building,
};
use twotrans::catalog::{
    sharply_transitive_probe, verify_catalog, Catalog, CatalogEntry, ProbeKind, Query,
    SpiralParameter,
};
use twotrans::coset::{
    classify as run_classify, find_violation, DoubleCosetDecomposition, WeightOrbit,
    DEFAULT_ORBIT_LIMIT,
};
use twotrans::coxeter::is_reduced;
use twotrans::rep::{
    alt2_decompose, dual_weight, real_type, sym2_decompose, tensor_decompose, weyl_dim, IrrepSum,
    RootDatum, Weight,
};
use twotrans::CoxeterDiagram;

pub struct Output {
    pub document: Value,
    pub records: Vec<Value>,
    pub text: String,
    pub pass: bool,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn classify(max_rank: usize, max_dihedral: u32, all: bool) -> Result<Output, String> {
    let c = run_classify(max_rank, max_dihedral).map_err(err)?;
    let entries: Vec<_> = c
        .entries
        .iter()
        .filter(|e| all || e.two_transitive || e.degenerate)
        .collect();
    let mut text = String::new();
    for e in &entries {
        let tag = match (e.two_transitive, e.degenerate) {
            (_, true) => "degenerate",
            (true, _) => "2-transitive",
            _ => "",
        };
        let _ = writeln!(
            text,
            "{:<8} node {}  orbit {:>7}  classes {:>3}  {tag}",
            e.diagram, e.node, e.orbit_size, e.class_count
        );
    }
    let records: Vec<Value> = entries.iter().map(to_value).collect();
    Ok(Output {
        document: json!({
            "max_rank": c.max_rank,
            "max_dihedral": c.max_dihedral,
            "all": all,
            "entries": records,
        }),
        records,
        text,
        pass: true,
    })
}

pub fn double_cosets(diagram: &str, node: usize, limit: Option<usize>) -> Result<Output, String> {
    let d = CoxeterDiagram::parse(diagram).map_err(err)?;
    let orbit =
        WeightOrbit::with_limit(&d, node, limit.unwrap_or(DEFAULT_ORBIT_LIMIT)).map_err(err)?;
    let dc = DoubleCosetDecomposition::from(orbit);
    let report = dc.report();
    let mut document = to_value(&report);
    let mut text = format!(
        "{} node {}: orbit {}, {} double cosets{}\n",
        report.diagram,
        report.node,
        report.orbit_size,
        report.class_count,
        if report.two_transitive {
            " (2-transitive)"
        } else {
            ""
        }
    );
    for c in &report.classes {
        let _ = writeln!(
            text,
            "  size {:>7}  length {:>3}  rep {}",
            c.size, c.length, c.representative
        );
    }
    if node == 1 {
        if let Some((case, word)) = find_violation(&d) {
            let reduced = is_reduced(&d, &word).map_err(err)?;
            let class = dc.class_of_word(&word).map_err(err)?;
            let _ = writeln!(
                text,
                "  witness {case}: {word} (reduced: {reduced}, class {class})"
            );
            document["witness"] =
                json!({ "case": case, "word": word, "reduced": reduced, "class": class });
        }
    }
    let records = report.classes.iter().map(to_value).collect();
    Ok(Output {
        document,
        records,
        text,
        pass: true,
    })
}

pub fn building(
    rank: usize,
    q: u32,
    cap: Option<u128>,
    structure: bool,
    points: bool,
    axioms: bool,
) -> Result<Output, String> {
    let b = Building::with_cap(
        rank,
        q,
        cap.unwrap_or(twotrans::building::DEFAULT_CHAMBER_CAP),
    )
    .map_err(err)?;
    let mut reports = Vec::new();
    if structure {
        reports.push(check_structure(&b));
    }
    if points {
        reports.push(check_two_transitive_points(&b).map_err(err)?);
    }
    if axioms {
        reports.push(check_projective_axioms(&b).map_err(err)?);
    }
    let pass = reports.iter().all(|r| r.pass());
    let mut text = format!("{}: {} chambers\n", b.instance(), b.chamber_count());
    let mut records = Vec::new();
    for r in &reports {
        for c in &r.checks {
            let _ = writeln!(
                text,
                "  [{}] {}: {}",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.detail
            );
            records.push(json!({ "instance": r.instance, "name": c.name, "pass": c.pass, "detail": c.detail }));
        }
    }
    Ok(Output {
        document: json!({
            "instance": b.instance(),
            "rank": rank,
            "q": q,
            "chamber_count": b.chamber_count(),
            "reports": to_value(&reports),
            "pass": pass,
        }),
        records,
        text,
        pass,
    })
}

fn irrep_output(rd: &RootDatum, op: &str, weights: Value, sum: IrrepSum) -> Output {
    let text = format!(
        "{} = {}  (dim {})\n",
        op,
        sum.pretty(),
        sum.total_dimension()
    );
    let records = sum.terms.iter().map(to_value).collect();
    Output {
        document: json!({
            "type": rd.name(),
            "op": op,
            "weights": weights,
            "terms": to_value(&sum),
            "total_dimension": sum.total_dimension() as u64,
            "pretty": sum.pretty(),
        }),
        records,
        text,
        pass: true,
    }
}

pub fn decompose(
    root_system: &str,
    op: &str,
    weight: &str,
    weight2: Option<&str>,
    dim_cap: Option<u128>,
) -> Result<Output, String> {
    let mut rd = RootDatum::new(root_system).map_err(err)?;
    if let Some(cap) = dim_cap {
        rd = rd.with_dim_cap(cap);
    }
    let lambda: Weight = weight.parse().map_err(err)?;
    let scalar = |key: &str, value: Value, shown: String| Output {
        document: json!({ "type": rd.name(), "op": op, "weights": [lambda.clone()], key: value }),
        records: vec![],
        text: format!("{op}({}) = {shown}\n", lambda.pretty()),
        pass: true,
    };
    match op {
        "sym2" => Ok(irrep_output(
            &rd,
            op,
            json!([lambda]),
            sym2_decompose(&rd, &lambda).map_err(err)?,
        )),
        "alt2" => Ok(irrep_output(
            &rd,
            op,
            json!([lambda]),
            alt2_decompose(&rd, &lambda).map_err(err)?,
        )),
        "tensor" => {
            let mu: Weight = weight2
                .ok_or("--op tensor requires --weight2")?
                .parse()
                .map_err(err)?;
            let sum = tensor_decompose(&rd, &lambda, &mu).map_err(err)?;
            Ok(irrep_output(&rd, op, json!([lambda, mu]), sum))
        }
        "dim" => {
            let d = weyl_dim(&rd, &lambda).map_err(err)?;
            Ok(scalar("dimension", json!(d as u64), d.to_string()))
        }
        "dual" => {
            let w = dual_weight(&rd, &lambda).map_err(err)?;
            Ok(scalar("dual", to_value(&w), w.pretty()))
        }
        "realtype" => {
            let t = real_type(&rd, &lambda).map_err(err)?;
            Ok(scalar("real_type", to_value(&t), t.to_string()))
        }
        other => Err(format!("unknown op {other}")),
    }
}

fn entry_line(e: &CatalogEntry) -> String {
    format!(
        "{:<44} {:<18} {:<10} m={}\n",
        e.id,
        e.group,
        e.space.label,
        e.m.as_deref().unwrap_or("-")
    )
}

pub fn catalog_lookup(
    table: Option<String>,
    m: Option<i64>,
    space_dim: Option<i64>,
    space_kind: Option<String>,
    flag: Option<String>,
    group: Option<String>,
    expand_families: bool,
) -> Result<Output, String> {
    let query = Query {
        table,
        m,
        space_dim,
        space_kind: space_kind.map(|s| s.parse()).transpose().map_err(err)?,
        flag: flag.map(|s| s.parse()).transpose().map_err(err)?,
        group,
        expand_families,
    };
    let catalog = Catalog::builtin();
    let hits = catalog.lookup(&query).map_err(err)?;
    let records: Vec<Value> = hits.iter().map(to_value).collect();
    Ok(Output {
        document: json!({ "query": to_value(&query), "entries": records }),
        text: hits.iter().map(|e| entry_line(e)).collect(),
        records,
        pass: true,
    })
}

pub fn catalog_verify() -> Result<Output, String> {
    let report = verify_catalog(&Catalog::builtin());
    let pass = report.pass();
    let mut document = to_value(&report);
    document["pass"] = json!(pass);
    let failures: Vec<_> = report.failures().collect();
    let mut text = format!(
        "{} entries, {} checks, {} failures\n",
        report.entries,
        report.checks.len(),
        failures.len()
    );
    for f in failures {
        let _ = writeln!(text, "  FAIL {} {}: {}", f.name, f.subject, f.detail);
    }
    let records = report.checks.iter().map(to_value).collect();
    Ok(Output {
        document,
        records,
        text,
        pass,
    })
}

pub fn catalog_probe(
    entry: Option<&str>,
    a: &[f64],
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<Output, String> {
    let catalog = Catalog::builtin();
    let entries: Vec<&CatalogEntry> = match entry {
        Some(name) => {
            let e = catalog
                .entry(name)
                .ok()
                .or_else(|| {
                    catalog
                        .entries()
                        .find(|e| e.probe.is_some() && e.group == name)
                })
                .ok_or_else(|| format!("no entry {name:?}"))?;
            vec![e]
        }
        None => catalog.entries().filter(|e| e.probe.is_some()).collect(),
    };
    let mut reports = Vec::new();
    for e in entries {
        // only the spiral kind depends on `a`
        let values = if e.probe == Some(ProbeKind::QuaternionSpiral) {
            a
        } else {
            &[0.0][..]
        };
        for &x in values {
            let p = SpiralParameter::new(x).map_err(err)?;
            reports.push(sharply_transitive_probe(e, p, samples, tol, seed).map_err(err)?);
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(
            text,
            "[{}] {} a={} samples={} residual={:.2e} unit={:.2e} unique={}",
            if r.pass { "pass" } else { "FAIL" },
            r.entry,
            r.a,
            r.samples,
            r.max_residual,
            r.max_unit_defect,
            r.unique
        );
    }
    let records: Vec<Value> = reports.iter().map(to_value).collect();
    Ok(Output {
        document: json!({ "seed": seed, "reports": records, "pass": pass }),
        records,
        text,
        pass,
    })
}
