use std::f64::consts::LN_2;
use std::fs;
use std::path::PathBuf;

use serde_json::Value;
use twotrans::catalog::{
    check_factorization, sharply_transitive_probe, spiral_element, verify_catalog, Catalog,
    CatalogError, Flag, ProbeKind, Quaternion, Query, SpiralParameter, EXPECTED_ROWS,
};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn load(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(&path).unwrap())
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn shipped_documents_match_their_schemas() {
    let table =
        jsonschema::validator_for(&load(data_dir().join("schema/table.schema.json"))).unwrap();
    let dichotomy =
        jsonschema::validator_for(&load(data_dir().join("schema/classification.schema.json")))
            .unwrap();
    let mut seen = 0;
    for entry in fs::read_dir(data_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "json") {
            continue;
        }
        let doc = load(path.clone());
        let v = if path.ends_with("classification.json") {
            &dichotomy
        } else {
            &table
        };
        let errors: Vec<String> = v
            .iter_errors(&doc)
            .map(|e| format!("{} at {}", e, e.instance_path()))
            .collect();
        assert!(errors.is_empty(), "{}: {errors:#?}", path.display());
        seen += 1;
    }
    assert_eq!(seen, EXPECTED_ROWS.len() + 1);
}

#[test]
fn schema_rejects_malformed_rows() {
    let v = jsonschema::validator_for(&load(data_dir().join("schema/table.schema.json"))).unwrap();
    let mut doc = load(data_dir().join("sphere_transitive.json"));
    doc["entries"][0]["m"] = Value::String("n*2".into());
    assert!(!v.is_valid(&doc));
    let mut doc = load(data_dir().join("sphere_transitive.json"));
    doc["entries"][0]["colour"] = Value::String("red".into());
    assert!(!v.is_valid(&doc));
}

#[test]
fn verification_passes_with_expected_dimensions() {
    let report = verify_catalog(&Catalog::builtin());
    assert!(
        report.pass(),
        "{:#?}",
        report.failures().collect::<Vec<_>>()
    );
    for (name, dim) in [("B4", 36), ("B3", 21), ("G2", 14), ("A3", 15), ("C2", 10)] {
        assert_eq!(report.adjoint_dimensions[name], dim, "{name}");
    }
    for (table, rows) in EXPECTED_ROWS {
        assert_eq!(report.rows[table], rows, "{table}");
    }
    let orbit = |subject: &str| {
        report
            .checks
            .iter()
            .find(|c| c.name == "orbit-dimension" && c.subject == subject)
            .unwrap()
            .detail
            .clone()
    };
    assert_eq!(
        orbit("sphere-transitive/spin9"),
        "dim K = 36, dim K_x = 21, dim X = 15"
    );
    assert_eq!(
        orbit("sphere-transitive/spin7"),
        "dim K = 21, dim K_x = 14, dim X = 7"
    );
    assert_eq!(
        orbit("sphere-transitive/g2"),
        "dim K = 14, dim K_x = 8, dim X = 6"
    );
}

#[test]
fn complex_structure_filter() {
    let c = Catalog::builtin();
    let q = Query {
        flag: Some(Flag::ComplexStructureMarked),
        ..Default::default()
    };
    let groups: Vec<&str> = c
        .lookup(&q)
        .unwrap()
        .iter()
        .map(|e| e.group.as_str())
        .collect();
    assert_eq!(
        groups,
        ["SU(n)", "Sp(n)", "SL_nC", "SL_nH", "Sp_{2n}C", "1"]
    );
}

#[test]
fn lookup_by_table_alias_and_space() {
    let c = Catalog::builtin();
    let q = Query {
        table: Some("TrsSphere".into()),
        ..Default::default()
    };
    assert_eq!(c.lookup(&q).unwrap().len(), 9);
    let q = Query {
        table: Some("projective-transitive".into()),
        m: Some(16),
        ..Default::default()
    };
    let groups: Vec<&str> = c
        .lookup(&q)
        .unwrap()
        .iter()
        .map(|e| e.group.as_str())
        .collect();
    assert_eq!(groups, ["Spin(9)", "Spin_{9,1}R"]);
    let q = Query {
        table: Some("bogus".into()),
        ..Default::default()
    };
    assert!(matches!(c.lookup(&q), Err(CatalogError::UnknownTable(_))));
}

#[test]
fn spiral_closed_form() {
    for a in [-2.0, 0.5, 3.5] {
        assert!((spiral_element(a, 0.0) - 1.0).norm() < 1e-12);
    }
    let z = spiral_element(0.0, 1.5);
    assert!(z.im.abs() < 1e-12 && (z.re - 1.5f64.exp()).abs() < 1e-12);
    let z = spiral_element(1.0, LN_2);
    assert!((z.re - 2.0 * LN_2.cos()).abs() < 1e-12);
    assert!((z.im - 2.0 * LN_2.sin()).abs() < 1e-12);
    assert_eq!(SpiralParameter::new(1.0).unwrap().element(LN_2), z);
    assert!(SpiralParameter::new(f64::NAN).is_err());
}

#[test]
fn probes_on_regular_groups() {
    let c = Catalog::builtin();
    let complex = c.entry("sharply-transitive/complex").unwrap();
    let r = sharply_transitive_probe(complex, SpiralParameter::new(0.0).unwrap(), 1000, 1e-9, 1)
        .unwrap();
    assert!(r.pass);
    let spiral = c.entry("sharply-transitive/quaternion-spiral").unwrap();
    let r = sharply_transitive_probe(spiral, SpiralParameter::new(1.0).unwrap(), 1000, 1e-9, 1)
        .unwrap();
    assert!(r.pass && r.unique);
    let not_regular = c.entry("sphere-transitive/spin9").unwrap();
    assert!(matches!(
        sharply_transitive_probe(not_regular, SpiralParameter::new(1.0).unwrap(), 10, 1e-9, 1),
        Err(CatalogError::NotProbeable(_))
    ));
}

#[test]
fn second_factorization_is_rejected() {
    let v = Quaternion::new(1.5, -0.25, 2.0, 0.75);
    let t = v.norm().ln();
    let h = check_factorization(ProbeKind::Quaternion, v, t, 0.0, 1e-9).unwrap();
    assert!((h.norm() - 1.0).abs() < 1e-12);
    for dt in [1e-3, -1e-3, 0.5] {
        assert!(check_factorization(ProbeKind::Quaternion, v, t + dt, 0.0, 1e-9).is_none());
    }
}
