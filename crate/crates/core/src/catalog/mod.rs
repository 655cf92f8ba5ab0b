//! The classification tables of 2-transitive and related transitive actions
//! as versioned JSON documents, with queries and arithmetic cross-checks
//! against the representation engine.

mod expr;
mod spiral;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rep::RepError;

pub use expr::{Affine, DimensionOracle, Factor};
pub use spiral::{
    check_factorization, sharply_transitive_probe, spiral_element, ProbeKind, ProbeReport,
    Quaternion, SpiralParameter,
};

pub const SCHEMA_VERSION: u32 = 1;

/// How many members of each infinite family the verifier instantiates.
pub const FAMILY_SAMPLES: i64 = 8;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("document {document}: {message}")]
    Parse { document: String, message: String },
    #[error("unsupported schema version {found} in {document} (expected {SCHEMA_VERSION})")]
    Version { document: String, found: u32 },
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("unknown entry {0:?}")]
    UnknownEntry(String),
    #[error("expression {expr:?}: {message}")]
    Expression { expr: String, message: String },
    #[error("entry {0} has no probe")]
    NotProbeable(String),
    #[error("{0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    SphereTransitive,
    ProjTransitive,
    LinearTransitive,
    SharplyTransitive,
    ComplexStructureMarked,
}

impl std::str::FromStr for Flag {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.replace('-', "_")))
            .map_err(|_| CatalogError::InvalidParameter(format!("unknown flag {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Sphere,
    Projective,
    Vector,
}

impl std::str::FromStr for SpaceKind {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sphere" => Ok(SpaceKind::Sphere),
            "projective" => Ok(SpaceKind::Projective),
            "vector" => Ok(SpaceKind::Vector),
            _ => Err(CatalogError::InvalidParameter(format!(
                "unknown space kind {s:?}"
            ))),
        }
    }
}

/// The homogeneous space acted on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Space {
    pub kind: SpaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub label: String,
    /// Real manifold dimension.
    pub dim: String,
    /// Rank of a projective space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

/// A one-parameter family `param >= min` (and `<= max`, and of a parity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family {
    pub param: String,
    pub min: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
}

impl Family {
    pub fn contains(&self, x: i64) -> bool {
        x >= self.min
            && self.max.is_none_or(|m| x <= m)
            && match self.parity {
                Some(Parity::Odd) => x.rem_euclid(2) == 1,
                Some(Parity::Even) => x.rem_euclid(2) == 0,
                None => true,
            }
    }

    /// The first `count` members.
    pub fn sample(&self, count: i64) -> Vec<i64> {
        (self.min..)
            .filter(|&x| self.contains(x))
            .take_while(|&x| self.max.is_none_or(|m| x <= m))
            .take(count as usize)
            .collect()
    }
}

/// A group given by name and compact Lie algebra factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedGroup {
    pub name: String,
    pub lie_algebra: Vec<String>,
}

/// `Ĝ ⊇ G°` with `|Ĝ/G°| = index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Extension {
    pub group: String,
    pub index: u32,
}

/// One row of a classification table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    /// `table/row`, unique across the catalog.
    pub id: String,
    #[serde(default)]
    pub table: String,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    pub space: Space,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector_space: Option<String>,
    /// Real dimension of the ambient vector space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    /// Compact real form (`c:` factors are complex groups).
    pub lie_algebra: Vec<String>,
    pub compact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_rank: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<NamedGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<Extension>,
    /// Normalizer quotient.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<String>,
    /// The groups with this derived group, for the linear tables.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<NamedGroup>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<Flag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sphere_entry: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub same_as: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CatalogEntry {
    pub fn has_flag(&self, f: Flag) -> bool {
        self.flags.contains(&f)
    }

    /// Parameter values to instantiate: the family sample, or `[None]`.
    pub fn instances(&self, count: i64) -> Vec<Option<i64>> {
        match &self.family {
            Some(f) => f.sample(count).into_iter().map(Some).collect(),
            None => vec![None],
        }
    }

    fn matches_value(&self, expr: Option<&str>, target: i64, expand: bool) -> bool {
        let Some(e) = expr.and_then(|e| Affine::parse(e).ok()) else {
            return false;
        };
        if e.is_constant() {
            return e.offset == target;
        }
        match (&self.family, expand) {
            (Some(f), true) => e.solve(target).is_some_and(|x| f.contains(x)),
            _ => false,
        }
    }
}

/// One side of an isomorphism or inclusion: a named group, or a table
/// entry at a parameter value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Entry {
        entry: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<serde_json::Value>,
    },
    Named(NamedGroup),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inclusion {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    /// Increasing chain `G_0 ≤ G_1 ≤ …`.
    pub chain: Vec<GroupRef>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub table: String,
    pub version: u32,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub title: String,
    pub entries: Vec<CatalogEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub isomorphisms: Vec<Vec<GroupRef>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inclusions: Vec<Inclusion>,
}

/// One branch of the compact / noncompact dichotomy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationCase {
    pub case: String,
    pub structure: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_rank: Option<String>,
    pub space_kind: SpaceKind,
    pub tables: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationDocument {
    pub version: u32,
    pub cases: Vec<ClassificationCase>,
}

const BUILTIN_TABLES: [(&str, &str); 9] = [
    (
        "compact_rank_one.json",
        include_str!("../../data/compact_rank_one.json"),
    ),
    (
        "compact_higher_rank.json",
        include_str!("../../data/compact_higher_rank.json"),
    ),
    (
        "sphere_transitive.json",
        include_str!("../../data/sphere_transitive.json"),
    ),
    (
        "projective_transitive.json",
        include_str!("../../data/projective_transitive.json"),
    ),
    (
        "linear_transitive_compact.json",
        include_str!("../../data/linear_transitive_compact.json"),
    ),
    (
        "linear_transitive_noncompact.json",
        include_str!("../../data/linear_transitive_noncompact.json"),
    ),
    (
        "linear_transitive_low.json",
        include_str!("../../data/linear_transitive_low.json"),
    ),
    (
        "sharply_transitive.json",
        include_str!("../../data/sharply_transitive.json"),
    ),
    (
        "moufang_normalizer.json",
        include_str!("../../data/moufang_normalizer.json"),
    ),
];

const BUILTIN_CLASSIFICATION: &str = include_str!("../../data/classification.json");

/// Row counts of the published tables.
pub const EXPECTED_ROWS: [(&str, usize); 9] = [
    ("compact-rank-one", 4),
    ("compact-higher-rank", 5),
    ("sphere-transitive", 9),
    ("projective-transitive", 16),
    ("linear-transitive-compact", 7),
    ("linear-transitive-noncompact", 7),
    ("linear-transitive-low", 3),
    ("sharply-transitive", 4),
    ("moufang-normalizer", 4),
];

/// Filters for [`Catalog::lookup`]; unset fields match everything.
///
/// Dimension filters match rows whose value is a literal number; families
/// like `SO(n)` only match when `expand_families` is set.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub table: Option<String>,
    /// Ambient vector space dimension.
    pub m: Option<i64>,
    /// Dimension of the space acted on.
    pub space_dim: Option<i64>,
    pub space_kind: Option<SpaceKind>,
    pub flag: Option<Flag>,
    /// Case-insensitive substring of the group name.
    pub group: Option<String>,
    #[serde(default)]
    pub expand_families: bool,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    tables: Vec<TableDocument>,
    classification: ClassificationDocument,
}

impl Catalog {
    /// The tables shipped with the library.
    pub fn builtin() -> Self {
        Self::from_sources(&BUILTIN_TABLES, BUILTIN_CLASSIFICATION)
            .expect("builtin catalog is valid")
    }

    /// Parses `(name, json)` table documents and a classification document.
    pub fn from_sources(
        tables: &[(&str, &str)],
        classification: &str,
    ) -> Result<Self, CatalogError> {
        let mut docs = Vec::new();
        for (name, src) in tables {
            let mut doc: TableDocument =
                serde_json::from_str(src).map_err(|e| CatalogError::Parse {
                    document: name.to_string(),
                    message: e.to_string(),
                })?;
            if doc.version != SCHEMA_VERSION {
                return Err(CatalogError::Version {
                    document: name.to_string(),
                    found: doc.version,
                });
            }
            for e in &mut doc.entries {
                e.table = doc.table.clone();
                e.id = format!("{}/{}", doc.table, e.id);
            }
            docs.push(doc);
        }
        let classification: ClassificationDocument =
            serde_json::from_str(classification).map_err(|e| CatalogError::Parse {
                document: "classification".into(),
                message: e.to_string(),
            })?;
        if classification.version != SCHEMA_VERSION {
            return Err(CatalogError::Version {
                document: "classification".into(),
                found: classification.version,
            });
        }
        Ok(Catalog {
            tables: docs,
            classification,
        })
    }

    pub fn tables(&self) -> &[TableDocument] {
        &self.tables
    }

    pub fn classification(&self) -> &ClassificationDocument {
        &self.classification
    }

    /// Resolves a table id or alias, case-insensitively.
    pub fn table(&self, name: &str) -> Result<&TableDocument, CatalogError> {
        self.tables
            .iter()
            .find(|t| {
                t.table.eq_ignore_ascii_case(name)
                    || t.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
            })
            .ok_or_else(|| CatalogError::UnknownTable(name.to_string()))
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.tables.iter().flat_map(|t| &t.entries)
    }

    pub fn entry(&self, id: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries()
            .find(|e| e.id == id)
            .ok_or_else(|| CatalogError::UnknownEntry(id.to_string()))
    }

    pub fn lookup(&self, q: &Query) -> Result<Vec<&CatalogEntry>, CatalogError> {
        let table = q
            .table
            .as_deref()
            .map(|t| self.table(t))
            .transpose()?
            .map(|t| t.table.as_str());
        let group = q.group.as_ref().map(|g| g.to_lowercase());
        Ok(self
            .entries()
            .filter(|e| table.is_none_or(|t| e.table == t))
            .filter(|e| {
                q.m.is_none_or(|m| e.matches_value(e.m.as_deref(), m, q.expand_families))
            })
            .filter(|e| {
                q.space_dim
                    .is_none_or(|d| e.matches_value(Some(&e.space.dim), d, q.expand_families))
            })
            .filter(|e| q.space_kind.is_none_or(|k| e.space.kind == k))
            .filter(|e| q.flag.is_none_or(|f| e.has_flag(f)))
            .filter(|e| {
                group
                    .as_ref()
                    .is_none_or(|g| e.group.to_lowercase().contains(g.as_str()))
            })
            .collect())
    }

    /// Real dimension of `entry` at parameter value `x`.
    pub fn group_dimension(
        &self,
        entry: &CatalogEntry,
        x: Option<i64>,
    ) -> Result<u64, CatalogError> {
        DimensionOracle::default().dimension(&entry.lie_algebra, x)
    }

    fn resolve(
        &self,
        r: &GroupRef,
        family_value: Option<i64>,
        oracle: &mut DimensionOracle,
    ) -> Result<Resolved, CatalogError> {
        match r {
            GroupRef::Named(g) => Ok(Resolved {
                name: g.name.clone(),
                dim: oracle.dimension(&g.lie_algebra, family_value)?,
                m: None,
            }),
            GroupRef::Entry { entry, value } => {
                let e = self.entry(entry)?;
                let x = match value {
                    None => None,
                    Some(serde_json::Value::Number(n)) => n.as_i64(),
                    Some(serde_json::Value::String(s)) => {
                        Some(Affine::parse(s)?.eval(family_value)?)
                    }
                    Some(v) => {
                        return Err(CatalogError::Expression {
                            expr: v.to_string(),
                            message: "bad value".into(),
                        })
                    }
                };
                match (&e.family, x) {
                    (Some(f), Some(x)) if f.contains(x) => {}
                    (None, None) => {}
                    _ => {
                        return Err(CatalogError::Expression {
                            expr: format!("{entry} at {x:?}"),
                            message: "value outside the family".into(),
                        })
                    }
                }
                let m =
                    e.m.as_deref()
                        .map(|m| Affine::parse(m)?.eval(x))
                        .transpose()?;
                let name = match x {
                    Some(x) => format!(
                        "{}[{}={x}]",
                        e.group,
                        e.family.as_ref().map_or("", |f| f.param.as_str())
                    ),
                    None => e.group.clone(),
                };
                Ok(Resolved {
                    name,
                    dim: oracle.dimension(&e.lie_algebra, x)?,
                    m,
                })
            }
        }
    }
}

struct Resolved {
    name: String,
    dim: u64,
    m: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogCheck {
    pub name: String,
    pub subject: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub entries: usize,
    pub rows: BTreeMap<String, usize>,
    /// Adjoint dimensions of the simple types used, from the weight engine.
    pub adjoint_dimensions: BTreeMap<String, u64>,
    pub checks: Vec<CatalogCheck>,
}

impl CatalogReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CatalogCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Checker<'a> {
    catalog: &'a Catalog,
    oracle: DimensionOracle,
    checks: Vec<CatalogCheck>,
}

impl Checker<'_> {
    fn push(&mut self, name: &str, subject: &str, pass: bool, detail: String) {
        self.checks.push(CatalogCheck {
            name: name.into(),
            subject: subject.into(),
            pass,
            detail,
        });
    }

    fn record(&mut self, name: &str, subject: &str, r: Result<(bool, String), CatalogError>) {
        match r {
            Ok((pass, detail)) => self.push(name, subject, pass, detail),
            Err(e) => self.push(name, subject, false, e.to_string()),
        }
    }

    fn eval(expr: Option<&str>, x: Option<i64>) -> Result<Option<i64>, CatalogError> {
        expr.map(|e| Affine::parse(e)?.eval(x)).transpose()
    }

    fn entry(&mut self, e: &CatalogEntry) {
        let instances = e.instances(FAMILY_SAMPLES);
        self.push(
            "family-nonempty",
            &e.id,
            !instances.is_empty(),
            format!("{} instances", instances.len()),
        );
        for x in instances {
            let subject = match x {
                Some(x) => format!("{}@{x}", e.id),
                None => e.id.clone(),
            };
            let dim = self.oracle.dimension(&e.lie_algebra, x);
            let m = Self::eval(e.m.as_deref(), x);
            let space_dim = Self::eval(Some(&e.space.dim), x);
            let (dim, m, space_dim) = match (dim, m, space_dim) {
                (Ok(d), Ok(m), Ok(s)) => (d, m, s.unwrap_or(0)),
                (d, m, s) => {
                    let err = [d.err(), m.err(), s.err()]
                        .into_iter()
                        .flatten()
                        .next()
                        .unwrap();
                    self.push("expressions", &subject, false, err.to_string());
                    continue;
                }
            };
            match e.space.kind {
                SpaceKind::Sphere if m.is_some() => {
                    let m = m.unwrap();
                    self.push(
                        "sphere-dimension",
                        &subject,
                        space_dim == m - 1,
                        format!("dim S = {space_dim}, m = {m}"),
                    );
                }
                SpaceKind::Projective if m.is_some() => {
                    let m = m.unwrap();
                    self.push(
                        "projective-dimension",
                        &subject,
                        space_dim == m - 1,
                        format!("dim P = {space_dim}, m = {m}"),
                    );
                }
                SpaceKind::Vector => {
                    self.push(
                        "vector-dimension",
                        &subject,
                        Some(space_dim) == m,
                        format!("dim V = {space_dim}, m = {m:?}"),
                    );
                }
                _ => {}
            }
            if let Some(stab) = &e.stabilizer {
                let r = self.oracle.dimension(&stab.lie_algebra, x).map(|s| {
                    (
                        dim as i64 - s as i64 == space_dim,
                        format!("dim K = {dim}, dim K_x = {s}, dim X = {space_dim}"),
                    )
                });
                self.record("orbit-dimension", &subject, r);
            }
            if e.has_flag(Flag::ProjTransitive) {
                self.push(
                    "projective-orbit-bound",
                    &subject,
                    dim as i64 >= space_dim,
                    format!("dim L = {dim} >= dim P = {space_dim}"),
                );
            }
            if e.has_flag(Flag::LinearTransitive) {
                let m = m.unwrap_or(0);
                let groups: Vec<NamedGroup> = if e.groups.is_empty() {
                    vec![NamedGroup {
                        name: e.group.clone(),
                        lie_algebra: e.lie_algebra.clone(),
                    }]
                } else {
                    e.groups.clone()
                };
                for g in groups {
                    let r = self
                        .oracle
                        .dimension(&g.lie_algebra, x)
                        .map(|d| (d as i64 >= m, format!("dim {} = {d} >= m = {m}", g.name)));
                    self.record("linear-orbit-bound", &subject, r);
                }
            }
            if e.has_flag(Flag::SharplyTransitive) {
                self.push(
                    "regular-dimension",
                    &subject,
                    m == Some(dim as i64),
                    format!("dim U = {dim}, m = {m:?}"),
                );
            }
        }
        for (name, target) in [("sphere-entry", &e.sphere_entry), ("same-as", &e.same_as)] {
            let Some(target) = target else { continue };
            let r = self.catalog.entry(target).map(|t| {
                let same = t.m == e.m && t.lie_algebra == e.lie_algebra;
                (same, format!("{} ~ {}", e.id, t.id))
            });
            self.record(name, &e.id, r);
        }
    }

    fn table(&mut self, t: &TableDocument) {
        for (k, iso) in t.isomorphisms.iter().enumerate() {
            let subject = format!("{}#iso{k}", t.table);
            let r: Result<(bool, String), CatalogError> = (|| {
                let sides = iso
                    .iter()
                    .map(|r| self.catalog.resolve(r, None, &mut self.oracle))
                    .collect::<Result<Vec<_>, _>>()?;
                let pass = sides.len() >= 2 && sides.windows(2).all(|w| w[0].dim == w[1].dim);
                let detail = sides
                    .iter()
                    .map(|s| format!("{} ({})", s.name, s.dim))
                    .collect::<Vec<_>>()
                    .join(" ≅ ");
                Ok((pass, detail))
            })();
            self.record("isomorphism-dimension", &subject, r);
        }
        for (k, inc) in t.inclusions.iter().enumerate() {
            let values: Vec<Option<i64>> = match &inc.family {
                Some(f) => f.sample(FAMILY_SAMPLES).into_iter().map(Some).collect(),
                None => vec![None],
            };
            for v in values {
                let subject = match v {
                    Some(v) => format!("{}#inc{k}@{v}", t.table),
                    None => format!("{}#inc{k}", t.table),
                };
                let r: Result<(bool, String), CatalogError> = (|| {
                    let chain = inc
                        .chain
                        .iter()
                        .map(|r| self.catalog.resolve(r, v, &mut self.oracle))
                        .collect::<Result<Vec<_>, _>>()?;
                    let monotone = chain
                        .windows(2)
                        .all(|w| w[0].dim <= w[1].dim && w[0].m == w[1].m);
                    let detail = chain
                        .iter()
                        .map(|s| format!("{} ({})", s.name, s.dim))
                        .collect::<Vec<_>>()
                        .join(" ≤ ");
                    Ok((monotone && chain.len() >= 2, detail))
                })();
                self.record("inclusion-monotone", &subject, r);
            }
        }
    }

    fn classification(&mut self) {
        for case in &self.catalog.classification.cases {
            for name in &case.tables {
                let subject = format!("{}:{name}", case.case);
                let Ok(t) = self.catalog.table(name) else {
                    self.push(
                        "classification-table",
                        &subject,
                        false,
                        format!("unknown table {name}"),
                    );
                    continue;
                };
                let bad: Vec<&str> = t
                    .entries
                    .iter()
                    .filter(|e| {
                        e.space.kind != case.space_kind
                            || !rank_matches(e, case.real_rank.as_deref())
                    })
                    .map(|e| e.id.as_str())
                    .collect();
                self.push(
                    "classification-table",
                    &subject,
                    bad.is_empty(),
                    if bad.is_empty() {
                        format!("{} rows", t.entries.len())
                    } else {
                        format!("mismatched {bad:?}")
                    },
                );
            }
        }
    }
}

/// Real rank against the case: `"1"`, or `">=2"` with rank equal to the
/// projective rank.
fn rank_matches(e: &CatalogEntry, wanted: Option<&str>) -> bool {
    let Some(wanted) = wanted else { return true };
    e.instances(FAMILY_SAMPLES).into_iter().all(|x| {
        let rank = e
            .real_rank
            .as_deref()
            .map(|r| Affine::parse(r).and_then(|a| a.eval(x)));
        let proj = e
            .space
            .rank
            .as_deref()
            .map(|r| Affine::parse(r).and_then(|a| a.eval(x)));
        match (wanted, rank) {
            ("1", Some(Ok(1))) => true,
            (">=2", Some(Ok(r))) => r >= 2 && matches!(proj, Some(Ok(p)) if p == r),
            _ => false,
        }
    })
}

/// Structural and arithmetic consistency of the whole catalog.
pub fn verify_catalog(catalog: &Catalog) -> CatalogReport {
    let mut c = Checker {
        catalog,
        oracle: DimensionOracle::default(),
        checks: Vec::new(),
    };
    let mut rows = BTreeMap::new();
    for t in &catalog.tables {
        rows.insert(t.table.clone(), t.entries.len());
    }
    for (table, want) in EXPECTED_ROWS {
        let got = rows.get(table).copied();
        c.push(
            "row-count",
            table,
            got == Some(want),
            format!("{got:?} rows, expected {want}"),
        );
    }
    let mut ids: Vec<&str> = catalog.entries().map(|e| e.id.as_str()).collect();
    ids.sort_unstable();
    let dup: Vec<&str> = ids
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0])
        .collect();
    c.push(
        "unique-ids",
        "catalog",
        dup.is_empty(),
        format!("duplicates {dup:?}"),
    );
    for e in catalog.entries() {
        c.entry(e);
    }
    for t in &catalog.tables {
        c.table(t);
    }
    c.classification();
    let adjoint_dimensions: BTreeMap<String, u64> = c.oracle.seen().into_iter().collect();
    for (name, d) in &adjoint_dimensions {
        let r = crate::rep::RootDatum::new(name)
            .map(|rd| {
                (
                    rd.group_dimension() as u64 == *d,
                    format!("weyl = {d}, rank + 2|Φ+| = {}", rd.group_dimension()),
                )
            })
            .map_err(CatalogError::from);
        c.record("adjoint-dimension", name, r);
    }
    CatalogReport {
        entries: ids.len(),
        rows,
        adjoint_dimensions,
        checks: c.checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&CatalogEntry]) -> Vec<String> {
        v.iter().map(|e| e.group.clone()).collect()
    }

    #[test]
    fn builtin_catalog_verifies() {
        let report = verify_catalog(&Catalog::builtin());
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert_eq!(report.adjoint_dimensions["B4"], 36);
        assert_eq!(report.adjoint_dimensions["G2"], 14);
    }

    #[test]
    fn literal_lookups() {
        let c = Catalog::builtin();
        let q = Query {
            flag: Some(Flag::SphereTransitive),
            m: Some(16),
            ..Default::default()
        };
        assert_eq!(names(&c.lookup(&q).unwrap()), ["Spin(9)"]);
        let q = Query {
            table: Some("Sh2Trs".into()),
            ..Default::default()
        };
        assert_eq!(
            names(&c.lookup(&q).unwrap()),
            ["R*", "C*", "H*", "Sp(1)·S_a"]
        );
        let q = Query {
            table: Some("CompactClass-a".into()),
            space_dim: Some(15),
            ..Default::default()
        };
        assert_eq!(names(&c.lookup(&q).unwrap()), ["F_{4(-20)}"]);
    }

    #[test]
    fn expanded_lookup_includes_families() {
        let c = Catalog::builtin();
        let q = Query {
            flag: Some(Flag::SphereTransitive),
            m: Some(16),
            expand_families: true,
            ..Default::default()
        };
        let got = names(&c.lookup(&q).unwrap());
        for g in [
            "SO(n)",
            "SU(n)",
            "U(n)",
            "Sp(n)",
            "Sp(n)·U(1)",
            "Sp(n)·Sp(1)",
            "Spin(9)",
        ] {
            assert!(got.contains(&g.to_string()), "{g} in {got:?}");
        }
        assert!(!got.contains(&"Spin(7)".to_string()));
    }

    #[test]
    fn unknown_table_is_an_error() {
        let q = Query {
            table: Some("nope".into()),
            ..Default::default()
        };
        assert!(matches!(
            Catalog::builtin().lookup(&q),
            Err(CatalogError::UnknownTable(_))
        ));
    }

    #[test]
    fn broken_row_is_reported() {
        let mut doc: serde_json::Value = serde_json::from_str(BUILTIN_TABLES[2].1).unwrap();
        doc["entries"][8]["stabilizer"]["lie_algebra"] = serde_json::json!(["so(8)"]);
        let src = doc.to_string();
        let mut tables = BUILTIN_TABLES.to_vec();
        tables[2].1 = &src;
        let c = Catalog::from_sources(&tables, BUILTIN_CLASSIFICATION).unwrap();
        let report = verify_catalog(&c);
        assert!(report
            .failures()
            .any(|f| f.name == "orbit-dimension" && f.subject == "sphere-transitive/spin9"));
    }

    #[test]
    fn probes_pass() {
        let c = Catalog::builtin();
        for e in c.entries().filter(|e| e.probe.is_some()) {
            for a in [-2.0, 0.0, 1.0, 3.5] {
                let r = sharply_transitive_probe(e, SpiralParameter::new(a).unwrap(), 200, 1e-9, 7)
                    .unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
    }
}
