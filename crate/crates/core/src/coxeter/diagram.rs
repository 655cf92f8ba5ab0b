use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{AlgebraicScalar, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unrecognized diagram name `{0}`")]
    UnknownName(String),
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("asymmetric bond: m[{i}][{j}] = {a} but m[{j}][{i}] = {b}")]
    Asymmetric {
        i: usize,
        j: usize,
        a: Bond,
        b: Bond,
    },
    #[error("diagonal entry m[{0}][{0}] must be 1")]
    Diagonal(usize),
    #[error("off-diagonal entry m[{i}][{j}] = {m} is below 2")]
    BondTooSmall { i: usize, j: usize, m: u32 },
    #[error("node {node} is not in 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },
}

/// Bond order `m_ij` between two distinct nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn is_edge(self) -> bool {
        self != Bond::Finite(2)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinite => None,
        }
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => f.write_str("inf"),
        }
    }
}

/// Finite irreducible Coxeter types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H(usize),
    I2(u32),
}

impl FiniteType {
    pub fn order(self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            FiniteType::A(n) => fact(n + 1),
            FiniteType::B(n) => (1u128 << n) * fact(n),
            FiniteType::D(n) => (1u128 << (n - 1)) * fact(n),
            FiniteType::E(6) => 51_840,
            FiniteType::E(7) => 2_903_040,
            FiniteType::E(8) => 696_729_600,
            FiniteType::E(n) => unreachable!("E{n} is not a finite type"),
            FiniteType::F4 => 1152,
            FiniteType::H(3) => 120,
            FiniteType::H(4) => 14_400,
            FiniteType::H(n) => unreachable!("H{n} is not a finite type"),
            FiniteType::I2(m) => 2 * m as u128,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            FiniteType::A(n)
            | FiniteType::B(n)
            | FiniteType::D(n)
            | FiniteType::E(n)
            | FiniteType::H(n) => n,
            FiniteType::F4 => 4,
            FiniteType::I2(_) => 2,
        }
    }

    /// Number of reflections, equal to the length of the longest element.
    pub fn reflection_count(self) -> usize {
        let n = self.rank();
        match self {
            FiniteType::A(_) => n * (n + 1) / 2,
            FiniteType::B(_) => n * n,
            FiniteType::D(_) => n * (n - 1),
            FiniteType::E(6) => 36,
            FiniteType::E(7) => 63,
            FiniteType::E(8) => 120,
            FiniteType::E(_) => unreachable!(),
            FiniteType::F4 => 24,
            FiniteType::H(3) => 15,
            FiniteType::H(4) => 60,
            FiniteType::H(_) => unreachable!(),
            FiniteType::I2(m) => m as usize,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E(n) => write!(f, "E{n}"),
            FiniteType::F4 => f.write_str("F4"),
            FiniteType::H(n) => write!(f, "H{n}"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupOrder {
    Finite(u128),
    Infinite,
}

impl GroupOrder {
    pub fn finite(self) -> Option<u128> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("inf"),
        }
    }
}

/// A Coxeter diagram together with the Cartan data of its geometric
/// representation.
///
/// Nodes are numbered `1..=rank` in the public API. Named crystallographic
/// types carry their integral Cartan matrix (Bourbaki numbering); all other
/// diagrams use the symmetric data `a_ij = -2cos(π/m_ij)`.
#[derive(Clone)]
pub struct CoxeterDiagram {
    name: Option<String>,
    bonds: Vec<Vec<Bond>>,
    /// `cartan[i][j] = ⟨α_i, α_j∨⟩`, so that `α_i = Σ_j cartan[i][j] ω_j`.
    cartan: Vec<Vec<AlgebraicScalar>>,
    integral: Option<Vec<Vec<i64>>>,
}

impl fmt::Debug for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterDiagram({self})")
    }
}

impl fmt::Display for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            return f.write_str(name);
        }
        write!(f, "[{}:", self.rank())?;
        for (i, j, m) in self.edges() {
            write!(f, " {i}-{j}:{m}")?;
        }
        f.write_str("]")
    }
}

impl PartialEq for CoxeterDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.bonds == other.bonds && self.cartan == other.cartan
    }
}

impl Eq for CoxeterDiagram {}

impl CoxeterDiagram {
    /// Builds a diagram from a full bond matrix (0-based rows), validating
    /// symmetry, the unit diagonal and `m_ij ≥ 2` off the diagonal.
    pub fn from_matrix(matrix: Vec<Vec<Bond>>) -> Result<Self, DiagramError> {
        let n = matrix.len();
        if n == 0 {
            return Err(DiagramError::Malformed("diagram has no nodes".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(DiagramError::Malformed(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        for i in 0..n {
            if matrix[i][i] != Bond::Finite(1) {
                return Err(DiagramError::Diagonal(i + 1));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if matrix[i][j] != matrix[j][i] {
                    return Err(DiagramError::Asymmetric {
                        i: i + 1,
                        j: j + 1,
                        a: matrix[i][j],
                        b: matrix[j][i],
                    });
                }
                if let Bond::Finite(m) = matrix[i][j] {
                    if m < 2 {
                        return Err(DiagramError::BondTooSmall {
                            i: i + 1,
                            j: j + 1,
                            m,
                        });
                    }
                }
            }
        }
        let cartan = symmetric_cartan(&matrix);
        let integral = integral_part(&cartan);
        Ok(CoxeterDiagram {
            name: None,
            bonds: matrix,
            cartan,
            integral,
        })
    }

    /// Builds a diagram from a node count and 1-based bond triples; unlisted
    /// pairs default to `m = 2`.
    pub fn from_bonds(nodes: usize, bonds: &[(usize, usize, Bond)]) -> Result<Self, DiagramError> {
        if nodes == 0 {
            return Err(DiagramError::Malformed("diagram has no nodes".into()));
        }
        let mut given: BTreeMap<(usize, usize), Bond> = BTreeMap::new();
        for &(i, j, m) in bonds {
            for node in [i, j] {
                if node == 0 || node > nodes {
                    return Err(DiagramError::NodeOutOfRange { node, rank: nodes });
                }
            }
            if i == j {
                if m != Bond::Finite(1) {
                    return Err(DiagramError::Diagonal(i));
                }
                continue;
            }
            if let Some(&prev) = given.get(&(j, i)) {
                if prev != m {
                    return Err(DiagramError::Asymmetric {
                        i,
                        j,
                        a: m,
                        b: prev,
                    });
                }
            }
            if let Some(&prev) = given.get(&(i, j)) {
                if prev != m {
                    return Err(DiagramError::Malformed(format!(
                        "bond {i}-{j} given twice with different orders"
                    )));
                }
            }
            given.insert((i, j), m);
        }
        let mut matrix = vec![vec![Bond::Finite(2); nodes]; nodes];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = Bond::Finite(1);
        }
        for ((i, j), m) in given {
            matrix[i - 1][j - 1] = m;
            matrix[j - 1][i - 1] = m;
        }
        Self::from_matrix(matrix)
    }

    /// Parses a named type (`A3`, `B4`, `C3`, `D4`, `E6`..`E8`, `F4`, `G2`,
    /// `H3`, `H4`, `I2(m)`, case-insensitive) or a JSON diagram document.
    pub fn parse(spec: &str) -> Result<Self, DiagramError> {
        let trimmed = spec.trim();
        if trimmed.starts_with('{') {
            let doc: DiagramDocument = serde_json::from_str(trimmed)
                .map_err(|e| DiagramError::Malformed(e.to_string()))?;
            return doc.into_diagram();
        }
        Self::named(trimmed)
    }

    pub fn named(name: &str) -> Result<Self, DiagramError> {
        let kind = NamedType::from_str(name)?;
        Ok(kind.diagram())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.bonds.len()
    }

    /// Bond order between 1-based nodes.
    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.bonds[i - 1][j - 1]
    }

    pub fn check_node(&self, node: usize) -> Result<(), DiagramError> {
        if node == 0 || node > self.rank() {
            return Err(DiagramError::NodeOutOfRange {
                node,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// Edges `(i, j, m)` with `i < j` and `m ≥ 3`, 1-based.
    pub fn edges(&self) -> Vec<(usize, usize, Bond)> {
        let n = self.rank();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.bonds[i][j].is_edge() {
                    out.push((i + 1, j + 1, self.bonds[i][j]));
                }
            }
        }
        out
    }

    /// Neighbors of a 1-based node, ascending.
    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        (1..=self.rank())
            .filter(|&j| j != node && self.bond(node, j).is_edge())
            .collect()
    }

    pub fn cartan(&self) -> &[Vec<AlgebraicScalar>] {
        &self.cartan
    }

    /// Integral Cartan matrix, when every entry is a rational integer.
    pub fn integral_cartan(&self) -> Option<&[Vec<i64>]> {
        self.integral.as_deref()
    }

    /// Connected components (edges = bonds with `m ≥ 3`), as sorted 1-based
    /// node lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.components().len() == 1
    }

    /// Finite type of each component, or `None` if some component is
    /// infinite.
    pub fn finite_types(&self) -> Option<Vec<FiniteType>> {
        self.components()
            .iter()
            .map(|c| recognize_component(self, c))
            .collect()
    }

    pub fn group_order(&self) -> GroupOrder {
        match self.finite_types() {
            Some(types) => GroupOrder::Finite(types.iter().map(|t| t.order()).product()),
            None => GroupOrder::Infinite,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite_types().is_some()
    }

    /// Symmetric Gram matrix `B_ij = -cos(π/m_ij)` in floating point.
    pub fn gram_matrix(&self) -> Vec<Vec<f64>> {
        self.bonds
            .iter()
            .map(|row| {
                row.iter()
                    .map(|b| match b {
                        Bond::Finite(m) => -(std::f64::consts::PI / *m as f64).cos(),
                        Bond::Infinite => -1.0,
                    })
                    .collect()
            })
            .collect()
    }

    /// The sub-diagram on the given 1-based nodes (renumbered in order).
    pub fn restrict(&self, nodes: &[usize]) -> CoxeterDiagram {
        let matrix = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.bond(i, j)).collect())
            .collect();
        let mut sub = CoxeterDiagram::from_matrix(matrix).expect("restriction of a valid diagram");
        sub.cartan = nodes
            .iter()
            .map(|&i| {
                nodes
                    .iter()
                    .map(|&j| self.cartan[i - 1][j - 1].clone())
                    .collect()
            })
            .collect();
        sub.integral = integral_part(&sub.cartan);
        sub
    }

    /// Relabels so that the given 1-based node order becomes `1..=rank`.
    pub fn relabeled(&self, order: &[usize]) -> Result<CoxeterDiagram, DiagramError> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=self.rank()).collect::<Vec<_>>() {
            return Err(DiagramError::Malformed(
                "relabeling is not a permutation of the nodes".into(),
            ));
        }
        let mut out = self.restrict(order);
        out.name = None;
        Ok(out)
    }

    /// Serializable document form.
    pub fn to_document(&self) -> DiagramDocument {
        DiagramDocument {
            nodes: Some(self.rank()),
            bonds: Some(
                self.edges()
                    .into_iter()
                    .map(|(i, j, m)| (i, j, BondValue::from(m)))
                    .collect(),
            ),
            matrix: None,
        }
    }
}

fn symmetric_cartan(bonds: &[Vec<Bond>]) -> Vec<Vec<AlgebraicScalar>> {
    bonds
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, b)| {
                    if i == j {
                        AlgebraicScalar::from_integer(2)
                    } else {
                        match b {
                            Bond::Finite(m) => AlgebraicScalar::two_cos_pi_over(*m).negated(),
                            Bond::Infinite => AlgebraicScalar::from_integer(-2),
                        }
                    }
                })
                .collect()
        })
        .collect()
}

fn integral_part(cartan: &[Vec<AlgebraicScalar>]) -> Option<Vec<Vec<i64>>> {
    cartan
        .iter()
        .map(|row| row.iter().map(|x| x.as_integer()).collect())
        .collect()
}

fn recognize_component(d: &CoxeterDiagram, nodes: &[usize]) -> Option<FiniteType> {
    let n = nodes.len();
    if n == 1 {
        return Some(FiniteType::A(1));
    }
    if n == 2 {
        return match d.bond(nodes[0], nodes[1]) {
            Bond::Finite(3) => Some(FiniteType::A(2)),
            Bond::Finite(4) => Some(FiniteType::B(2)),
            Bond::Finite(m) => Some(FiniteType::I2(m)),
            Bond::Infinite => None,
        };
    }
    // Rank ≥ 3: must be a tree with no infinite or order ≥ 6 bonds.
    let mut edges = Vec::new();
    for (a, &i) in nodes.iter().enumerate() {
        for &j in &nodes[a + 1..] {
            let b = d.bond(i, j);
            if b.is_edge() {
                edges.push((i, j, b.finite()?));
            }
        }
    }
    if edges.len() != n - 1 {
        return None;
    }
    let degree = |v: usize| edges.iter().filter(|(i, j, _)| *i == v || *j == v).count();
    let heavy: Vec<_> = edges.iter().filter(|e| e.2 >= 4).collect();
    let branch: Vec<usize> = nodes.iter().copied().filter(|&v| degree(v) >= 3).collect();
    if nodes.iter().any(|&v| degree(v) > 3) || branch.len() > 1 {
        return None;
    }
    if let Some(&center) = branch.first() {
        if !heavy.is_empty() {
            return None;
        }
        // Arm lengths from the branch node.
        let mut arms: Vec<usize> = d
            .neighbors(center)
            .into_iter()
            .filter(|v| nodes.contains(v))
            .map(|start| {
                let (mut prev, mut cur, mut len) = (center, start, 1);
                loop {
                    let next: Vec<usize> = d
                        .neighbors(cur)
                        .into_iter()
                        .filter(|&w| w != prev)
                        .collect();
                    match next.as_slice() {
                        [] => break len,
                        [w] => {
                            prev = cur;
                            cur = *w;
                            len += 1;
                        }
                        _ => unreachable!("second branch node"),
                    }
                }
            })
            .collect();
        arms.sort_unstable();
        return match arms.as_slice() {
            [1, 1, r] => Some(FiniteType::D(r + 3)),
            [1, 2, 2] => Some(FiniteType::E(6)),
            [1, 2, 3] => Some(FiniteType::E(7)),
            [1, 2, 4] => Some(FiniteType::E(8)),
            _ => None,
        };
    }
    // A path. Order it from one end.
    let end = *nodes.iter().find(|&&v| degree(v) == 1)?;
    let mut path = vec![end];
    while path.len() < n {
        let cur = *path.last().unwrap();
        let prev = if path.len() >= 2 {
            path[path.len() - 2]
        } else {
            0
        };
        let next = d
            .neighbors(cur)
            .into_iter()
            .find(|&w| w != prev && nodes.contains(&w))?;
        path.push(next);
    }
    let orders: Vec<u32> = path
        .windows(2)
        .map(|w| d.bond(w[0], w[1]).finite().unwrap())
        .collect();
    let heavy_pos: Vec<usize> = (0..orders.len()).filter(|&k| orders[k] >= 4).collect();
    match heavy_pos.as_slice() {
        [] => Some(FiniteType::A(n)),
        [k] => {
            let at_end = *k == 0 || *k == orders.len() - 1;
            match orders[*k] {
                4 if at_end => Some(FiniteType::B(n)),
                4 if n == 4 => Some(FiniteType::F4),
                5 if at_end && (n == 3 || n == 4) => Some(FiniteType::H(n)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Named types accepted by [`CoxeterDiagram::named`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    H(usize),
    I2(Bond),
}

impl FromStr for NamedType {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || DiagramError::UnknownName(s.to_string());
        let upper = s.trim().to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let bond = match rest.trim() {
                "INF" | "∞" | "INFINITY" => Bond::Infinite,
                m => Bond::Finite(m.parse().map_err(|_| unknown())?),
            };
            if bond.finite().is_some_and(|m| m < 2) {
                return Err(unknown());
            }
            return Ok(NamedType::I2(bond));
        }
        let (letter, digits) = upper.split_at(1.min(upper.len()));
        let n: usize = digits.parse().map_err(|_| unknown())?;
        let kind = match (letter, n) {
            ("A", n) if n >= 1 => NamedType::A(n),
            ("B", n) if n >= 2 => NamedType::B(n),
            ("C", n) if n >= 2 => NamedType::C(n),
            ("D", n) if n >= 4 => NamedType::D(n),
            ("E", 6..=8) => NamedType::E(n),
            ("F", 4) => NamedType::F4,
            ("G", 2) => NamedType::G2,
            ("H", 3 | 4) => NamedType::H(n),
            _ => return Err(unknown()),
        };
        Ok(kind)
    }
}

impl fmt::Display for NamedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedType::A(n) => write!(f, "A{n}"),
            NamedType::B(n) => write!(f, "B{n}"),
            NamedType::C(n) => write!(f, "C{n}"),
            NamedType::D(n) => write!(f, "D{n}"),
            NamedType::E(n) => write!(f, "E{n}"),
            NamedType::F4 => f.write_str("F4"),
            NamedType::G2 => f.write_str("G2"),
            NamedType::H(n) => write!(f, "H{n}"),
            NamedType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl NamedType {
    /// 1-based bond triples in Bourbaki numbering.
    pub fn bonds(self) -> (usize, Vec<(usize, usize, Bond)>) {
        let chain = |n: usize| {
            (1..n)
                .map(|i| (i, i + 1, Bond::Finite(3)))
                .collect::<Vec<_>>()
        };
        let set_last = |mut v: Vec<(usize, usize, Bond)>, m: u32| {
            if let Some(e) = v.last_mut() {
                e.2 = Bond::Finite(m);
            }
            v
        };
        match self {
            NamedType::A(n) => (n, chain(n)),
            NamedType::B(n) | NamedType::C(n) => (n, set_last(chain(n), 4)),
            NamedType::D(n) => {
                let mut e = chain(n - 1);
                e.push((n - 2, n, Bond::Finite(3)));
                (n, e)
            }
            NamedType::E(n) => {
                let mut e = vec![(1, 3, Bond::Finite(3)), (2, 4, Bond::Finite(3))];
                e.extend((3..n).map(|i| (i, i + 1, Bond::Finite(3))));
                (n, e)
            }
            NamedType::F4 => (
                4,
                vec![
                    (1, 2, Bond::Finite(3)),
                    (2, 3, Bond::Finite(4)),
                    (3, 4, Bond::Finite(3)),
                ],
            ),
            NamedType::G2 => (2, vec![(1, 2, Bond::Finite(6))]),
            NamedType::H(n) => {
                let mut e = chain(n);
                e[0].2 = Bond::Finite(5);
                (n, e)
            }
            NamedType::I2(m) => (2, vec![(1, 2, m)]),
        }
    }

    /// Squared root lengths (short roots = 2) for crystallographic types.
    pub fn root_lengths(self) -> Option<Vec<i64>> {
        let (n, _) = self.bonds();
        let lengths = match self {
            NamedType::A(_) | NamedType::D(_) | NamedType::E(_) => vec![2; n],
            NamedType::B(_) => (1..=n).map(|i| if i == n { 2 } else { 4 }).collect(),
            NamedType::C(_) => (1..=n).map(|i| if i == n { 4 } else { 2 }).collect(),
            NamedType::F4 => vec![4, 4, 2, 2],
            NamedType::G2 => vec![2, 6],
            NamedType::H(_) | NamedType::I2(_) => return None,
        };
        Some(lengths)
    }

    pub fn diagram(self) -> CoxeterDiagram {
        let (n, bonds) = self.bonds();
        let mut d = CoxeterDiagram::from_bonds(n, &bonds).expect("named diagrams are valid");
        if let Some(len) = self.root_lengths() {
            let cartan = crystallographic_cartan(&d.bonds, &len);
            d.cartan = cartan
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| AlgebraicScalar::from_integer(x))
                        .collect()
                })
                .collect();
            d.integral = Some(cartan);
        }
        d.name = Some(self.to_string());
        d
    }
}

/// `A_ij = 2(α_i, α_j)/(α_j, α_j)` from bond orders and squared lengths.
pub(crate) fn crystallographic_cartan(bonds: &[Vec<Bond>], len: &[i64]) -> Vec<Vec<i64>> {
    let n = bonds.len();
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = if i == j {
                2
            } else {
                match bonds[i][j] {
                    Bond::Finite(2) => 0,
                    // (α_i, α_j) = -cos(π/m)|α_i||α_j|, always -max(len)/2 here.
                    Bond::Finite(3 | 4 | 6) => -(len[i].max(len[j])) / len[j],
                    other => panic!("bond {other} is not crystallographic"),
                }
            };
        }
    }
    a
}

/// JSON diagram document: `{"nodes": n, "bonds": [[i, j, m], ...]}` or
/// `{"matrix": [[1, 3, 2], ...]}`; `m` may be `"inf"`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DiagramDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bonds: Option<Vec<(usize, usize, BondValue)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<BondValue>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum BondValue {
    Order(u32),
    Text(String),
}

impl From<Bond> for BondValue {
    fn from(b: Bond) -> Self {
        match b {
            Bond::Finite(m) => BondValue::Order(m),
            Bond::Infinite => BondValue::Text("inf".into()),
        }
    }
}

impl BondValue {
    fn to_bond(&self) -> Result<Bond, DiagramError> {
        match self {
            BondValue::Order(m) => Ok(Bond::Finite(*m)),
            BondValue::Text(t)
                if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") =>
            {
                Ok(Bond::Infinite)
            }
            BondValue::Text(t) => Err(DiagramError::Malformed(format!("bad bond order `{t}`"))),
        }
    }
}

impl DiagramDocument {
    pub fn into_diagram(self) -> Result<CoxeterDiagram, DiagramError> {
        match (self.nodes, self.bonds, self.matrix) {
            (_, None, Some(matrix)) => {
                let parsed = matrix
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(BondValue::to_bond)
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if self.nodes.is_some_and(|n| n != parsed.len()) {
                    return Err(DiagramError::Malformed(
                        "`nodes` disagrees with matrix size".into(),
                    ));
                }
                CoxeterDiagram::from_matrix(parsed)
            }
            (Some(n), bonds, None) => {
                let bonds = bonds
                    .unwrap_or_default()
                    .into_iter()
                    .map(|(i, j, m)| Ok((i, j, m.to_bond()?)))
                    .collect::<Result<Vec<_>, DiagramError>>()?;
                CoxeterDiagram::from_bonds(n, &bonds)
            }
            _ => Err(DiagramError::Malformed(
                "expected `nodes` with `bonds`, or `matrix`".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_a3() {
        let d = CoxeterDiagram::parse("A3").unwrap();
        assert_eq!(d.rank(), 3);
        assert_eq!(d.bond(1, 2), Bond::Finite(3));
        assert_eq!(d.bond(2, 3), Bond::Finite(3));
        assert_eq!(d.bond(1, 3), Bond::Finite(2));
    }

    #[test]
    fn parse_dihedral() {
        let d = CoxeterDiagram::parse("I2(7)").unwrap();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.bond(1, 2), Bond::Finite(7));
        assert_eq!(
            CoxeterDiagram::parse("i2(inf)").unwrap().bond(1, 2),
            Bond::Infinite
        );
    }

    #[test]
    fn names_are_case_insensitive() {
        assert_eq!(
            CoxeterDiagram::parse("e8").unwrap(),
            CoxeterDiagram::parse("E8").unwrap()
        );
    }

    #[test]
    fn asymmetric_matrix_rejected() {
        let err = CoxeterDiagram::parse(r#"{"matrix": [[1, 3], [4, 1]]}"#).unwrap_err();
        assert!(matches!(err, DiagramError::Asymmetric { .. }));
        let err =
            CoxeterDiagram::parse(r#"{"nodes": 2, "bonds": [[1, 2, 3], [2, 1, 4]]}"#).unwrap_err();
        assert!(matches!(err, DiagramError::Asymmetric { .. }));
    }

    #[test]
    fn bad_diagonal_and_small_bonds_rejected() {
        let err = CoxeterDiagram::parse(r#"{"matrix": [[2, 3], [3, 1]]}"#).unwrap_err();
        assert_eq!(err, DiagramError::Diagonal(1));
        let err = CoxeterDiagram::parse(r#"{"matrix": [[1, 1], [1, 1]]}"#).unwrap_err();
        assert!(matches!(err, DiagramError::BondTooSmall { .. }));
        assert!(CoxeterDiagram::parse("{\"nodes\": 2}").is_ok());
        assert!(CoxeterDiagram::parse("{\"bonds\": []}").is_err());
        assert!(CoxeterDiagram::parse("X9").is_err());
        assert!(CoxeterDiagram::parse("D3").is_err());
    }

    #[test]
    fn document_round_trip() {
        let d = CoxeterDiagram::parse("F4").unwrap();
        let json = serde_json::to_string(&d.to_document()).unwrap();
        let back = CoxeterDiagram::parse(&json).unwrap();
        assert_eq!(back.edges(), d.edges());
        let inf = CoxeterDiagram::parse(r#"{"nodes": 2, "bonds": [[1, 2, "inf"]]}"#).unwrap();
        assert_eq!(inf.bond(2, 1), Bond::Infinite);
    }

    #[test]
    fn group_orders() {
        let order = |s: &str| CoxeterDiagram::parse(s).unwrap().group_order();
        assert_eq!(order("A3"), GroupOrder::Finite(24));
        assert_eq!(order("B3"), GroupOrder::Finite(48));
        assert_eq!(order("D4"), GroupOrder::Finite(192));
        assert_eq!(order("E8"), GroupOrder::Finite(696_729_600));
        assert_eq!(order("F4"), GroupOrder::Finite(1152));
        assert_eq!(order("G2"), GroupOrder::Finite(12));
        assert_eq!(order("H4"), GroupOrder::Finite(14_400));
        assert_eq!(order("I2(7)"), GroupOrder::Finite(14));
        assert_eq!(order("I2(inf)"), GroupOrder::Infinite);
    }

    #[test]
    fn infinite_types_recognized() {
        // affine Ã2 (triangle), affine B̃2-like path 4-4, hyperbolic 3-7 chain
        let tri = r#"{"nodes": 3, "bonds": [[1,2,3],[2,3,3],[1,3,3]]}"#;
        let c2t = r#"{"nodes": 3, "bonds": [[1,2,4],[2,3,4]]}"#;
        let h37 = r#"{"nodes": 3, "bonds": [[1,2,3],[2,3,7]]}"#;
        let e9 = r#"{"nodes": 9, "bonds": [[1,3,3],[2,4,3],[3,4,3],[4,5,3],[5,6,3],[6,7,3],[7,8,3],[8,9,3]]}"#;
        for doc in [tri, c2t, h37, e9] {
            assert_eq!(
                CoxeterDiagram::parse(doc).unwrap().group_order(),
                GroupOrder::Infinite,
                "{doc}"
            );
        }
        // relabeled A3 with the middle node first is still A3
        let star = r#"{"nodes": 3, "bonds": [[1,2,3],[1,3,3]]}"#;
        assert_eq!(
            CoxeterDiagram::parse(star).unwrap().group_order(),
            GroupOrder::Finite(24)
        );
    }

    #[test]
    fn reducible_orders_multiply() {
        let d = CoxeterDiagram::parse(r#"{"nodes": 3, "bonds": [[1,2,3]]}"#).unwrap();
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.group_order(), GroupOrder::Finite(12));
    }

    #[test]
    fn crystallographic_cartan_b2_g2() {
        let b2 = CoxeterDiagram::parse("B2").unwrap();
        assert_eq!(b2.integral_cartan().unwrap(), &[vec![2, -2], vec![-1, 2]]);
        let c2 = CoxeterDiagram::parse("C2").unwrap();
        assert_eq!(c2.integral_cartan().unwrap(), &[vec![2, -1], vec![-2, 2]]);
        let g2 = CoxeterDiagram::parse("G2").unwrap();
        assert_eq!(g2.integral_cartan().unwrap(), &[vec![2, -1], vec![-3, 2]]);
        assert!(CoxeterDiagram::parse("H3")
            .unwrap()
            .integral_cartan()
            .is_none());
    }

    #[test]
    fn gram_form_positive_definite_exactly_for_finite_types() {
        fn positive_definite(m: Vec<Vec<f64>>) -> bool {
            // Cholesky
            let n = m.len();
            let mut l = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
                    if i == j {
                        let d = m[i][i] - s;
                        if d <= 1e-9 {
                            return false;
                        }
                        l[i][i] = d.sqrt();
                    } else {
                        l[i][j] = (m[i][j] - s) / l[j][j];
                    }
                }
            }
            true
        }
        for name in [
            "A4", "B5", "D6", "E6", "E7", "E8", "F4", "G2", "H3", "H4", "I2(9)",
        ] {
            let d = CoxeterDiagram::parse(name).unwrap();
            assert!(positive_definite(d.gram_matrix()), "{name}");
            assert!(d.is_finite());
        }
        let affine_a2 =
            CoxeterDiagram::parse(r#"{"nodes": 3, "bonds": [[1,2,3],[2,3,3],[1,3,3]]}"#).unwrap();
        assert!(!positive_definite(affine_a2.gram_matrix()));
        assert!(!affine_a2.is_finite());
    }
}
