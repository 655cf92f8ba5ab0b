//! `W/W_J` for corank-1 `J` realized as the Weyl orbit of a fundamental
//! weight, its `(W_J, W_J)` double cosets and the 2-transitivity sweep.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{
    enumerate_elements, is_reduced, normal_form, reflect_in_place, CoxeterDiagram, DiagramError,
    FiniteType, Word, WordError,
};
use crate::perm::PermutationGroup;
use crate::scalar::{AlgebraicScalar, Scalar};

/// Default bound on orbit size; the largest corank-1 orbit of `E8` has
/// 483 840 points.
pub const DEFAULT_ORBIT_LIMIT: usize = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CosetError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("diagram {0} has an infinite Coxeter group")]
    Infinite(String),
    #[error("orbit exceeds {0} points")]
    TooLarge(usize),
    #[error("diagram does not exhibit a {case} violation at node 1{}", found.map(|f| format!(" (found {f})")).unwrap_or_default())]
    NoViolation {
        case: Violation,
        found: Option<Violation>,
    },
    #[error("witness word {0} is not reduced")]
    NotReduced(Word),
    #[error("max_rank must be in 1..=8, got {0}")]
    RankOutOfRange(usize),
    #[error("max_dihedral must be at least 3, got {0}")]
    DihedralOutOfRange(u32),
}

enum Store {
    Integral {
        points: Vec<Vec<i64>>,
        index: HashMap<Vec<i64>, u32>,
    },
    Algebraic {
        points: Vec<Vec<AlgebraicScalar>>,
        index: HashMap<Vec<AlgebraicScalar>, u32>,
    },
}

/// The `W`-orbit of `ω_i` with the permutation action of each generator.
pub struct WeightOrbit {
    diagram: CoxeterDiagram,
    node: usize,
    store: Store,
    /// `generators[j][p]` is the index of `s_{j+1}(point p)`.
    generators: Vec<Vec<u32>>,
    /// Breadth-first distance from `ω_i`, the length of the minimal coset
    /// representative.
    depth: Vec<u32>,
}

struct Built<S> {
    points: Vec<Vec<S>>,
    index: HashMap<Vec<S>, u32>,
    generators: Vec<Vec<u32>>,
    depth: Vec<u32>,
}

fn build_orbit<S: Scalar>(
    cartan: &[Vec<S>],
    node: usize,
    limit: usize,
) -> Result<Built<S>, CosetError> {
    let n = cartan.len();
    let mut start = vec![S::zero(); n];
    start[node - 1] = S::one();
    let mut index = HashMap::new();
    index.insert(start.clone(), 0u32);
    let mut points = vec![start];
    let mut depth = vec![0u32];
    let mut generators = vec![Vec::new(); n];
    let mut p = 0;
    while p < points.len() {
        for (j, perm) in generators.iter_mut().enumerate() {
            if points[p][j].is_zero() {
                perm.push(p as u32);
                continue;
            }
            let mut image = points[p].clone();
            reflect_in_place(cartan, j, &mut image);
            let id = match index.get(&image) {
                Some(&id) => id,
                None => {
                    if points.len() >= limit {
                        return Err(CosetError::TooLarge(limit));
                    }
                    let id = points.len() as u32;
                    index.insert(image.clone(), id);
                    points.push(image);
                    depth.push(depth[p] + 1);
                    id
                }
            };
            perm.push(id);
        }
        p += 1;
    }
    Ok(Built {
        points,
        index,
        generators,
        depth,
    })
}

impl WeightOrbit {
    pub fn new(d: &CoxeterDiagram, node: usize) -> Result<Self, CosetError> {
        Self::with_limit(d, node, DEFAULT_ORBIT_LIMIT)
    }

    pub fn with_limit(d: &CoxeterDiagram, node: usize, limit: usize) -> Result<Self, CosetError> {
        d.check_node(node)?;
        if !d.is_finite() {
            return Err(CosetError::Infinite(d.to_string()));
        }
        let (store, generators, depth) = match d.integral_cartan() {
            Some(c) => {
                let b = build_orbit(c, node, limit)?;
                (
                    Store::Integral {
                        points: b.points,
                        index: b.index,
                    },
                    b.generators,
                    b.depth,
                )
            }
            None => {
                let b = build_orbit(d.cartan(), node, limit)?;
                (
                    Store::Algebraic {
                        points: b.points,
                        index: b.index,
                    },
                    b.generators,
                    b.depth,
                )
            }
        };
        Ok(WeightOrbit {
            diagram: d.clone(),
            node,
            store,
            generators,
            depth,
        })
    }

    pub fn diagram(&self) -> &CoxeterDiagram {
        &self.diagram
    }

    pub fn node(&self) -> usize {
        self.node
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    /// Coordinates of a point in the fundamental-weight basis.
    pub fn point(&self, k: usize) -> Vec<AlgebraicScalar> {
        match &self.store {
            Store::Integral { points, .. } => points[k]
                .iter()
                .map(|&x| AlgebraicScalar::from_integer(x))
                .collect(),
            Store::Algebraic { points, .. } => points[k].clone(),
        }
    }

    pub fn index_of(&self, v: &[AlgebraicScalar]) -> Option<usize> {
        match &self.store {
            Store::Integral { index, .. } => {
                let key: Option<Vec<i64>> = v.iter().map(|x| x.as_integer()).collect();
                index.get(&key?).map(|&k| k as usize)
            }
            Store::Algebraic { index, .. } => index.get(v).map(|&k| k as usize),
        }
    }

    /// Permutation of points induced by `s_j` (1-based).
    pub fn generator(&self, j: usize) -> &[u32] {
        &self.generators[j - 1]
    }

    pub fn depth(&self, k: usize) -> usize {
        self.depth[k] as usize
    }

    /// Index of `w · ω_i`.
    pub fn act(&self, w: &Word) -> Result<usize, CosetError> {
        w.validate(&self.diagram)?;
        Ok(w.letters()
            .iter()
            .rev()
            .fold(0usize, |p, &a| self.generators[a - 1][p] as usize))
    }

    /// Lexicographically smallest shortest word `w` with `w · ω_i` = point `k`.
    pub fn min_word(&self, k: usize) -> Word {
        let mut p = k;
        let mut letters = Vec::with_capacity(self.depth[k] as usize);
        while self.depth[p] > 0 {
            let (j, next) = self
                .generators
                .iter()
                .enumerate()
                .map(|(j, g)| (j, g[p] as usize))
                .find(|&(_, q)| self.depth[q] + 1 == self.depth[p])
                .expect("breadth-first parent exists");
            letters.push(j + 1);
            p = next;
        }
        Word(letters)
    }

    pub fn as_permutation_group(&self) -> PermutationGroup {
        PermutationGroup::new(self.len(), self.generators.clone())
            .expect("generators are permutations")
    }
}

/// Orbit of `ω_i` under `W`, i.e. `W/W_J` with `J = I ∖ {i}`.
pub fn weight_orbit(d: &CoxeterDiagram, i: usize) -> Result<WeightOrbit, CosetError> {
    WeightOrbit::new(d, i)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetClass {
    pub size: usize,
    /// Minimal-length representative; shortest, then lexicographically
    /// smallest.
    pub representative: Word,
    pub length: usize,
}

/// `W_J`-orbits on the weight orbit, one per `(W_J, W_J)` double coset.
pub struct DoubleCosetDecomposition {
    orbit: WeightOrbit,
    classes: Vec<CosetClass>,
    class_of: Vec<u32>,
}

impl DoubleCosetDecomposition {
    pub fn orbit(&self) -> &WeightOrbit {
        &self.orbit
    }

    pub fn classes(&self) -> &[CosetClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of_point(&self, k: usize) -> usize {
        self.class_of[k] as usize
    }

    pub fn class_of_word(&self, w: &Word) -> Result<usize, CosetError> {
        Ok(self.class_of_point(self.orbit.act(w)?))
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn is_two_transitive(&self) -> bool {
        self.classes.len() == 2
    }

    pub fn report(&self) -> DoubleCosetReport {
        DoubleCosetReport {
            diagram: self.orbit.diagram.to_string(),
            node: self.orbit.node,
            orbit_size: self.orbit.len(),
            class_count: self.classes.len(),
            two_transitive: self.is_two_transitive(),
            classes: self.classes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCosetReport {
    pub diagram: String,
    pub node: usize,
    pub orbit_size: usize,
    pub class_count: usize,
    pub two_transitive: bool,
    pub classes: Vec<CosetClass>,
}

impl From<WeightOrbit> for DoubleCosetDecomposition {
    fn from(orbit: WeightOrbit) -> Self {
        let n = orbit.len();
        let skip = orbit.node - 1;
        let mut class_of = vec![u32::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = members.len() as u32;
            class_of[start] = c;
            let mut comp = vec![start];
            let mut k = 0;
            while k < comp.len() {
                let p = comp[k];
                for (j, g) in orbit.generators.iter().enumerate() {
                    let q = g[p] as usize;
                    if j != skip && class_of[q] == u32::MAX {
                        class_of[q] = c;
                        comp.push(q);
                    }
                }
                k += 1;
            }
            members.push(comp);
        }
        let mut classes: Vec<(CosetClass, u32)> = members
            .iter()
            .enumerate()
            .map(|(c, pts)| {
                let best = pts.iter().map(|&p| orbit.depth[p]).min().unwrap();
                let representative = pts
                    .iter()
                    .filter(|&&p| orbit.depth[p] == best)
                    .map(|&p| orbit.min_word(p))
                    .min()
                    .unwrap();
                (
                    CosetClass {
                        size: pts.len(),
                        length: representative.len(),
                        representative,
                    },
                    c as u32,
                )
            })
            .collect();
        classes.sort_by(|a, b| cmp_words(&a.0.representative, &b.0.representative));
        let mut relabel = vec![0u32; classes.len()];
        for (new, (_, old)) in classes.iter().enumerate() {
            relabel[*old as usize] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = relabel[*c as usize];
        }
        DoubleCosetDecomposition {
            orbit,
            classes: classes.into_iter().map(|c| c.0).collect(),
            class_of,
        }
    }
}

fn cmp_words(a: &Word, b: &Word) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn double_cosets(d: &CoxeterDiagram, i: usize) -> Result<DoubleCosetDecomposition, CosetError> {
    Ok(weight_orbit(d, i)?.into())
}

pub fn is_two_transitive(d: &CoxeterDiagram, i: usize) -> Result<bool, CosetError> {
    Ok(double_cosets(d, i)?.is_two_transitive())
}

/// Double-coset count from enumerating `W` as normal-form words and merging
/// `w ~ s_j w ~ w s_j` for `j ∈ J`. Independent of the orbit construction.
pub fn double_coset_count_by_enumeration(
    d: &CoxeterDiagram,
    i: usize,
    limit: u128,
) -> Result<usize, CosetError> {
    d.check_node(i)?;
    let elements = enumerate_elements(d, limit)?;
    let index: HashMap<&Word, usize> = elements.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut parent: Vec<usize> = (0..elements.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (k, w) in elements.iter().enumerate() {
        for j in (1..=d.rank()).filter(|&j| j != i) {
            let s = Word::new(vec![j]);
            for product in [s.concat(w), w.concat(&s)] {
                let other = index[&normal_form(d, &product)?];
                let (a, b) = (find(&mut parent, k), find(&mut parent, other));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    Ok((0..elements.len())
        .filter(|&k| find(&mut parent, k) == k)
        .count())
}

/// The three ways a diagram can fail the 2-transitivity criterion at node 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Violation {
    /// Node 1 has at least two neighbors.
    #[serde(rename = "branch-at-1")]
    BranchAtFirst,
    /// The simple path from node 1 reaches a node with two further neighbors.
    #[serde(rename = "branch-at-i")]
    BranchAtInterior,
    /// The simple path from node 1 reaches a bond of order at least 4.
    #[serde(rename = "multiple-bond")]
    MultipleBond,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::BranchAtFirst => "branch-at-1",
            Violation::BranchAtInterior => "branch-at-i",
            Violation::MultipleBond => "multiple-bond",
        })
    }
}

impl FromStr for Violation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "branch-at-1" => Ok(Violation::BranchAtFirst),
            "branch-at-i" => Ok(Violation::BranchAtInterior),
            "multiple-bond" => Ok(Violation::MultipleBond),
            _ => Err(format!("unknown violation `{s}`")),
        }
    }
}

/// Walks the simple path from node 1 and returns the first violation met,
/// with its witness word.
pub fn find_violation(d: &CoxeterDiagram) -> Option<(Violation, Word)> {
    let mut path = vec![1usize];
    loop {
        let cur = *path.last().unwrap();
        let prev = path.len().checked_sub(2).map(|k| path[k]);
        let forward: Vec<usize> = d
            .neighbors(cur)
            .into_iter()
            .filter(|&w| Some(w) != prev)
            .collect();
        let back = path.iter().rev().copied();
        match forward.as_slice() {
            [] => return None,
            [next] => {
                if d.bond(cur, *next).finite() != Some(3) {
                    let word = path.iter().copied().chain([*next]).chain(back).collect();
                    return Some((Violation::MultipleBond, Word(word)));
                }
                if path.contains(next) {
                    // a cycle of simple bonds; not a path diagram
                    return None;
                }
                path.push(*next);
            }
            [j, k, ..] => {
                let case = if path.len() == 1 {
                    Violation::BranchAtFirst
                } else {
                    Violation::BranchAtInterior
                };
                let word = path.iter().copied().chain([*j, *k]).chain(back).collect();
                return Some((case, Word(word)));
            }
        }
    }
}

/// The explicit reduced word exhibiting a third double coset for the given
/// violation at node 1.
pub fn witness_word(d: &CoxeterDiagram, case: Violation) -> Result<Word, CosetError> {
    match find_violation(d) {
        Some((found, word)) if found == case => {
            if !is_reduced(d, &word)? {
                return Err(CosetError::NotReduced(word));
            }
            Ok(word)
        }
        other => Err(CosetError::NoViolation {
            case,
            found: other.map(|o| o.0),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyEntry {
    pub diagram: String,
    pub node: usize,
    pub orbit_size: usize,
    pub class_count: usize,
    pub two_transitive: bool,
    /// Rank 1: the 2-point action, outside the scope of the rank ≥ 2 criterion.
    pub degenerate: bool,
    #[serde(skip)]
    pub finite_type: FiniteType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub max_rank: usize,
    pub max_dihedral: u32,
    pub entries: Vec<ClassifyEntry>,
}

impl Classification {
    /// Non-degenerate pairs passing the test.
    pub fn two_transitive(&self) -> Vec<&ClassifyEntry> {
        self.entries
            .iter()
            .filter(|e| e.two_transitive && !e.degenerate)
            .collect()
    }

    pub fn degenerate(&self) -> Vec<&ClassifyEntry> {
        self.entries.iter().filter(|e| e.degenerate).collect()
    }
}

/// Irreducible finite Coxeter diagrams of rank ≤ `max_rank`, one per
/// isomorphism class of Coxeter system (`I2(3) = A2`, `I2(4) = B2`,
/// `I2(6) = G2`; `C_n` is `B_n`).
pub fn finite_diagrams(max_rank: usize, max_dihedral: u32) -> Vec<(FiniteType, String)> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push((FiniteType::A(n), format!("A{n}")));
    }
    for n in 2..=max_rank {
        out.push((FiniteType::B(n), format!("B{n}")));
    }
    for n in 4..=max_rank {
        out.push((FiniteType::D(n), format!("D{n}")));
    }
    for n in 6..=max_rank.min(8) {
        out.push((FiniteType::E(n), format!("E{n}")));
    }
    if max_rank >= 4 {
        out.push((FiniteType::F4, "F4".into()));
    }
    if max_rank >= 2 {
        out.push((FiniteType::I2(6), "G2".into()));
    }
    for n in 3..=max_rank.min(4) {
        out.push((FiniteType::H(n), format!("H{n}")));
    }
    if max_rank >= 2 {
        for m in (5..=max_dihedral).filter(|&m| m != 6) {
            out.push((FiniteType::I2(m), format!("I2({m})")));
        }
    }
    out
}

/// Runs the 2-transitivity test on every (diagram, node) pair of
/// [`finite_diagrams`]. Entries are sorted by type, then node.
pub fn classify(max_rank: usize, max_dihedral: u32) -> Result<Classification, CosetError> {
    if !(1..=8).contains(&max_rank) {
        return Err(CosetError::RankOutOfRange(max_rank));
    }
    if max_dihedral < 3 {
        return Err(CosetError::DihedralOutOfRange(max_dihedral));
    }
    let pairs: Vec<(FiniteType, String, usize)> = finite_diagrams(max_rank, max_dihedral)
        .into_iter()
        .flat_map(|(t, name)| (1..=t.rank()).map(move |i| (t, name.clone(), i)))
        .collect();
    let mut entries = pairs
        .into_par_iter()
        .map(|(finite_type, name, node)| {
            let d = CoxeterDiagram::parse(&name)?;
            let dc = double_cosets(&d, node)?;
            Ok(ClassifyEntry {
                diagram: name,
                node,
                orbit_size: dc.orbit.len(),
                class_count: dc.class_count(),
                two_transitive: dc.is_two_transitive(),
                degenerate: d.rank() == 1,
                finite_type,
            })
        })
        .collect::<Result<Vec<_>, CosetError>>()?;
    entries.sort_by(|a, b| a.finite_type.cmp(&b.finite_type).then(a.node.cmp(&b.node)));
    Ok(Classification {
        max_rank,
        max_dihedral,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> CoxeterDiagram {
        CoxeterDiagram::parse(s).unwrap()
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(weight_orbit(&d("A3"), 1).unwrap().len(), 4);
        assert_eq!(weight_orbit(&d("B3"), 1).unwrap().len(), 6);
        assert_eq!(weight_orbit(&d("E7"), 7).unwrap().len(), 56);
        assert_eq!(weight_orbit(&d("H3"), 1).unwrap().len(), 20);
        assert_eq!(weight_orbit(&d("H3"), 3).unwrap().len(), 12);
        assert_eq!(weight_orbit(&d("I2(7)"), 2).unwrap().len(), 7);
        assert!(matches!(
            weight_orbit(&d("I2(inf)"), 1),
            Err(CosetError::Infinite(_))
        ));
        assert!(matches!(
            weight_orbit(&d("A3"), 4),
            Err(CosetError::Diagram(_))
        ));
    }

    #[test]
    fn generators_are_involutions() {
        let orbit = weight_orbit(&d("H3"), 2).unwrap();
        for j in 1..=3 {
            let g = orbit.generator(j);
            assert!((0..orbit.len()).all(|p| g[g[p] as usize] as usize == p));
        }
    }

    #[test]
    fn double_coset_examples() {
        let a2 = double_cosets(&d("A2"), 1).unwrap();
        assert_eq!(a2.sizes(), vec![1, 2]);
        let b3 = double_cosets(&d("B3"), 1).unwrap();
        assert_eq!(b3.sizes(), vec![1, 4, 1]);
        assert_eq!(
            b3.classes()[2].representative,
            Word::new(vec![1, 2, 3, 2, 1])
        );
        assert_eq!(double_cosets(&d("A3"), 2).unwrap().class_count(), 3);
    }

    #[test]
    fn two_transitivity_examples() {
        for k in 1..=8 {
            assert!(is_two_transitive(&d(&format!("A{k}")), 1).unwrap());
        }
        assert!(!is_two_transitive(&d("B3"), 1).unwrap());
        assert!(!is_two_transitive(&d("D4"), 2).unwrap());
        assert!(!is_two_transitive(&d("G2"), 1).unwrap());
    }

    #[test]
    fn witness_examples() {
        let star = d(r#"{"nodes": 3, "bonds": [[1,2,3],[1,3,3]]}"#);
        assert_eq!(
            witness_word(&star, Violation::BranchAtFirst).unwrap(),
            Word::new(vec![1, 2, 3, 1])
        );
        let tail = d(r#"{"nodes": 5, "bonds": [[1,2,3],[2,3,3],[3,4,3],[3,5,3]]}"#);
        assert_eq!(
            witness_word(&tail, Violation::BranchAtInterior).unwrap(),
            Word::new(vec![1, 2, 3, 4, 5, 3, 2, 1])
        );
        assert_eq!(
            witness_word(&d("B3"), Violation::MultipleBond).unwrap(),
            Word::new(vec![1, 2, 3, 2, 1])
        );
        assert_eq!(
            witness_word(&d("B3"), Violation::BranchAtFirst),
            Err(CosetError::NoViolation {
                case: Violation::BranchAtFirst,
                found: Some(Violation::MultipleBond)
            })
        );
        assert_eq!(
            witness_word(&d("A4"), Violation::MultipleBond),
            Err(CosetError::NoViolation {
                case: Violation::MultipleBond,
                found: None
            })
        );
    }

    #[test]
    fn enumeration_oracle_small() {
        assert_eq!(
            double_coset_count_by_enumeration(&d("B3"), 1, 1000).unwrap(),
            3
        );
        assert_eq!(
            double_coset_count_by_enumeration(&d("A3"), 2, 1000).unwrap(),
            3
        );
        assert_eq!(
            double_coset_count_by_enumeration(&d("A3"), 1, 1000).unwrap(),
            2
        );
    }

    #[test]
    fn classify_rank_four() {
        let c = classify(4, 12).unwrap();
        let passing: Vec<(String, usize)> = c
            .two_transitive()
            .iter()
            .map(|e| (e.diagram.clone(), e.node))
            .collect();
        let expected: Vec<(String, usize)> = (2..=4)
            .flat_map(|k| [(format!("A{k}"), 1), (format!("A{k}"), k)])
            .collect();
        assert_eq!(passing, expected);
        assert_eq!(c.degenerate().len(), 1);
        assert!(classify(9, 12).is_err());
        assert!(classify(4, 2).is_err());
    }
}
