//! The building of type `A_k` over a prime field: chambers are complete flags
//! of `F_q^{k+1}`, `i`-adjacent when they differ at most in the
//! `i`-dimensional member.

mod field;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use field::Subspace;

use crate::perm::PermutationGroup;
use field::{gaussian_binomial, is_prime, primitive_root, subspaces};

pub const DEFAULT_CHAMBER_CAP: u128 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildingError {
    #[error("rank must be at least 1")]
    RankZero,
    #[error("q = {0} is not a prime")]
    NotPrime(u32),
    #[error("{count} chambers exceed the cap of {cap}")]
    TooLarge { count: u128, cap: u128 },
    #[error("flag is not a chamber of this building")]
    ForeignFlag,
    #[error("{0} requires rank at least 2")]
    RankTooSmall(&'static str),
}

/// A permutation of `{1, …, n}` in one-line notation, `w.0[j-1] = w(j)`.
///
/// Products compose as functions: `(u·v)(x) = u(v(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.0.swap(i - 1, i);
        w
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .map(|a| (a + 1..w.len()).filter(|&b| w[a] > w[b]).count())
            .sum()
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.0.len()];
        for (j, &i) in self.0.iter().enumerate() {
            out[i - 1] = j + 1;
        }
        Permutation(out)
    }

    pub fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x - 1]).collect())
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation(cur.clone())];
        loop {
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation(cur.clone()));
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A complete flag `V_1 ⊂ … ⊂ V_k` with `dim V_i = i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Flag(pub Vec<Subspace>);

pub struct Building {
    k: usize,
    q: u8,
    /// `spaces[d-1]`: all `d`-dimensional subspaces, sorted.
    spaces: Vec<Vec<Subspace>>,
    space_index: Vec<HashMap<Subspace, u32>>,
    /// Each chamber as indices into `spaces`, one per dimension.
    chambers: Vec<Vec<u32>>,
    chamber_index: HashMap<Vec<u32>, u32>,
    /// `panels[i-1]`: the `i`-panels as chamber lists.
    panels: Vec<Vec<Vec<u32>>>,
    panel_of: Vec<Vec<u32>>,
}

impl fmt::Debug for Building {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Building({}, {} chambers)",
            self.instance(),
            self.chambers.len()
        )
    }
}

/// `∏_{i=1}^{k+1} (1 + q + … + q^{i-1})`.
pub fn chamber_count(k: usize, q: u128) -> u128 {
    (1..=k as u32 + 1)
        .map(|i| gaussian_binomial(i, 1, q))
        .product()
}

pub fn build_building(k: usize, q: u32) -> Result<Building, BuildingError> {
    Building::with_cap(k, q, DEFAULT_CHAMBER_CAP)
}

impl Building {
    pub fn with_cap(k: usize, q: u32, cap: u128) -> Result<Self, BuildingError> {
        if k == 0 {
            return Err(BuildingError::RankZero);
        }
        if !is_prime(q) || q > 251 {
            return Err(BuildingError::NotPrime(q));
        }
        let count = chamber_count(k, q as u128);
        if count > cap {
            return Err(BuildingError::TooLarge { count, cap });
        }
        let p = q as u8;
        let n = k + 1;
        let spaces: Vec<Vec<Subspace>> = (1..=k).map(|d| subspaces(n, d, p)).collect();
        let space_index: Vec<HashMap<Subspace, u32>> = spaces
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i as u32))
                    .collect()
            })
            .collect();
        // above[d][a]: (d+2)-dimensional spaces containing spaces[d][a]
        let above: Vec<Vec<Vec<u32>>> = (0..k.saturating_sub(1))
            .map(|d| {
                spaces[d]
                    .iter()
                    .map(|s| {
                        (0..spaces[d + 1].len() as u32)
                            .filter(|&b| spaces[d + 1][b as usize].contains(s, p))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut chambers: Vec<Vec<u32>> = (0..spaces[0].len() as u32).map(|a| vec![a]).collect();
        for level in above.iter() {
            chambers = chambers
                .into_iter()
                .flat_map(|c| {
                    let last = *c.last().unwrap() as usize;
                    level[last].iter().map(move |&b| {
                        let mut next = c.clone();
                        next.push(b);
                        next
                    })
                })
                .collect();
        }
        let chamber_index = chambers
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i as u32))
            .collect();
        let mut panels = Vec::with_capacity(k);
        let mut panel_of = Vec::with_capacity(k);
        for i in 0..k {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut list: Vec<Vec<u32>> = Vec::new();
            let mut of = Vec::with_capacity(chambers.len());
            for (c, ch) in chambers.iter().enumerate() {
                let mut key = ch.clone();
                key[i] = u32::MAX;
                let id = *ids.entry(key).or_insert_with(|| {
                    list.push(Vec::new());
                    list.len() as u32 - 1
                });
                list[id as usize].push(c as u32);
                of.push(id);
            }
            panels.push(list);
            panel_of.push(of);
        }
        Ok(Building {
            k,
            q: p,
            spaces,
            space_index,
            chambers,
            chamber_index,
            panels,
            panel_of,
        })
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q as u32
    }

    pub fn instance(&self) -> String {
        format!("A{}(q={})", self.k, self.q)
    }

    pub fn chamber_count(&self) -> usize {
        self.chambers.len()
    }

    pub fn flag(&self, c: usize) -> Flag {
        Flag(
            self.chambers[c]
                .iter()
                .enumerate()
                .map(|(d, &s)| self.spaces[d][s as usize].clone())
                .collect(),
        )
    }

    pub fn chamber_of(&self, flag: &Flag) -> Option<usize> {
        if flag.0.len() != self.k {
            return None;
        }
        let key: Option<Vec<u32>> = flag
            .0
            .iter()
            .enumerate()
            .map(|(d, s)| self.space_index[d].get(s).copied())
            .collect();
        self.chamber_index.get(&key?).map(|&c| c as usize)
    }

    /// Subspaces of the given dimension (`1..=k`).
    pub fn subspaces(&self, dim: usize) -> &[Subspace] {
        &self.spaces[dim - 1]
    }

    /// Index of the `dim`-dimensional member of chamber `c`.
    pub fn member(&self, c: usize, dim: usize) -> usize {
        self.chambers[c][dim - 1] as usize
    }

    /// The `i`-panels.
    pub fn panels(&self, i: usize) -> &[Vec<u32>] {
        &self.panels[i - 1]
    }

    pub fn adjacent(&self, i: usize, c: usize, d: usize) -> bool {
        self.panel_of[i - 1][c] == self.panel_of[i - 1][d]
    }

    /// Relative position `δ(c, d)`: `w(j) = i` where the member `U_j` of `d`
    /// first raises `dim(V_i ∩ U_j)` above `V_{i-1}` and `U_{j-1}`.
    pub fn w_distance(&self, c: usize, d: usize) -> Permutation {
        let n = self.k + 1;
        let p = self.q;
        let mut r = vec![vec![0usize; n + 1]; n + 1];
        for i in 1..=n {
            for j in 1..=n {
                r[i][j] = if i == n {
                    j
                } else if j == n {
                    i
                } else {
                    let v = &self.spaces[i - 1][self.chambers[c][i - 1] as usize];
                    let u = &self.spaces[j - 1][self.chambers[d][j - 1] as usize];
                    v.meet_dim(u, p)
                };
            }
        }
        let mut w = vec![0; n];
        for i in 1..=n {
            for j in 1..=n {
                if r[i][j] + r[i - 1][j - 1] == r[i - 1][j] + r[i][j - 1] + 1 {
                    w[j - 1] = i;
                }
            }
        }
        Permutation(w)
    }

    pub fn w_distance_flags(&self, c: &Flag, d: &Flag) -> Result<Permutation, BuildingError> {
        let c = self.chamber_of(c).ok_or(BuildingError::ForeignFlag)?;
        let d = self.chamber_of(d).ok_or(BuildingError::ForeignFlag)?;
        Ok(self.w_distance(c, d))
    }

    /// Number of chambers in each Bruhat cell `{d : δ(c, d) = w}`.
    pub fn bruhat_cells(&self, c: usize) -> BTreeMap<Permutation, usize> {
        let mut cells = BTreeMap::new();
        for d in 0..self.chambers.len() {
            *cells.entry(self.w_distance(c, d)).or_insert(0) += 1;
        }
        cells
    }

    /// Generators of `GL_{k+1}(F_q)`: elementary transvections and one
    /// diagonal matrix, acting on row vectors from the right.
    fn matrix_generators(&self) -> Vec<Vec<Vec<u8>>> {
        let n = self.k + 1;
        let id = |_: ()| {
            (0..n)
                .map(|a| (0..n).map(|b| u8::from(a == b)).collect::<Vec<u8>>())
                .collect::<Vec<_>>()
        };
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let mut m = id(());
                    m[a][b] = 1;
                    out.push(m);
                }
            }
        }
        let g = primitive_root(self.q);
        if g != 1 {
            let mut m = id(());
            m[0][0] = g;
            out.push(m);
        }
        out
    }

    /// The linear group's action on the `dim`-dimensional subspaces.
    pub fn subspace_action(&self, dim: usize) -> PermutationGroup {
        let list = &self.spaces[dim - 1];
        let gens = self
            .matrix_generators()
            .iter()
            .map(|m| {
                list.iter()
                    .map(|s| self.space_index[dim - 1][&s.transform(m, self.q)])
                    .collect()
            })
            .collect();
        PermutationGroup::new(list.len(), gens).expect("matrices permute subspaces")
    }

    /// The linear group's action on chambers.
    pub fn chamber_action(&self) -> PermutationGroup {
        let gens = self
            .matrix_generators()
            .iter()
            .map(|m| {
                self.chambers
                    .iter()
                    .map(|ch| {
                        let key: Vec<u32> = ch
                            .iter()
                            .enumerate()
                            .map(|(d, &s)| {
                                self.space_index[d]
                                    [&self.spaces[d][s as usize].transform(m, self.q)]
                            })
                            .collect();
                        self.chamber_index[&key]
                    })
                    .collect()
            })
            .collect();
        PermutationGroup::new(self.chambers.len(), gens).expect("matrices permute chambers")
    }

    fn point_residues(&self) -> Vec<Vec<usize>> {
        let mut res = vec![Vec::new(); self.spaces[0].len()];
        for (c, ch) in self.chambers.iter().enumerate() {
            res[ch[0] as usize].push(c);
        }
        res
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuildingReport {
    pub instance: String,
    pub chamber_count: usize,
    pub checks: Vec<Check>,
}

impl BuildingReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn new(b: &Building, checks: Vec<Check>) -> Self {
        BuildingReport {
            instance: b.instance(),
            chamber_count: b.chamber_count(),
            checks,
        }
    }
}

/// Chamber count, thickness and Bruhat cell sizes.
pub fn check_structure(b: &Building) -> BuildingReport {
    let q = b.q() as u128;
    let expected = chamber_count(b.k, q);
    let mut checks = vec![Check::new(
        "chamber-count",
        b.chamber_count() as u128 == expected,
        format!("{} chambers", b.chamber_count()),
    )];
    let thick = (1..=b.k).all(|i| b.panels(i).iter().all(|p| p.len() as u128 == q + 1));
    checks.push(Check::new(
        "thickness",
        thick,
        format!("every panel has {} chambers", q + 1),
    ));
    let cells = b.bruhat_cells(0);
    let all = Permutation::all(b.k + 1);
    let ok = all.len() == cells.len()
        && all
            .iter()
            .all(|w| cells.get(w).copied() == Some(q.pow(w.length() as u32) as usize));
    let mut sizes: Vec<usize> = cells.values().copied().collect();
    sizes.sort_unstable();
    let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
    checks.push(Check::new(
        "bruhat-cells",
        ok,
        format!("cell sizes {{{}}} equal q^l(w)", sizes.join(",")),
    ));
    BuildingReport::new(b, checks)
}

/// Verifies the 2-transitivity mechanism on point residues: the linear group
/// acts 2-transitively on points, distinct point residues have a unique
/// shortest relative position `w`, and the relative positions fill exactly
/// `W_J ∪ W_J w W_J` with `J = {2, …, k}`.
pub fn check_two_transitive_points(b: &Building) -> Result<BuildingReport, BuildingError> {
    if b.k < 2 {
        return Err(BuildingError::RankTooSmall("the point check"));
    }
    let mut checks = Vec::new();
    let points = b.subspace_action(1);
    let order = points.order();
    checks.push(Check::new(
        "group-2-transitive-on-points",
        points.is_two_transitive(),
        format!("group of order {order} on {} points", points.degree()),
    ));

    let chambers = b.chamber_action();
    let preserves = chambers.generators().iter().all(|g| {
        (1..=b.k).all(|i| {
            b.panels(i).iter().all(|panel| {
                let first = g[panel[0] as usize] as usize;
                panel
                    .iter()
                    .all(|&c| b.adjacent(i, first, g[c as usize] as usize))
            })
        })
    });
    checks.push(Check::new(
        "action-type-preserving",
        preserves,
        "generators map i-panels to i-panels",
    ));

    let residues = b.point_residues();
    let npts = residues.len();
    let per_pair: Vec<((usize, usize), BTreeSet<Permutation>)> = (0..npts)
        .into_par_iter()
        .flat_map_iter(|x| (0..npts).map(move |y| (x, y)))
        .map(|(x, y)| {
            let mut set = BTreeSet::new();
            for &c in &residues[x] {
                for &d in &residues[y] {
                    set.insert(b.w_distance(c, d));
                }
            }
            ((x, y), set)
        })
        .collect();

    let n = b.k + 1;
    let w_j: BTreeSet<Permutation> = Permutation::all(n)
        .into_iter()
        .filter(|w| w.0[0] == 1)
        .collect();
    let mut minimal: BTreeSet<Permutation> = BTreeSet::new();
    let mut unique = true;
    let mut distinct_values: BTreeSet<Permutation> = BTreeSet::new();
    let mut same_ok = true;
    for ((x, y), set) in &per_pair {
        if x == y {
            same_ok &= set == &w_j;
            continue;
        }
        let best = set.iter().map(|w| w.length()).min().unwrap();
        let shortest: Vec<&Permutation> = set.iter().filter(|w| w.length() == best).collect();
        unique &= shortest.len() == 1;
        minimal.extend(shortest.into_iter().cloned());
        distinct_values.extend(set.iter().cloned());
    }
    let w = minimal
        .iter()
        .next()
        .cloned()
        .unwrap_or_else(|| Permutation::identity(n));
    checks.push(Check::new(
        "unique-minimal-distance",
        unique && minimal.len() == 1,
        format!("shortest relative position {w} of length {}", w.length()),
    ));
    let double: BTreeSet<Permutation> = w_j
        .iter()
        .flat_map(|u| w_j.iter().map(|v| u.compose(&w).compose(v)))
        .collect();
    let union: BTreeSet<Permutation> = w_j.union(&double).cloned().collect();
    let everything = union.len() == Permutation::all(n).len();
    checks.push(Check::new(
        "distance-set-is-double-coset",
        same_ok && distinct_values == double && everything,
        format!(
            "|W_J| = {}, |W_J w W_J| = {}, |W| = {}",
            w_j.len(),
            double.len(),
            union.len()
        ),
    ));
    Ok(BuildingReport::new(b, checks))
}

/// Points and lines of the geometry: residues of type `{2..k}` and
/// `{1, 3..k}`, incident when they share a chamber.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub points: usize,
    /// Lines as sorted point lists.
    pub lines: Vec<Vec<usize>>,
}

impl Geometry {
    pub fn of(b: &Building) -> Result<Self, BuildingError> {
        if b.k < 2 {
            return Err(BuildingError::RankTooSmall("the point-line geometry"));
        }
        let mut incidence: BTreeSet<(usize, usize)> = BTreeSet::new();
        for ch in &b.chambers {
            incidence.insert((ch[1] as usize, ch[0] as usize));
        }
        let mut lines = vec![Vec::new(); b.spaces[1].len()];
        for (l, x) in incidence {
            lines[l].push(x);
        }
        Ok(Geometry {
            points: b.spaces[0].len(),
            lines,
        })
    }
}

/// Two points on exactly one line, at least three points per line, and the
/// Veblen–Young axiom.
pub fn check_projective_axioms(b: &Building) -> Result<BuildingReport, BuildingError> {
    let g = Geometry::of(b)?;
    let n = g.points;
    let mut line_through = vec![vec![Vec::new(); n]; n];
    for (l, pts) in g.lines.iter().enumerate() {
        for &a in pts {
            for &c in pts {
                if a != c {
                    line_through[a][c].push(l);
                }
            }
        }
    }
    let mut checks = Vec::new();
    let unique = (0..n).all(|a| (0..n).all(|c| a == c || line_through[a][c].len() == 1));
    checks.push(Check::new(
        "two-points-one-line",
        unique,
        format!("{} points, {} lines", n, g.lines.len()),
    ));
    let sizes: BTreeSet<usize> = g.lines.iter().map(|l| l.len()).collect();
    let sizes_str: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
    checks.push(Check::new(
        "lines-have-three-points",
        sizes.iter().all(|&s| s >= 3),
        format!("points per line {{{}}}", sizes_str.join(",")),
    ));
    let mut vy = true;
    let mut triangles = 0usize;
    if unique {
        let meet = |l: usize, m: usize| {
            g.lines[l]
                .iter()
                .any(|x| g.lines[m].binary_search(x).is_ok())
        };
        for l1 in 0..g.lines.len() {
            for l2 in l1 + 1..g.lines.len() {
                let Some(&p) = g.lines[l1]
                    .iter()
                    .find(|x| g.lines[l2].binary_search(x).is_ok())
                else {
                    continue;
                };
                for &a in g.lines[l1].iter().filter(|&&x| x != p) {
                    for &bb in g.lines[l1].iter().filter(|&&x| x != p && x != a) {
                        for &c in g.lines[l2].iter().filter(|&&x| x != p) {
                            for &d in g.lines[l2].iter().filter(|&&x| x != p && x != c) {
                                triangles += 1;
                                vy &= meet(line_through[a][c][0], line_through[bb][d][0]);
                            }
                        }
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        "veblen-young",
        unique && vy,
        format!("{triangles} configurations checked"),
    ));
    Ok(BuildingReport::new(b, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chamber_counts() {
        assert_eq!(build_building(2, 2).unwrap().chamber_count(), 21);
        assert_eq!(build_building(3, 2).unwrap().chamber_count(), 315);
        let line = build_building(1, 3).unwrap();
        assert_eq!(line.chamber_count(), 4);
        assert_eq!(line.panels(1).len(), 1);
        assert_eq!(build_building(2, 3).unwrap().chamber_count(), 13 * 4);
    }

    #[test]
    fn errors() {
        assert_eq!(build_building(0, 2).unwrap_err(), BuildingError::RankZero);
        assert_eq!(
            build_building(2, 4).unwrap_err(),
            BuildingError::NotPrime(4)
        );
        assert!(matches!(
            Building::with_cap(3, 3, 100),
            Err(BuildingError::TooLarge {
                count: 2080,
                cap: 100
            })
        ));
        let b = build_building(1, 2).unwrap();
        assert!(check_projective_axioms(&b).is_err());
        let other = build_building(2, 3).unwrap();
        let a22 = build_building(2, 2).unwrap();
        let foreign = (0..other.chamber_count())
            .map(|c| other.flag(c))
            .find(|f| {
                f.0.iter()
                    .any(|s| s.basis().iter().flatten().any(|&x| x == 2))
            })
            .unwrap();
        assert_eq!(
            a22.w_distance_flags(&foreign, &a22.flag(0)),
            Err(BuildingError::ForeignFlag)
        );
    }

    #[test]
    fn distance_basics() {
        let b = build_building(2, 2).unwrap();
        for c in 0..b.chamber_count() {
            assert_eq!(b.w_distance(c, c), Permutation::identity(3));
            let flag = b.flag(c);
            assert_eq!(b.chamber_of(&flag), Some(c));
        }
        let cells = b.bruhat_cells(0);
        let w0 = Permutation(vec![3, 2, 1]);
        assert_eq!(cells[&w0], 8);
        let mut sizes: Vec<usize> = cells.values().copied().collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 2, 4, 4, 8]);
        let length_one: Vec<usize> = (0..21)
            .filter(|&d| b.w_distance(0, d).length() == 1)
            .collect();
        assert_eq!(length_one.len(), 4);
        assert!(length_one
            .iter()
            .all(|&d| b.adjacent(1, 0, d) || b.adjacent(2, 0, d)));
    }

    #[test]
    fn distance_is_a_w_metric_on_fano_flags() {
        let b = build_building(2, 2).unwrap();
        for c in 0..21 {
            for d in 0..21 {
                let w = b.w_distance(c, d);
                assert_eq!(b.w_distance(d, c), w.inverse());
                for i in 1..=2 {
                    let ws = w.compose(&Permutation::simple(3, i));
                    for dd in 0..21 {
                        if dd != d && b.adjacent(i, d, dd) {
                            let v = b.w_distance(c, dd);
                            assert!(v == w || v == ws, "c={c} d={d} d'={dd} i={i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn permutations() {
        assert_eq!(Permutation::all(4).len(), 24);
        let w = Permutation(vec![2, 3, 1]);
        assert_eq!(w.compose(&w.inverse()), Permutation::identity(3));
        assert_eq!(Permutation(vec![3, 2, 1]).length(), 3);
        assert_eq!(w.to_string(), "[2,3,1]");
    }

    #[test]
    fn fano_plane_checks() {
        let b = build_building(2, 2).unwrap();
        assert!(check_structure(&b).pass());
        let pts = check_two_transitive_points(&b).unwrap();
        assert!(pts.pass(), "{pts:?}");
        assert_eq!(b.subspace_action(1).order(), 168);
        let ax = check_projective_axioms(&b).unwrap();
        assert!(ax.pass(), "{ax:?}");
        assert_eq!(ax.checks[0].detail, "7 points, 7 lines");
    }
}
