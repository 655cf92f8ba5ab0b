//! Highest-weight representations of simple root systems: Weyl dimension,
//! Freudenthal characters, tensor/symmetric/exterior square decompositions,
//! duality and the real/complex/quaternionic type.
//!
//! Weights are integer vectors in the fundamental-weight basis with Bourbaki
//! node numbering.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coxeter::{crystallographic_cartan, CoxeterDiagram, DiagramError, NamedType};

pub const DEFAULT_DIM_CAP: u128 = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{0} is not a crystallographic type")]
    NotCrystallographic(String),
    #[error("weight {weight} has {got} coordinates, expected {expected}")]
    WrongLength {
        weight: String,
        got: usize,
        expected: usize,
    },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("module dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: u128, cap: u128 },
    #[error("cannot parse weight `{0}`")]
    Parse(String),
    #[error("dimension overflows u128")]
    Overflow,
    #[error("real-type convention check failed: {0}")]
    ConventionGate(String),
}

/// Integer coordinates in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// `c · ω_i` (1-based `i`).
    pub fn fundamental(rank: usize, i: usize, c: i64) -> Self {
        let mut w = Self::zero(rank);
        w.0[i - 1] = c;
        w
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    /// `2π4+π1` style rendering; `0` for the zero weight.
    pub fn pretty(&self) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match c {
                1 => format!("π{}", i + 1),
                -1 => format!("-π{}", i + 1),
                c => format!("{c}π{}", i + 1),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+").replace("+-", "-")
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = RepError;

    /// Comma-separated coordinates, e.g. `0,0,0,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| RepError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealType {
    Real,
    Complex,
    Quaternionic,
}

impl fmt::Display for RealType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealType::Real => "real",
            RealType::Complex => "complex",
            RealType::Quaternionic => "quaternionic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrrepTerm {
    pub weight: Weight,
    pub multiplicity: u64,
    pub dimension: u128,
}

/// A direct sum of irreducibles, sorted by height (descending) then
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IrrepSum {
    pub terms: Vec<IrrepTerm>,
}

impl IrrepSum {
    pub fn total_dimension(&self) -> u128 {
        self.terms
            .iter()
            .map(|t| t.multiplicity as u128 * t.dimension)
            .sum()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.terms
            .iter()
            .find(|t| &t.weight == w)
            .map_or(0, |t| t.multiplicity)
    }

    /// `weight ↦ multiplicity`.
    pub fn as_map(&self) -> BTreeMap<Weight, u64> {
        self.terms
            .iter()
            .map(|t| (t.weight.clone(), t.multiplicity))
            .collect()
    }

    pub fn pretty(&self) -> String {
        self.terms
            .iter()
            .map(|t| {
                if t.multiplicity == 1 {
                    t.weight.pretty()
                } else {
                    format!("{}·{}", t.multiplicity, t.weight.pretty())
                }
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }
}

/// Root datum of a simple crystallographic type.
#[derive(Debug, Clone)]
pub struct RootDatum {
    name: String,
    rank: usize,
    /// Row `i` is `α_i` in fundamental-weight coordinates.
    cartan: Vec<Vec<i64>>,
    /// `(α_i, α_i)/2`, short roots normalized to 1.
    half_len: Vec<i64>,
    /// Positive roots in simple-root coordinates, sorted by height.
    positive_roots: Vec<Vec<i64>>,
    /// Matching coroots in simple-coroot coordinates.
    positive_coroots: Vec<Vec<i64>>,
    dim_cap: u128,
}

impl RootDatum {
    pub fn new(name: &str) -> Result<Self, RepError> {
        let kind: NamedType = name.parse()?;
        let Some(lengths) = kind.root_lengths() else {
            return Err(RepError::NotCrystallographic(kind.to_string()));
        };
        let diagram: CoxeterDiagram = kind.diagram();
        let bonds: Vec<Vec<_>> = (1..=diagram.rank())
            .map(|i| (1..=diagram.rank()).map(|j| diagram.bond(i, j)).collect())
            .collect();
        let cartan = crystallographic_cartan(&bonds, &lengths);
        let half_len: Vec<i64> = lengths.iter().map(|l| l / 2).collect();
        let rank = cartan.len();

        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for j in 0..rank {
                let pairing: i64 = (0..rank).map(|k| beta[k] * cartan[k][j]).sum();
                let mut image = beta.clone();
                image[j] -= pairing;
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut positive_roots: Vec<Vec<i64>> = seen
            .into_iter()
            .filter(|b| b.iter().all(|&x| x >= 0))
            .collect();
        positive_roots.sort_by(|a, b| {
            a.iter()
                .sum::<i64>()
                .cmp(&b.iter().sum::<i64>())
                .then_with(|| a.cmp(b))
        });
        let positive_coroots = positive_roots
            .iter()
            .map(|c| {
                let norm: i64 = (0..rank)
                    .flat_map(|k| (0..rank).map(move |l| (k, l)))
                    .map(|(k, l)| c[k] * c[l] * cartan[k][l] * half_len[l])
                    .sum();
                let d_beta = norm / 2;
                (0..rank).map(|k| c[k] * half_len[k] / d_beta).collect()
            })
            .collect();
        Ok(RootDatum {
            name: kind.to_string(),
            rank,
            cartan,
            half_len,
            positive_roots,
            positive_coroots,
            dim_cap: DEFAULT_DIM_CAP,
        })
    }

    pub fn with_dim_cap(mut self, cap: u128) -> Self {
        self.dim_cap = cap;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// The highest root in fundamental-weight coordinates, i.e. the highest
    /// weight of the adjoint module.
    pub fn highest_root(&self) -> Weight {
        let top = self.positive_roots.last().expect("nonempty root system");
        self.root_to_weight(top)
    }

    /// Dimension of the adjoint module, `rank + 2|Φ⁺|`.
    pub fn group_dimension(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    fn root_to_weight(&self, c: &[i64]) -> Weight {
        Weight(
            (0..self.rank)
                .map(|j| (0..self.rank).map(|k| c[k] * self.cartan[k][j]).sum())
                .collect(),
        )
    }

    fn check(&self, w: &Weight) -> Result<(), RepError> {
        if w.0.len() != self.rank {
            return Err(RepError::WrongLength {
                weight: w.to_string(),
                got: w.0.len(),
                expected: self.rank,
            });
        }
        Ok(())
    }

    fn check_dominant(&self, w: &Weight) -> Result<(), RepError> {
        self.check(w)?;
        if !w.is_dominant() {
            return Err(RepError::NotDominant(w.to_string()));
        }
        Ok(())
    }

    fn pair_coroot(&self, w: &Weight, k: usize) -> i64 {
        self.positive_coroots[k]
            .iter()
            .zip(&w.0)
            .map(|(e, x)| e * x)
            .sum()
    }

    /// `⟨λ, 2ρ∨⟩ = Σ_{α>0} ⟨λ, α∨⟩`.
    pub fn height(&self, w: &Weight) -> i64 {
        (0..self.positive_roots.len())
            .map(|k| self.pair_coroot(w, k))
            .sum()
    }

    /// `(μ, α)` for `α` in simple-root coordinates.
    fn pair_root(&self, w: &[i64], alpha: &[i64]) -> i64 {
        (0..self.rank)
            .map(|k| alpha[k] * self.half_len[k] * w[k])
            .sum()
    }

    fn reflect(&self, w: &mut [i64], i: usize) {
        let c = w[i];
        if c != 0 {
            for (x, a) in w.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
        }
    }

    /// The dominant weight in the `W`-orbit of `w`.
    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        let mut v = w.0.clone();
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect(&mut v, i);
        }
        Weight(v)
    }

    fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Vec<i64>> = HashSet::from([w.0.clone()]);
        let mut out = vec![w.clone()];
        let mut k = 0;
        while k < out.len() {
            for i in 0..self.rank {
                let mut v = out[k].0.clone();
                self.reflect(&mut v, i);
                if seen.insert(v.clone()) {
                    out.push(Weight(v));
                }
            }
            k += 1;
        }
        out
    }

    fn sort_key(&self, a: &Weight, b: &Weight) -> Ordering {
        self.height(b)
            .cmp(&self.height(a))
            .then_with(|| b.0.cmp(&a.0))
    }

    fn weyl_dim_unchecked(&self, w: &Weight) -> Result<u128, RepError> {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for k in 0..self.positive_roots.len() {
            let r: i64 = self.positive_coroots[k].iter().sum();
            num *= self.pair_coroot(w, k) + r;
            den *= r;
        }
        let (q, rem) = num.div_rem(&den);
        debug_assert!(rem == BigInt::from(0));
        q.to_u128().ok_or(RepError::Overflow)
    }

    fn capped_dim(&self, w: &Weight) -> Result<u128, RepError> {
        let dim = self.weyl_dim_unchecked(w)?;
        if dim > self.dim_cap {
            return Err(RepError::CapExceeded {
                dim,
                cap: self.dim_cap,
            });
        }
        Ok(dim)
    }

    /// Multiplicities of the dominant weights of `V(λ)` (Freudenthal).
    fn dominant_character(&self, lambda: &Weight) -> BTreeMap<Weight, u64> {
        // Dominant weights below λ are linked by subtracting positive roots
        // through dominant weights; track λ − μ in root coordinates.
        let mut depth: HashMap<Weight, Vec<i64>> =
            HashMap::from([(lambda.clone(), vec![0; self.rank])]);
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(mu) = queue.pop_front() {
            let c = depth[&mu].clone();
            for alpha in &self.positive_roots {
                let nu = Weight(
                    mu.0.iter()
                        .zip(&self.root_to_weight(alpha).0)
                        .map(|(a, b)| a - b)
                        .collect(),
                );
                if nu.is_dominant() && !depth.contains_key(&nu) {
                    depth.insert(
                        nu.clone(),
                        c.iter().zip(alpha).map(|(a, b)| a + b).collect(),
                    );
                    queue.push_back(nu);
                }
            }
        }
        let mut order: Vec<(Weight, Vec<i64>)> = depth.into_iter().collect();
        order.sort_by(|a, b| {
            a.1.iter()
                .sum::<i64>()
                .cmp(&b.1.iter().sum::<i64>())
                .then_with(|| a.0.cmp(&b.0))
        });
        let two_rho_plus: Vec<i64> = lambda.0.iter().map(|x| x + 2).collect();
        let mut mult: HashMap<Weight, u64> = HashMap::new();
        for (mu, c) in order {
            if c.iter().all(|&x| x == 0) {
                mult.insert(mu, 1);
                continue;
            }
            let mut num: i64 = 0;
            for alpha in &self.positive_roots {
                let aw = self.root_to_weight(alpha);
                let mut nu = mu.0.clone();
                let mut rest = c.clone();
                loop {
                    for (x, a) in nu.iter_mut().zip(&aw.0) {
                        *x += a;
                    }
                    for (x, a) in rest.iter_mut().zip(alpha) {
                        *x -= a;
                    }
                    if rest.iter().any(|&x| x < 0) {
                        break;
                    }
                    let m = mult
                        .get(&self.dominant_representative(&Weight(nu.clone())))
                        .copied()
                        .unwrap_or(0);
                    num += m as i64 * self.pair_root(&nu, alpha);
                }
            }
            let sum: Vec<i64> = two_rho_plus.iter().zip(&mu.0).map(|(a, b)| a + b).collect();
            let den = self.pair_root(&sum, &c);
            let m = 2 * num / den;
            debug_assert_eq!(2 * num % den, 0);
            if m > 0 {
                mult.insert(mu, m as u64);
            }
        }
        mult.into_iter().collect()
    }

    fn full_character(&self, lambda: &Weight) -> BTreeMap<Weight, u64> {
        let mut out = BTreeMap::new();
        for (mu, m) in self.dominant_character(lambda) {
            for w in self.orbit(&mu) {
                out.insert(w, m);
            }
        }
        out
    }

    /// Splits a `W`-invariant weight multiset into irreducibles by repeatedly
    /// removing the character of its highest dominant weight.
    fn decompose_multiset(&self, weights: HashMap<Weight, i64>) -> IrrepSum {
        let mut dominant: HashMap<Weight, i64> = weights
            .into_iter()
            .filter(|(w, m)| w.is_dominant() && *m != 0)
            .collect();
        let mut cache: HashMap<Weight, BTreeMap<Weight, u64>> = HashMap::new();
        let mut terms = Vec::new();
        while let Some(top) = dominant
            .iter()
            .filter(|(_, &m)| m != 0)
            .map(|(w, _)| w)
            .min_by(|a, b| self.sort_key(a, b))
            .cloned()
        {
            let m = dominant[&top];
            assert!(m > 0, "negative leading multiplicity at {top}");
            let ch = cache
                .entry(top.clone())
                .or_insert_with(|| self.dominant_character(&top));
            for (w, k) in ch.iter() {
                *dominant.entry(w.clone()).or_insert(0) -= m * *k as i64;
            }
            dominant.retain(|_, v| *v != 0);
            let dimension = self.weyl_dim_unchecked(&top).expect("small module");
            terms.push(IrrepTerm {
                weight: top,
                multiplicity: m as u64,
                dimension,
            });
        }
        terms.sort_by(|a, b| self.sort_key(&a.weight, &b.weight));
        IrrepSum { terms }
    }

    fn check_cap(&self, dim: u128) -> Result<(), RepError> {
        if dim > self.dim_cap {
            return Err(RepError::CapExceeded {
                dim,
                cap: self.dim_cap,
            });
        }
        Ok(())
    }
}

/// `∏_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩`.
pub fn weyl_dim(rd: &RootDatum, lambda: &Weight) -> Result<u128, RepError> {
    rd.check_dominant(lambda)?;
    rd.weyl_dim_unchecked(lambda)
}

/// All weights of `V(λ)` with multiplicities.
pub fn character(rd: &RootDatum, lambda: &Weight) -> Result<BTreeMap<Weight, u64>, RepError> {
    rd.check_dominant(lambda)?;
    rd.capped_dim(lambda)?;
    Ok(rd.full_character(lambda))
}

/// Multiplicities of dominant weights only.
pub fn dominant_character(
    rd: &RootDatum,
    lambda: &Weight,
) -> Result<BTreeMap<Weight, u64>, RepError> {
    rd.check_dominant(lambda)?;
    rd.capped_dim(lambda)?;
    Ok(rd.dominant_character(lambda))
}

pub fn tensor_decompose(
    rd: &RootDatum,
    lambda: &Weight,
    mu: &Weight,
) -> Result<IrrepSum, RepError> {
    rd.check_dominant(lambda)?;
    rd.check_dominant(mu)?;
    let (a, b) = (rd.weyl_dim_unchecked(lambda)?, rd.weyl_dim_unchecked(mu)?);
    rd.check_cap(a.checked_mul(b).ok_or(RepError::Overflow)?)?;
    let cl = rd.full_character(lambda);
    let cm = rd.full_character(mu);
    let mut product: HashMap<Weight, i64> = HashMap::new();
    for (x, m) in &cl {
        for (y, n) in &cm {
            let s = x.add(y);
            if s.is_dominant() {
                *product.entry(s).or_insert(0) += (m * n) as i64;
            }
        }
    }
    Ok(rd.decompose_multiset(product))
}

fn square(rd: &RootDatum, lambda: &Weight, symmetric: bool) -> Result<IrrepSum, RepError> {
    rd.check_dominant(lambda)?;
    let d = rd.weyl_dim_unchecked(lambda)?;
    let dim = if symmetric {
        d * (d + 1) / 2
    } else {
        d * d.saturating_sub(1) / 2
    };
    rd.check_cap(dim)?;
    let ch: Vec<(Weight, u64)> = rd.full_character(lambda).into_iter().collect();
    let mut out: HashMap<Weight, i64> = HashMap::new();
    for (i, (x, m)) in ch.iter().enumerate() {
        let m = *m as i64;
        let diag = if symmetric {
            m * (m + 1) / 2
        } else {
            m * (m - 1) / 2
        };
        let twice = x.add(x);
        if diag != 0 && twice.is_dominant() {
            *out.entry(twice).or_insert(0) += diag;
        }
        for (y, n) in &ch[i + 1..] {
            let s = x.add(y);
            if s.is_dominant() {
                *out.entry(s).or_insert(0) += m * *n as i64;
            }
        }
    }
    Ok(rd.decompose_multiset(out))
}

/// `S²V(λ)`.
pub fn sym2_decompose(rd: &RootDatum, lambda: &Weight) -> Result<IrrepSum, RepError> {
    square(rd, lambda, true)
}

/// `Λ²V(λ)`.
pub fn alt2_decompose(rd: &RootDatum, lambda: &Weight) -> Result<IrrepSum, RepError> {
    square(rd, lambda, false)
}

/// `−w₀λ`, the highest weight of the dual module.
pub fn dual_weight(rd: &RootDatum, lambda: &Weight) -> Result<Weight, RepError> {
    rd.check_dominant(lambda)?;
    Ok(rd.dominant_representative(&lambda.neg()))
}

fn real_type_unchecked(rd: &RootDatum, lambda: &Weight) -> RealType {
    if rd.dominant_representative(&lambda.neg()) != *lambda {
        RealType::Complex
    } else if rd.height(lambda) % 2 == 0 {
        RealType::Real
    } else {
        RealType::Quaternionic
    }
}

/// Known cases the parity criterion must reproduce before it is trusted.
const REAL_TYPE_GATE: &[(&str, &[i64], RealType)] = &[
    ("C3", &[1, 0, 0], RealType::Quaternionic),
    ("C3", &[0, 1, 0], RealType::Real),
    ("C3", &[0, 0, 1], RealType::Quaternionic),
    ("G2", &[1, 0], RealType::Real),
    ("G2", &[2, 0], RealType::Real),
    ("B3", &[0, 0, 1], RealType::Real),
    ("B4", &[0, 0, 0, 1], RealType::Real),
    ("A2", &[1, 0], RealType::Complex),
];

/// Runs the real-type validation cases; every entry reports
/// `(type, weight, expected, computed)`.
pub fn real_type_gate() -> Vec<(String, Weight, RealType, RealType)> {
    REAL_TYPE_GATE
        .iter()
        .map(|(name, w, expected)| {
            let rd = RootDatum::new(name).expect("gate types are valid");
            let w = Weight(w.to_vec());
            let got = real_type_unchecked(&rd, &w);
            (name.to_string(), w, *expected, got)
        })
        .collect()
}

fn gate_passed() -> Result<(), RepError> {
    static GATE: OnceLock<Option<String>> = OnceLock::new();
    let failure = GATE.get_or_init(|| {
        real_type_gate()
            .into_iter()
            .find(|(_, _, e, g)| e != g)
            .map(|(n, w, e, g)| format!("{n} {} expected {e}, got {g}", w.pretty()))
    });
    match failure {
        Some(msg) => Err(RepError::ConventionGate(msg.clone())),
        None => Ok(()),
    }
}

/// Complex if `V(λ)` is not self-dual; otherwise real or quaternionic by the
/// parity of `⟨λ, 2ρ∨⟩`.
pub fn real_type(rd: &RootDatum, lambda: &Weight) -> Result<RealType, RepError> {
    rd.check_dominant(lambda)?;
    gate_passed()?;
    Ok(real_type_unchecked(rd, lambda))
}
