use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::diagram::CoxeterDiagram;
use crate::scalar::{AlgebraicScalar, Scalar};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {letter} is not a node of a rank-{rank} diagram")]
    InvalidLetter { letter: usize, rank: usize },
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("the Coxeter group is infinite")]
    Infinite,
    #[error("the Coxeter group has {order} elements, above the limit {limit}")]
    TooLarge { order: u128, limit: u128 },
    #[error("cannot parse word `{0}`")]
    Parse(String),
}

/// A word in the simple reflections, letters 1-based.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: impl Into<Vec<usize>>) -> Self {
        Word(letters.into())
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn validate(&self, d: &CoxeterDiagram) -> Result<(), WordError> {
        let rank = d.rank();
        match self.0.iter().find(|&&a| a == 0 || a > rank) {
            Some(&letter) => Err(WordError::InvalidLetter { letter, rank }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Accepts `1,2,1`, `[1, 2, 1]` or the empty word `[]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .trim();
        if inner.is_empty() {
            return Ok(Word::identity());
        }
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| WordError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// `v ← s_i(v)` in fundamental-weight coordinates (0-based `i`):
/// `s_i(v) = v − ⟨v, α_i∨⟩ α_i` with `⟨v, α_i∨⟩ = v_i`.
pub(crate) fn reflect_in_place<S: Scalar>(cartan: &[Vec<S>], i: usize, v: &mut [S]) {
    if v[i].is_zero() {
        return;
    }
    let c = v[i].clone();
    for (x, a) in v.iter_mut().zip(&cartan[i]) {
        x.sub_mul(&c, a);
    }
}

/// `β ← s_j(β)` for `β` in simple-root coordinates (0-based `j`).
fn reflect_root<S: Scalar>(cartan: &[Vec<S>], j: usize, beta: &mut [S]) {
    let mut pairing = S::zero();
    for (k, b) in beta.iter().enumerate() {
        if !b.is_zero() {
            pairing = pairing.plus(&b.times(&cartan[k][j]));
        }
    }
    if !pairing.is_zero() {
        beta[j] = beta[j].plus(&pairing.negated());
    }
}

fn root_is_negative<S: Scalar>(beta: &[S]) -> bool {
    // Roots have all coordinates of one sign.
    beta.iter()
        .find(|b| !b.is_zero())
        .is_some_and(|b| b.is_negative())
}

/// Cartan data to compute with: the integral fast path is only taken for
/// finite types, where coordinates stay bounded.
enum Cartan<'a> {
    Integral(&'a [Vec<i64>]),
    Algebraic(&'a [Vec<AlgebraicScalar>]),
}

fn cartan_of(d: &CoxeterDiagram) -> Cartan<'_> {
    match d.integral_cartan() {
        Some(c) if d.is_finite() => Cartan::Integral(c),
        _ => Cartan::Algebraic(d.cartan()),
    }
}

macro_rules! dispatch {
    ($d:expr, $f:ident($($arg:expr),*)) => {
        match cartan_of($d) {
            Cartan::Integral(c) => $f(c, $($arg),*),
            Cartan::Algebraic(c) => $f(c, $($arg),*),
        }
    };
}

/// Applies the simple reflection `s_i` (1-based) to a vector in
/// fundamental-weight coordinates.
pub fn simple_reflection(
    d: &CoxeterDiagram,
    i: usize,
    v: &[AlgebraicScalar],
) -> Result<Vec<AlgebraicScalar>, WordError> {
    Word::new(vec![i]).validate(d)?;
    if v.len() != d.rank() {
        return Err(WordError::DimensionMismatch {
            got: v.len(),
            expected: d.rank(),
        });
    }
    let mut out = v.to_vec();
    reflect_in_place(d.cartan(), i - 1, &mut out);
    Ok(out)
}

/// `w(α_s)` in simple-root coordinates.
pub fn root_image(
    d: &CoxeterDiagram,
    w: &Word,
    s: usize,
) -> Result<Vec<AlgebraicScalar>, WordError> {
    w.validate(d)?;
    Word::new(vec![s]).validate(d)?;
    let cartan = d.cartan();
    let mut beta = vec![AlgebraicScalar::zero(); d.rank()];
    beta[s - 1] = AlgebraicScalar::one();
    for &a in w.letters().iter().rev() {
        reflect_root(cartan, a - 1, &mut beta);
    }
    Ok(beta)
}

fn is_reduced_with<S: Scalar>(cartan: &[Vec<S>], w: &[usize]) -> bool {
    let n = cartan.len();
    for r in 0..w.len() {
        let mut beta = vec![S::zero(); n];
        beta[w[r] - 1] = S::one();
        for &a in w[..r].iter().rev() {
            reflect_root(cartan, a - 1, &mut beta);
        }
        if root_is_negative(&beta) {
            return false;
        }
    }
    true
}

/// Whether `w` is a reduced expression: every prefix `u` followed by the
/// next letter `s` satisfies `u(α_s) > 0`.
pub fn is_reduced(d: &CoxeterDiagram, w: &Word) -> Result<bool, WordError> {
    w.validate(d)?;
    Ok(dispatch!(d, is_reduced_with(w.letters())))
}

fn normal_form_with<S: Scalar>(cartan: &[Vec<S>], w: &[usize]) -> Vec<usize> {
    let n = cartan.len();
    let mut v = vec![S::one(); n];
    for &a in w.iter().rev() {
        reflect_in_place(cartan, a - 1, &mut v);
    }
    let mut out = Vec::new();
    while let Some(i) = v.iter().position(|x| x.is_negative()) {
        out.push(i + 1);
        reflect_in_place(cartan, i, &mut v);
    }
    out
}

/// The lexicographically smallest reduced word for the element `w`.
///
/// The element is determined by `w(ρ)`; peeling off the smallest left
/// descent at each step produces the normal form.
pub fn normal_form(d: &CoxeterDiagram, w: &Word) -> Result<Word, WordError> {
    w.validate(d)?;
    Ok(Word(dispatch!(d, normal_form_with(w.letters()))))
}

/// Length of the group element represented by `w`.
pub fn element_length(d: &CoxeterDiagram, w: &Word) -> Result<usize, WordError> {
    normal_form(d, w).map(|nf| nf.len())
}

fn enumerate_with<S: Scalar>(cartan: &[Vec<S>]) -> Vec<Word> {
    let n = cartan.len();
    let rho = vec![S::one(); n];
    let mut index: HashMap<Vec<S>, usize> = HashMap::new();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut vectors: Vec<Vec<S>> = vec![rho.clone()];
    index.insert(rho, 0);
    let mut layer = vec![0usize];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &k in &layer {
            for j in 0..n {
                let mut u = vectors[k].clone();
                reflect_in_place(cartan, j, &mut u);
                if index.contains_key(&u) {
                    continue;
                }
                // Unseen, so one longer than `k`; its first letter is the
                // smallest left descent and the rest is already known.
                let i = u
                    .iter()
                    .position(|x| x.is_negative())
                    .expect("non-identity has a descent");
                let mut shorter = u.clone();
                reflect_in_place(cartan, i, &mut shorter);
                let mut nf = vec![i + 1];
                nf.extend_from_slice(&words[index[&shorter]]);
                let id = vectors.len();
                index.insert(u.clone(), id);
                vectors.push(u);
                words.push(nf);
                next.push(id);
            }
        }
        layer = next;
    }
    let mut out: Vec<Word> = words.into_iter().map(Word).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All elements of a finite Coxeter group as normal-form words, sorted by
/// length then lexicographically.
pub fn enumerate_elements(d: &CoxeterDiagram, limit: u128) -> Result<Vec<Word>, WordError> {
    let order = d.group_order().finite().ok_or(WordError::Infinite)?;
    if order > limit {
        return Err(WordError::TooLarge { order, limit });
    }
    Ok(dispatch!(d, enumerate_with()))
}
