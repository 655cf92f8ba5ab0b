//! Finite permutation actions given by generators, with transitivity,
//! 2-transitivity and primitivity predicates and a Schreier–Sims order
//! computation.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("generator {index} has length {len}, expected degree {degree}")]
    Length {
        index: usize,
        len: usize,
        degree: usize,
    },
    #[error("generator {0} is not a bijection")]
    NotBijective(usize),
}

/// Images of `0..degree`; `p[x]` is the image of `x`.
pub type Perm = Vec<u32>;

fn compose(a: &[u32], b: &[u32]) -> Perm {
    // (a ∘ b)(x) = a(b(x))
    b.iter().map(|&x| a[x as usize]).collect()
}

fn invert(a: &[u32]) -> Perm {
    let mut out = vec![0; a.len()];
    for (x, &y) in a.iter().enumerate() {
        out[y as usize] = x as u32;
    }
    out
}

fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, PermError> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(PermError::Length {
                    index,
                    len: g.len(),
                    degree,
                });
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x as usize >= degree || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(PermError::NotBijective(index));
                }
            }
        }
        Ok(PermutationGroup { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Orbits on points, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.generators {
                    let y = g[x] as usize;
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Number of orbits on ordered pairs of distinct points.
    pub fn orbital_count(&self) -> usize {
        let n = self.degree;
        let mut seen = vec![false; n * n];
        let mut count = 0;
        for a in 0..n {
            for b in 0..n {
                if a == b || seen[a * n + b] {
                    continue;
                }
                count += 1;
                seen[a * n + b] = true;
                let mut queue = VecDeque::from([(a, b)]);
                while let Some((x, y)) = queue.pop_front() {
                    for g in &self.generators {
                        let (u, v) = (g[x] as usize, g[y] as usize);
                        if !seen[u * n + v] {
                            seen[u * n + v] = true;
                            queue.push_back((u, v));
                        }
                    }
                }
            }
        }
        count
    }

    /// Transitive on ordered pairs of distinct points.
    pub fn is_two_transitive(&self) -> bool {
        self.degree >= 2 && self.orbital_count() == 1
    }

    /// Transitive with no nontrivial block system.
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        (1..self.degree).all(|b| self.minimal_block(b).len() == self.degree)
    }

    /// Smallest block containing `0` and `b`.
    pub fn minimal_block(&self, b: usize) -> Vec<usize> {
        let n = self.degree;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut queue = VecDeque::new();
        parent[b] = 0;
        queue.push_back((0, b));
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let (u, v) = (
                    find(&mut parent, g[x] as usize),
                    find(&mut parent, g[y] as usize),
                );
                if u != v {
                    parent[u.max(v)] = u.min(v);
                    queue.push_back((u, v));
                }
            }
        }
        (0..n)
            .filter(|&x| find(&mut parent, x) == find(&mut parent, 0))
            .collect()
    }

    /// Group order by Schreier–Sims.
    pub fn order(&self) -> u128 {
        let n = self.degree;
        let id = identity(n);
        let mut strong: Vec<Perm> = self
            .generators
            .iter()
            .filter(|g| **g != id)
            .cloned()
            .collect();
        let mut base: Vec<usize> = Vec::new();
        for g in &strong {
            extend_base(&mut base, g);
        }
        let mut level = base.len();
        while level > 0 {
            let l = level - 1;
            let levels = build_levels(&base, &strong);
            let (gens, transversal) = &levels[l];
            let mut residue = None;
            'search: for ux in transversal.values() {
                for s in gens {
                    let sx = compose(s, ux);
                    let h = compose(&invert(&transversal[&(sx[base[l]] as usize)]), &sx);
                    if let Some(found) = sift(&levels[l + 1..], &base[l + 1..], h) {
                        residue = Some((l + 1 + found.0, found.1));
                        break 'search;
                    }
                }
            }
            match residue {
                Some((fail, r)) => {
                    if fail == base.len() {
                        extend_base(&mut base, &r);
                    }
                    strong.push(r);
                    level = fail + 1;
                }
                None => level -= 1,
            }
        }
        build_levels(&base, &strong)
            .iter()
            .map(|(_, t)| t.len() as u128)
            .product()
    }
}

type Level = (Vec<Perm>, BTreeMap<usize, Perm>);

fn extend_base(base: &mut Vec<usize>, g: &[u32]) {
    if base.iter().all(|&b| g[b] as usize == b) {
        if let Some(x) = (0..g.len()).find(|&x| g[x] as usize != x) {
            base.push(x);
        }
    }
}

/// Generators fixing the first `l` base points and a transversal
/// `x ↦ u_x` (`u_x(b_l) = x`) for each level.
fn build_levels(base: &[usize], strong: &[Perm]) -> Vec<Level> {
    (0..base.len())
        .map(|l| {
            let gens: Vec<Perm> = strong
                .iter()
                .filter(|g| base[..l].iter().all(|&b| g[b] as usize == b))
                .cloned()
                .collect();
            let n = strong.first().map_or(0, |g| g.len());
            let mut transversal = BTreeMap::new();
            transversal.insert(base[l], identity(n));
            let mut queue = VecDeque::from([base[l]]);
            while let Some(x) = queue.pop_front() {
                for g in &gens {
                    let y = g[x] as usize;
                    if !transversal.contains_key(&y) {
                        let uy = compose(g, &transversal[&x]);
                        transversal.insert(y, uy);
                        queue.push_back(y);
                    }
                }
            }
            (gens, transversal)
        })
        .collect()
}

/// Sifts `g` through the levels; on failure returns the failing level
/// (relative, `levels.len()` for a nontrivial residue) and the residue.
fn sift(levels: &[Level], base: &[usize], mut g: Perm) -> Option<(usize, Perm)> {
    for (l, (_, transversal)) in levels.iter().enumerate() {
        match transversal.get(&(g[base[l]] as usize)) {
            Some(u) => g = compose(&invert(u), &g),
            None => return Some((l, g)),
        }
    }
    if g.iter().enumerate().all(|(x, &y)| x == y as usize) {
        None
    } else {
        Some((levels.len(), g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermutationGroup {
        let mut cycle: Perm = (1..n as u32).collect();
        cycle.push(0);
        let mut swap = identity(n);
        swap.swap(0, 1);
        PermutationGroup::new(n, vec![cycle, swap]).unwrap()
    }

    fn cyclic(n: usize) -> PermutationGroup {
        let mut cycle: Perm = (1..n as u32).collect();
        cycle.push(0);
        PermutationGroup::new(n, vec![cycle]).unwrap()
    }

    #[test]
    fn symmetric_group() {
        let g = sym(5);
        assert_eq!(g.order(), 120);
        assert!(g.is_two_transitive());
        assert!(g.is_primitive());
    }

    #[test]
    fn cyclic_group() {
        let c6 = cyclic(6);
        assert_eq!(c6.order(), 6);
        assert!(c6.is_transitive());
        assert!(!c6.is_two_transitive());
        assert_eq!(c6.orbital_count(), 5);
        assert!(!c6.is_primitive());
        assert!(cyclic(7).is_primitive());
    }

    #[test]
    fn dihedral_hexagon_is_not_two_transitive() {
        let mut rot: Perm = (1..6).collect();
        rot.push(0);
        let refl: Perm = (0..6).map(|x| (6 - x) % 6).collect();
        let d6 = PermutationGroup::new(6, vec![rot, refl]).unwrap();
        assert_eq!(d6.order(), 12);
        assert!(!d6.is_two_transitive());
    }

    #[test]
    fn fano_collineations() {
        // x ↦ x + 1 and x ↦ 2x on ℤ/7 preserve the difference set {1, 2, 4};
        // together with a non-affine collineation they generate PGL(3,2).
        let shift: Perm = (0..7).map(|x| (x + 1) % 7).collect();
        let double: Perm = (0..7).map(|x| (2 * x) % 7).collect();
        let affine = PermutationGroup::new(7, vec![shift.clone(), double.clone()]).unwrap();
        assert_eq!(affine.order(), 21);
        assert!(!affine.is_two_transitive());
        assert!(affine.is_primitive());
    }

    #[test]
    fn invalid_generators_rejected() {
        assert_eq!(
            PermutationGroup::new(3, vec![vec![0, 1]]),
            Err(PermError::Length {
                index: 0,
                len: 2,
                degree: 3
            })
        );
        assert_eq!(
            PermutationGroup::new(3, vec![vec![0, 0, 1]]),
            Err(PermError::NotBijective(0))
        );
    }

    #[test]
    fn trivial_degrees() {
        let g = PermutationGroup::new(1, vec![vec![0]]).unwrap();
        assert!(g.is_transitive());
        assert!(!g.is_two_transitive());
        assert_eq!(g.order(), 1);
        let s2 = PermutationGroup::new(2, vec![vec![1, 0]]).unwrap();
        assert!(s2.is_two_transitive());
    }
}
