//! Linear algebra over a prime field `F_p` with small `p`.

use serde::Serialize;

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn inv(a: u8, p: u8) -> u8 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u32, p as u32 - 2, 1u32);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u32;
        }
        base = base * base % p as u32;
        exp >>= 1;
    }
    acc as u8
}

/// Smallest generator of `F_p^*`.
pub(crate) fn primitive_root(p: u8) -> u8 {
    (1..p)
        .find(|&g| {
            let mut x = 1u32;
            (1..p - 1).all(|_| {
                x = x * g as u32 % p as u32;
                x != 1
            })
        })
        .unwrap_or(1)
}

/// Reduces rows to canonical reduced row-echelon form in place and drops
/// zero rows; returns the rank.
pub(crate) fn rref(rows: &mut Vec<Vec<u8>>, p: u8) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let f = inv(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u32 * f as u32 % p as u32) as u8;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let m = rows[r][c] as u32;
                for k in 0..cols {
                    let sub = m * rows[rank][k] as u32 % p as u32;
                    rows[r][k] = ((rows[r][k] as u32 + p as u32 - sub) % p as u32) as u8;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rank
}

/// A subspace of `F_p^n` stored by its reduced row-echelon basis, so equal
/// subspaces have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subspace {
    rows: Vec<Vec<u8>>,
}

impl Subspace {
    pub(crate) fn span(mut rows: Vec<Vec<u8>>, p: u8) -> Self {
        rref(&mut rows, p);
        Subspace { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// `dim(self + other)`.
    pub(crate) fn join_dim(&self, other: &Subspace, p: u8) -> usize {
        let mut rows: Vec<Vec<u8>> = self.rows.iter().chain(&other.rows).cloned().collect();
        rref(&mut rows, p)
    }

    pub(crate) fn meet_dim(&self, other: &Subspace, p: u8) -> usize {
        self.dim() + other.dim() - self.join_dim(other, p)
    }

    pub(crate) fn contains(&self, other: &Subspace, p: u8) -> bool {
        self.join_dim(other, p) == self.dim()
    }

    /// Image under `v ↦ v·M`.
    pub(crate) fn transform(&self, m: &[Vec<u8>], p: u8) -> Subspace {
        let n = m.len();
        let rows = self
            .rows
            .iter()
            .map(|v| {
                (0..n)
                    .map(|c| (0..n).map(|k| v[k] as u32 * m[k][c] as u32).sum::<u32>() % p as u32)
                    .map(|x| x as u8)
                    .collect()
            })
            .collect();
        Subspace::span(rows, p)
    }
}

/// All `d`-dimensional subspaces of `F_p^n`, sorted.
pub(crate) fn subspaces(n: usize, d: usize, p: u8) -> Vec<Subspace> {
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..d).collect();
    loop {
        // Free positions: row r, column c > pivots[r], c not a pivot.
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| {
                ((pivots[r] + 1)..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect::<Vec<_>>();
        let total = (p as usize).pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![0u8; n]; d];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for &(r, c) in &free {
                rows[r][c] = (code % p as usize) as u8;
                code /= p as usize;
            }
            out.push(Subspace { rows });
        }
        // next combination
        let Some(k) = (0..d).rev().find(|&k| pivots[k] < n - d + k) else {
            break;
        };
        pivots[k] += 1;
        for t in k + 1..d {
            pivots[t] = pivots[t - 1] + 1;
        }
    }
    out.sort();
    out
}

/// Gaussian binomial `[n choose d]_q`.
pub(crate) fn gaussian_binomial(n: u32, d: u32, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..d {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for (n, p) in [(3usize, 2u8), (4, 2), (3, 3), (4, 3)] {
            for d in 0..=n {
                let subs = subspaces(n, d, p);
                assert_eq!(
                    subs.len() as u128,
                    gaussian_binomial(n as u32, d as u32, p as u128),
                    "n={n} d={d} p={p}"
                );
                let mut dedup = subs.clone();
                dedup.dedup();
                assert_eq!(dedup.len(), subs.len());
            }
        }
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(vec![vec![1, 1, 0], vec![0, 1, 1]], 2);
        let b = Subspace::span(vec![vec![1, 0, 1], vec![1, 1, 0]], 2);
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        let line = Subspace::span(vec![vec![2, 1, 0]], 3);
        assert_eq!(line.basis(), &[vec![1, 2, 0]]);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(2), 1);
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(7), 3);
        assert!(is_prime(13) && !is_prime(9) && !is_prime(1));
    }
}
