//! Exact scalars for the geometric representation of Coxeter groups.
//!
//! Bond orders `m` contribute the numbers `2cos(π/m) = ζ + ζ⁻¹` with
//! `ζ = exp(iπ/m)`, so every quantity we ever need lives in a cyclotomic field
//! `ℚ(ζ_N)`. Elements are stored as rational coordinates over the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}` and reduced modulo the cyclotomic polynomial
//! `Φ_N`, which makes equality a coefficient comparison. The sign of a real
//! element is decided by a floating-point evaluation with an error bound and,
//! when that is inconclusive, by rational interval arithmetic at increasing
//! precision.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ring operations shared by the integral fast path (`i64`) and
/// [`AlgebraicScalar`].
///
/// Every value must be real; `signum` compares against zero.
pub trait Scalar: Clone + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn signum(&self) -> Ordering;
    fn negated(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        let prod = a.times(b).negated();
        *self = self.plus(&prod);
    }

    fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn signum(&self) -> Ordering {
        self.cmp(&0)
    }
    fn negated(&self) -> Self {
        -*self
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
}

/// An element of the real subfield of some cyclotomic field `ℚ(ζ_N)`.
///
/// Rational elements are always stored with conductor 1. Values of
/// different conductors interoperate by lifting both operands to the least
/// common multiple of the conductors.
#[derive(Clone)]
pub struct AlgebraicScalar {
    conductor: u32,
    /// Power-basis coordinates, trailing zeros trimmed, length `< φ(N)`.
    coeffs: Vec<BigRational>,
}

impl AlgebraicScalar {
    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = AlgebraicScalar {
            conductor: 1,
            coeffs: vec![q],
        };
        s.normalize();
        s
    }

    /// `2cos(π/m)`, the off-diagonal magnitude of the symmetric Cartan data
    /// of a bond of order `m`. `m = 0` is not allowed.
    pub fn two_cos_pi_over(m: u32) -> Self {
        assert!(m >= 1, "bond order must be positive");
        let n = 2 * m;
        // ζ + ζ^{-1} = ζ + ζ^{n-1}
        let mut raw = vec![BigRational::zero(); n as usize];
        raw[1 % n as usize] += BigRational::one();
        raw[(n - 1) as usize] += BigRational::one();
        Self::from_raw(n, raw)
    }

    /// Builds an element of `ℚ(ζ_N)` from arbitrary power coordinates
    /// (any length; reduced modulo `Φ_N`).
    pub fn from_raw(conductor: u32, raw: Vec<BigRational>) -> Self {
        assert!(conductor >= 1);
        let coeffs = reduce_mod_cyclotomic(raw, conductor);
        let mut s = AlgebraicScalar { conductor, coeffs };
        s.normalize();
        s
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| {
            self.coeffs
                .first()
                .cloned()
                .unwrap_or_else(BigRational::zero)
        })
    }

    pub fn as_integer(&self) -> Option<i64> {
        let q = self.as_rational()?;
        if q.is_integer() {
            q.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Re-expresses the element in `ℚ(ζ_target)`; `target` must be a multiple
    /// of the current conductor. The result is not collapsed back.
    fn lifted_coeffs(&self, target: u32) -> Vec<BigRational> {
        debug_assert_eq!(target % self.conductor, 0);
        if target == self.conductor {
            return self.coeffs.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[j * step] = c.clone();
        }
        reduce_mod_cyclotomic(raw, target)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.len() <= 1 {
            self.conductor = 1;
        }
    }

    fn binary(
        &self,
        other: &Self,
        op: impl Fn(Vec<BigRational>, Vec<BigRational>, u32) -> Vec<BigRational>,
    ) -> Self {
        let n = lcm(self.conductor, other.conductor);
        let a = self.lifted_coeffs(n);
        let b = other.lifted_coeffs(n);
        let mut out = AlgebraicScalar {
            conductor: n,
            coeffs: op(a, b, n),
        };
        out.normalize();
        out
    }

    /// Floating-point value (real part of the cyclotomic expression).
    pub fn to_f64(&self) -> f64 {
        let n = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                c.to_f64().unwrap_or(f64::NAN) * (std::f64::consts::TAU * j as f64 / n).cos()
            })
            .sum()
    }

    /// Conductor-independent trace `Tr(x) / [ℚ(ζ_N):ℚ]`; used for hashing.
    fn normalized_trace(&self) -> BigRational {
        let n = self.conductor as u64;
        let mut acc = BigRational::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = (j as u64).gcd(&n);
            let d = n / g;
            let mu = mobius(d);
            if mu != 0 {
                acc += c * BigRational::new(BigInt::from(mu), BigInt::from(euler_phi(d)));
            }
        }
        acc
    }

    fn exact_sign(&self) -> Ordering {
        if self.coeffs.is_empty() {
            return Ordering::Equal;
        }
        if let Some(q) = self.as_rational() {
            return q.cmp(&BigRational::zero());
        }
        let approx = self.to_f64();
        let magnitude: f64 = self
            .coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .sum();
        let bound = magnitude * 1e-13 + f64::MIN_POSITIVE;
        if approx.is_finite() && approx.abs() > bound {
            return approx.partial_cmp(&0.0).unwrap_or(Ordering::Equal);
        }
        self.sign_by_intervals()
    }

    /// Rigorous sign of a nonzero element via rational enclosures of
    /// `cos(2πj/N)`, doubling the working precision until zero is excluded.
    fn sign_by_intervals(&self) -> Ordering {
        let mut bits = 64u32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
            assert!(bits <= 1 << 16, "sign decision failed to converge");
        }
    }

    fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let pi = pi_enclosure(bits);
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (clo, chi) = cos_enclosure(j as u32, self.conductor, &pi, bits);
            if c.is_positive() {
                lo += c * &clo;
                hi += c * &chi;
            } else {
                lo += c * &chi;
                hi += c * &clo;
            }
        }
        (lo, hi)
    }
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let n = lcm(self.conductor, other.conductor);
        self.lifted_coeffs(n) == other.lifted_coeffs(n)
    }
}

impl Eq for AlgebraicScalar {}

impl Hash for AlgebraicScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized_trace().hash(state);
    }
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (≈{:.6})", self.to_f64())
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ζ{}", self.conductor)?,
                _ => write!(f, "({c})ζ{}^{j}", self.conductor)?,
            }
        }
        Ok(())
    }
}

impl Add for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn add(self, rhs: Self) -> AlgebraicScalar {
        self.binary(rhs, |mut a, b, _| {
            if a.len() < b.len() {
                a.resize(b.len(), BigRational::zero());
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        })
    }
}

impl Sub for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn sub(self, rhs: Self) -> AlgebraicScalar {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;
    fn neg(self) -> AlgebraicScalar {
        AlgebraicScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &AlgebraicScalar {
    type Output = AlgebraicScalar;

    // polynomial product in the power basis
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> AlgebraicScalar {
        if let (Some(p), Some(q)) = (self.as_rational(), rhs.as_rational()) {
            return AlgebraicScalar::from_rational(p * q);
        }
        self.binary(rhs, |a, b, n| {
            if a.is_empty() || b.is_empty() {
                return Vec::new();
            }
            let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] += x * y;
                }
            }
            reduce_mod_cyclotomic(prod, n)
        })
    }
}

impl Scalar for AlgebraicScalar {
    fn zero() -> Self {
        AlgebraicScalar {
            conductor: 1,
            coeffs: Vec::new(),
        }
    }
    fn one() -> Self {
        Self::from_integer(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn signum(&self) -> Ordering {
        self.exact_sign()
    }
    fn negated(&self) -> Self {
        -self
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl From<i64> for AlgebraicScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub(crate) fn cyclotomic_polynomial(n: u32) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            poly = exact_monic_division(&poly, &divisor);
        }
    }
    let poly: Arc<[i64]> = poly.into();
    cache
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(n, poly.clone());
    poly
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division by Φ_d not exact");
    quot
}

fn reduce_mod_cyclotomic(mut raw: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    // ζ^n = 1 first, which keeps the long division short.
    if raw.len() > n as usize {
        let mut folded = vec![BigRational::zero(); n as usize];
        for (i, c) in raw.into_iter().enumerate() {
            folded[i % n as usize] += c;
        }
        raw = folded;
    }
    for k in (deg..raw.len()).rev() {
        if raw[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut raw[k], BigRational::zero());
        for (i, &p) in phi[..deg].iter().enumerate() {
            if p != 0 {
                raw[k - deg + i] -= &c * BigRational::from_integer(BigInt::from(p));
            }
        }
    }
    raw.truncate(deg);
    while raw.last().is_some_and(Zero::is_zero) {
        raw.pop();
    }
    raw
}

fn pow2(bits: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << bits as usize)
}

/// Enclosure of `arctan(1/k)` to within `2^-bits`.
fn arctan_inv_enclosure(k: u32, bits: u32) -> (BigRational, BigRational) {
    let eps = pow2(bits).recip();
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = k.clone();
    let mut sum = BigRational::zero();
    let mut n = 0u64;
    loop {
        let term = BigRational::new(BigInt::one(), &power * BigInt::from(2 * n + 1));
        if term < eps {
            // Alternating series with decreasing terms: the limit lies
            // between the partial sum and the partial sum plus next term.
            return if n.is_multiple_of(2) {
                (sum.clone(), sum + term)
            } else {
                (sum.clone() - term, sum)
            };
        }
        if n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &k2;
        n += 1;
    }
}

fn pi_enclosure(bits: u32) -> (BigRational, BigRational) {
    // Machin: π = 16·atan(1/5) − 4·atan(1/239)
    let (a_lo, a_hi) = arctan_inv_enclosure(5, bits + 6);
    let (b_lo, b_hi) = arctan_inv_enclosure(239, bits + 6);
    let sixteen = BigRational::from_integer(16.into());
    let four = BigRational::from_integer(4.into());
    (&sixteen * a_lo - &four * b_hi, sixteen * a_hi - four * b_lo)
}

fn round_down_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    (x * &scale).floor() / scale
}

/// Enclosure of `cos(2πj/n)`.
fn cos_enclosure(
    j: u32,
    n: u32,
    pi: &(BigRational, BigRational),
    bits: u32,
) -> (BigRational, BigRational) {
    let j = j % n;
    let frac = BigRational::new(BigInt::from(2 * j), BigInt::from(n));
    let theta = round_down_dyadic(&(&frac * &pi.0), bits);
    // |θ_true − θ| ≤ frac·(π_hi − π_lo) + 2^-bits, and cos is 1-Lipschitz.
    let mut err = &frac * (&pi.1 - &pi.0) + pow2(bits).recip();
    let eps = pow2(bits).recip();
    let theta2 = &theta * &theta;
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut k = 0u64;
    loop {
        // Terms decrease once (2k+1)(2k+2) > θ², which holds for k ≥ 4 here.
        if k >= 4 && term.abs() < eps {
            err += term.abs();
            break;
        }
        sum += &term;
        term =
            -(&term * &theta2) / BigRational::from_integer(BigInt::from((2 * k + 1) * (2 * k + 2)));
        k += 1;
    }
    (&sum - &err, sum + err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(&*cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(10), &[1, -1, 1, -1, 1]);
        assert_eq!(&*cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(24).len() - 1, 8);
    }

    #[test]
    fn small_bond_values_are_rational() {
        assert_eq!(AlgebraicScalar::two_cos_pi_over(2), AlgebraicScalar::zero());
        assert_eq!(AlgebraicScalar::two_cos_pi_over(3), AlgebraicScalar::one());
        assert_eq!(AlgebraicScalar::two_cos_pi_over(1).as_integer(), Some(-2));
        assert!(!AlgebraicScalar::two_cos_pi_over(4).is_rational());
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let s = AlgebraicScalar::two_cos_pi_over(4);
        assert_eq!((&s * &s).as_integer(), Some(2));
        assert!((s.to_f64() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn golden_ratio_identity() {
        // τ = 2cos(π/5) satisfies τ² = τ + 1.
        let t = AlgebraicScalar::two_cos_pi_over(5);
        assert_eq!(&t * &t, &t + &AlgebraicScalar::one());
    }

    #[test]
    fn mixed_conductors_lift() {
        // 2cos(π/6)² = 3 and 2cos(π/4)² = 2 live in different fields.
        let a = AlgebraicScalar::two_cos_pi_over(6);
        let b = AlgebraicScalar::two_cos_pi_over(4);
        let ab = &a * &b; // √6
        assert_eq!((&ab * &ab).as_integer(), Some(6));
        assert_eq!(ab.conductor(), 24);
        assert_eq!(&(&ab - &ab), &AlgebraicScalar::zero());
    }

    #[test]
    fn equality_hash_consistent_across_conductors() {
        use std::collections::hash_map::DefaultHasher;
        let s = AlgebraicScalar::two_cos_pi_over(4);
        let lifted = AlgebraicScalar::from_raw(24, s.lifted_coeffs(24));
        assert_eq!(s, lifted);
        let h = |x: &AlgebraicScalar| {
            let mut st = DefaultHasher::new();
            x.hash(&mut st);
            st.finish()
        };
        assert_eq!(h(&s), h(&lifted));
    }

    #[test]
    fn signs() {
        let sqrt2 = AlgebraicScalar::two_cos_pi_over(4);
        let three_halves = AlgebraicScalar::from_rational(q(3, 2));
        assert_eq!((&sqrt2 - &three_halves).signum(), Ordering::Less);
        assert_eq!(
            (&sqrt2 - &AlgebraicScalar::one()).signum(),
            Ordering::Greater
        );
        assert_eq!(AlgebraicScalar::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn sign_of_tiny_pell_unit_uses_intervals() {
        // a − b√2 with a² − 2b² = 1 is positive and about 1/(2a).
        let (mut a, mut b) = (BigInt::from(3), BigInt::from(2));
        for _ in 0..25 {
            let (na, nb) = (
                BigInt::from(3) * &a + BigInt::from(4) * &b,
                BigInt::from(2) * &a + BigInt::from(3) * &b,
            );
            a = na;
            b = nb;
        }
        assert_eq!(&a * &a - BigInt::from(2) * &b * &b, BigInt::one());
        let sqrt2 = AlgebraicScalar::two_cos_pi_over(4);
        let x = &AlgebraicScalar::from_rational(BigRational::from_integer(a))
            - &(&AlgebraicScalar::from_rational(BigRational::from_integer(b)) * &sqrt2);
        assert_eq!(x.signum(), Ordering::Greater);
        assert_eq!((-&x).signum(), Ordering::Less);
    }

    #[test]
    fn pi_enclosure_is_tight() {
        let (lo, hi) = pi_enclosure(80);
        assert!(lo.to_f64().unwrap() <= std::f64::consts::PI);
        assert!(hi.to_f64().unwrap() >= std::f64::consts::PI);
        assert!((hi - lo) < pow2(79).recip());
    }
}
