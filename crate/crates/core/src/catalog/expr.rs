//! Affine expressions in one family parameter (`"2n+1"`, `"4k-1"`, `"16"`)
//! and compact Lie algebra factor lists (`"su(n)"`, `"c:sp(n)"`, `"G2"`).

use std::collections::HashMap;
use std::fmt;

use crate::rep::{weyl_dim, RootDatum};

use super::CatalogError;

/// `coef·x + offset` in the family parameter `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Affine {
    pub coef: i64,
    pub offset: i64,
}

impl Affine {
    pub fn parse(s: &str) -> Result<Self, CatalogError> {
        let bad = |message: &str| CatalogError::Expression {
            expr: s.to_string(),
            message: message.to_string(),
        };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad("empty"));
        }
        let Some(pos) = t.find(|c: char| c.is_ascii_lowercase()) else {
            return t
                .parse()
                .map(|offset| Affine { coef: 0, offset })
                .map_err(|_| bad("not an integer"));
        };
        let coef = match &t[..pos] {
            "" => 1,
            c => c.parse().map_err(|_| bad("bad coefficient"))?,
        };
        let rest = &t[pos + 1..];
        let offset = match rest.chars().next() {
            None => 0,
            Some('+') => rest[1..].parse().map_err(|_| bad("bad offset"))?,
            Some('-') => -rest[1..].parse::<i64>().map_err(|_| bad("bad offset"))?,
            Some(_) => return Err(bad("expected +/- after the parameter")),
        };
        Ok(Affine { coef, offset })
    }

    pub fn is_constant(&self) -> bool {
        self.coef == 0
    }

    pub fn eval(&self, x: Option<i64>) -> Result<i64, CatalogError> {
        match (self.coef, x) {
            (0, _) => Ok(self.offset),
            (c, Some(x)) => Ok(c * x + self.offset),
            (_, None) => Err(CatalogError::Expression {
                expr: self.to_string(),
                message: "family parameter required".into(),
            }),
        }
    }

    /// Parameter values `x` with `eval(x) == target`, if any.
    pub fn solve(&self, target: i64) -> Option<i64> {
        if self.coef == 0 {
            return None;
        }
        let d = target - self.offset;
        (d % self.coef == 0).then_some(d / self.coef)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coef, self.offset) {
            (0, b) => write!(f, "{b}"),
            (a, b) => {
                if a != 1 {
                    write!(f, "{a}")?;
                }
                write!(f, "x")?;
                match b {
                    0 => Ok(()),
                    b if b > 0 => write!(f, "+{b}"),
                    b => write!(f, "{b}"),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FactorKind {
    So,
    Su,
    Sp,
    U,
    /// Abelian of the given real dimension.
    R,
    Exceptional,
}

/// One factor of a compact Lie algebra; `c:` marks complexification, which
/// doubles the real dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    complex: bool,
    kind: FactorKind,
    arg: Affine,
    name: String,
}

impl Factor {
    pub fn parse(s: &str) -> Result<Self, CatalogError> {
        let bad = |message: &str| CatalogError::Expression {
            expr: s.to_string(),
            message: message.to_string(),
        };
        let (complex, body) = match s.trim().strip_prefix("c:") {
            Some(b) => (true, b),
            None => (false, s.trim()),
        };
        if matches!(body, "G2" | "F4" | "E6" | "E7" | "E8") {
            return Ok(Factor {
                complex,
                kind: FactorKind::Exceptional,
                arg: Affine { coef: 0, offset: 0 },
                name: body.to_string(),
            });
        }
        let (head, arg) = body
            .split_once('(')
            .ok_or_else(|| bad("expected name(arg)"))?;
        let arg = arg.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
        let kind = match head {
            "so" | "spin" => FactorKind::So,
            "su" => FactorKind::Su,
            "sp" => FactorKind::Sp,
            "u" => FactorKind::U,
            "r" => FactorKind::R,
            _ => return Err(bad("unknown factor")),
        };
        Ok(Factor {
            complex,
            kind,
            arg: Affine::parse(arg)?,
            name: head.to_string(),
        })
    }

    /// Simple components as root-system names, plus the abelian dimension.
    pub fn components(&self, x: Option<i64>) -> Result<(Vec<String>, u64), CatalogError> {
        let n = self.arg.eval(x)?;
        if n < 0 {
            return Err(CatalogError::Expression {
                expr: format!("{}({})", self.name, self.arg),
                message: format!("negative argument {n}"),
            });
        }
        let (simple, abelian): (Vec<String>, u64) = match (self.kind, n) {
            (FactorKind::Exceptional, _) => (vec![self.name.clone()], 0),
            (FactorKind::R, n) => (vec![], n as u64),
            (FactorKind::So, 0 | 1) => (vec![], 0),
            (FactorKind::So, 2) => (vec![], 1),
            (FactorKind::So, 3) => (vec!["A1".into()], 0),
            (FactorKind::So, 4) => (vec!["A1".into(), "A1".into()], 0),
            (FactorKind::So, 6) => (vec!["A3".into()], 0),
            (FactorKind::So, n) if n % 2 == 1 => (vec![format!("B{}", n / 2)], 0),
            (FactorKind::So, n) => (vec![format!("D{}", n / 2)], 0),
            (FactorKind::Su | FactorKind::U, 0) => (vec![], 0),
            (FactorKind::Su, 1) => (vec![], 0),
            (FactorKind::U, 1) => (vec![], 1),
            (FactorKind::Su, n) => (vec![format!("A{}", n - 1)], 0),
            (FactorKind::U, n) => (vec![format!("A{}", n - 1)], 1),
            (FactorKind::Sp, 0) => (vec![], 0),
            (FactorKind::Sp, 1) => (vec!["A1".into()], 0),
            (FactorKind::Sp, n) => (vec![format!("C{n}")], 0),
        };
        if self.complex {
            let doubled = simple.iter().flat_map(|s| [s.clone(), s.clone()]).collect();
            Ok((doubled, 2 * abelian))
        } else {
            Ok((simple, abelian))
        }
    }
}

/// Real dimension of a product of factors, with simple dimensions taken
/// from adjoint modules and memoized.
#[derive(Debug, Default)]
pub struct DimensionOracle {
    cache: HashMap<String, u64>,
}

impl DimensionOracle {
    pub fn simple(&mut self, name: &str) -> Result<u64, CatalogError> {
        if let Some(&d) = self.cache.get(name) {
            return Ok(d);
        }
        let rd = RootDatum::new(name)?;
        let d = weyl_dim(&rd, &rd.highest_root())? as u64;
        self.cache.insert(name.to_string(), d);
        Ok(d)
    }

    pub fn dimension(&mut self, factors: &[String], x: Option<i64>) -> Result<u64, CatalogError> {
        let mut total = 0;
        for f in factors {
            let (simple, abelian) = Factor::parse(f)?.components(x)?;
            total += abelian;
            for s in simple {
                total += self.simple(&s)?;
            }
        }
        Ok(total)
    }

    /// Simple types seen so far, with their adjoint dimensions.
    pub fn seen(&self) -> Vec<(String, u64)> {
        let mut v: Vec<_> = self.cache.iter().map(|(k, &d)| (k.clone(), d)).collect();
        v.sort();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_round_trip() {
        for (s, a, b) in [
            ("2n+1", 2, 1),
            ("4k-1", 4, -1),
            ("n", 1, 0),
            ("16", 0, 16),
            ("2k+2", 2, 2),
        ] {
            assert_eq!(
                Affine::parse(s).unwrap(),
                Affine { coef: a, offset: b },
                "{s}"
            );
        }
        assert!(Affine::parse("n*2").is_err());
        assert!(Affine::parse("").is_err());
        let e = Affine::parse("4n").unwrap();
        assert_eq!(e.solve(16), Some(4));
        assert_eq!(e.solve(15), None);
        assert_eq!(e.eval(Some(3)).unwrap(), 12);
        assert!(e.eval(None).is_err());
    }

    #[test]
    fn classical_dimensions() {
        let mut o = DimensionOracle::default();
        let dim = |o: &mut DimensionOracle, f: &str, n: i64| {
            o.dimension(&[f.to_string()], Some(n)).unwrap()
        };
        for n in 0..10 {
            assert_eq!(dim(&mut o, "so(n)", n), (n * (n - 1) / 2) as u64, "so({n})");
            assert_eq!(dim(&mut o, "sp(n)", n), (n * (2 * n + 1)) as u64, "sp({n})");
            assert_eq!(dim(&mut o, "u(n)", n), (n * n) as u64, "u({n})");
            if n >= 1 {
                assert_eq!(dim(&mut o, "su(n)", n), (n * n - 1) as u64, "su({n})");
            }
        }
        assert_eq!(dim(&mut o, "c:su(n)", 2), 6);
        assert_eq!(
            o.dimension(&["G2".into(), "r(1)".into()], None).unwrap(),
            15
        );
        assert_eq!(o.dimension(&["E6".into()], None).unwrap(), 78);
    }
}
