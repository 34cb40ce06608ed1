//! Polynomial types: integer multivariate input polynomials with a small
//! expression grammar and a JSON sparse-monomial form, plus the exact
//! rational uni- and bivariate rings used by the resolution engine.

pub mod bivariate;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use bivariate::Poly2;
pub use univariate::UPoly;

const VARIABLE_ORDER: [&str; 4] = ["x", "y", "z", "w"];

/// Sparse polynomial with integer coefficients in named variables.
///
/// Exponent vectors are indexed by position in `vars`. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, i64>,
}

/// JSON form: `{"vars": ["x","y"], "terms": [{"exp": [2,0], "coeff": 1}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub vars: Vec<String>,
    pub terms: Vec<MonomialDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialDoc {
    pub exp: Vec<u32>,
    pub coeff: i64,
}

fn overflow() -> Error {
    Error::Domain("integer coefficient overflow".into())
}

impl Polynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn from_terms(vars: &[&str], terms: &[(&[u32], i64)]) -> Result<Self> {
        let mut p = Self::zero(vars.iter().map(|s| s.to_string()).collect());
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::Domain("exponent vector length mismatch".into()));
            }
            p.add_term(e.to_vec(), *c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let entry = self.terms.entry(exp.clone()).or_insert(0);
        *entry = entry.checked_add(c).ok_or_else(overflow)?;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
        Ok(())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> i64 {
        self.terms.get(&vec![0; self.vars.len()]).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Order of vanishing at the origin (`None` for zero).
    pub fn multiplicity(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// Lowest-degree homogeneous part.
    pub fn initial_form(&self) -> Self {
        let mu = self.multiplicity().unwrap_or(0);
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == mu)
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    /// Appends `extra` unused variables (named after the existing ones).
    pub fn with_extra_vars(&self, extra: usize) -> Self {
        let mut vars = self.vars.clone();
        let mut next = 0;
        while vars.len() < self.vars.len() + extra {
            let name = format!("v{next}");
            next += 1;
            if !vars.contains(&name) {
                vars.push(name);
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(vars.len(), 0);
                (e, *c)
            })
            .collect();
        Self { vars, terms }
    }

    /// Rational bivariate form in `(x, y)`; univariate input uses `y`-free terms.
    pub fn to_poly2(&self) -> Result<Poly2> {
        if self.vars.len() > 2 {
            return Err(Error::UnsupportedDimension {
                operation: "plane curve conversion",
                dim: self.vars.len() as u32,
            });
        }
        Ok(Poly2::from_terms(self.terms.iter().map(|(e, c)| {
            let a = e.first().copied().unwrap_or(0);
            let b = e.get(1).copied().unwrap_or(0);
            ((a, b), BigRational::from_integer((*c).into()))
        })))
    }

    pub fn to_doc(&self) -> PolynomialDoc {
        PolynomialDoc {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| MonomialDoc { exp: e.clone(), coeff: *c }).collect(),
        }
    }

    pub fn from_doc(doc: &PolynomialDoc) -> Result<Self> {
        let mut p = Self::zero(doc.vars.clone());
        for t in &doc.terms {
            if t.exp.len() != doc.vars.len() {
                return Err(Error::Domain(format!("monomial {:?} does not match {} variables", t.exp, doc.vars.len())));
            }
            p.add_term(t.exp.clone(), t.coeff)?;
        }
        Ok(p)
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort_by_key(|v| var_rank(v));
        (self.reindex(&vars), other.reindex(&vars))
    }

    fn reindex(&self, vars: &[String]) -> Self {
        let pos: Vec<usize> = self.vars.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; vars.len()];
                for (i, &k) in e.iter().enumerate() {
                    ne[pos[i]] = k;
                }
                (ne, *c)
            })
            .collect();
        Self { vars: vars.to_vec(), terms }
    }

    fn checked_add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.align(other);
        for (e, c) in b.terms {
            a.add_term(e, c)?;
        }
        Ok(a)
    }

    fn checked_neg(&self) -> Result<Self> {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = c.checked_neg().ok_or_else(overflow)?;
        }
        Ok(p)
    }

    fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other);
        let mut p = Self::zero(a.vars.clone());
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                p.add_term(e, c1.checked_mul(*c2).ok_or_else(overflow)?)?;
            }
        }
        Ok(p)
    }

    fn checked_pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(1);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    fn constant(c: i64) -> Self {
        let mut p = Self::zero(Vec::new());
        if c != 0 {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    fn variable(name: &str) -> Self {
        let mut p = Self::zero(vec![name.to_string()]);
        p.terms.insert(vec![1], 1);
        p
    }

    /// Parses expressions such as `x^2 + y^3`, `3x y - (x+y)^2`, `x*y`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut parser = Parser { src: src.as_bytes(), pos: 0 };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

fn var_rank(v: &str) -> (usize, String) {
    (VARIABLE_ORDER.iter().position(|w| *w == v).unwrap_or(VARIABLE_ORDER.len()), v.to_string())
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        for (i, (e, &c)) in ordered.into_iter().enumerate() {
            if i > 0 {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let abs = c.unsigned_abs();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc: Option<Polynomial> = None;
        loop {
            let negate = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ if acc.is_none() => false,
                _ => break,
            };
            let mut t = self.term()?;
            if negate {
                t = t.checked_neg()?;
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a.checked_add(&t)?,
            });
        }
        acc.ok_or_else(|| self.error("empty expression"))
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {}
                _ => break,
            }
            let f = self.factor()?;
            acc = acc.checked_mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return base.checked_pow(e);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { offset: start, message: "integer out of range".into() })
    }

    fn primary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Polynomial::constant(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                Ok(Polynomial::variable(&(c as char).to_string()))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cusp_and_juxtaposition() {
        let p = Polynomial::parse("x^2 + y^3").unwrap();
        assert_eq!(p.vars(), ["x", "y"]);
        assert_eq!(p.multiplicity(), Some(2));
        let q = Polynomial::parse("3x y - 2(x + y)^2").unwrap();
        let r = Polynomial::parse("-2*x^2 - x*y - 2*y^2").unwrap();
        assert_eq!(q, r);
    }

    #[test]
    fn variable_order_is_canonical() {
        let p = Polynomial::parse("y^3 + x^2").unwrap();
        assert_eq!(p.vars(), ["x", "y"]);
        let q = Polynomial::parse("x^3").unwrap();
        assert_eq!(q.num_vars(), 1);
    }

    #[test]
    fn cancelling_terms_vanish() {
        let p = Polynomial::parse("x*y - y*x + x").unwrap();
        assert_eq!(p.to_string(), "x");
    }

    #[test]
    fn doc_round_trip() {
        let p = Polynomial::parse("x^2 - 5 x y^4 + 7").unwrap();
        let json = serde_json::to_string(&p.to_doc()).unwrap();
        let back: PolynomialDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(Polynomial::from_doc(&back).unwrap(), p);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match Polynomial::parse("x^ + 1") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Polynomial::parse("(x + y").is_err());
        assert!(Polynomial::parse("x $ y").is_err());
    }

    #[test]
    fn initial_form_and_extra_vars() {
        let p = Polynomial::parse("x^3 + y^3 + x^4").unwrap();
        assert_eq!(p.initial_form(), Polynomial::parse("x^3 + y^3").unwrap());
        let q = p.with_extra_vars(1);
        assert_eq!(q.num_vars(), 3);
        assert_eq!(q.total_degree(), 4);
    }
}
