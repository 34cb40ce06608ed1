//! Sparse bivariate polynomials over ℚ in local chart coordinates `(u, v)`.
//!
//! Besides ring operations this carries exactly what point blowups need:
//! the two chart substitutions, translation along the exceptional line, and
//! restriction to the coordinate axes. Square-free decomposition works in
//! `ℚ[u][v]` via primitive pseudo-remainder sequences.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::univariate::UPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: BigRational, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn u() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    pub fn from_i64_terms(terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, BigRational::from_integer(c.into()))))
    }

    fn add_term(&mut self, a: u32, b: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Order of vanishing at the origin; `None` for the zero polynomial.
    pub fn multiplicity(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).min()
    }

    pub fn vanishes_at_origin(&self) -> bool {
        !self.terms.contains_key(&(0, 0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (&(a, b), c) in &other.terms {
            p.add_term(a, b, c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (&(a, b), c) in &other.terms {
            p.add_term(a, b, -c.clone());
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                p.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::monomial(BigRational::one(), 0, 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Strict transform in the chart `u = u', v = u'v'` where the exceptional
    /// line is `u' = 0`.
    pub fn chart_u(&self) -> Self {
        let r = self.multiplicity().unwrap_or(0);
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| ((a + b - r, b), c.clone())))
    }

    /// Strict transform in the chart `u = u'v', v = v'` where the exceptional
    /// line is `v' = 0`.
    pub fn chart_v(&self) -> Self {
        let r = self.multiplicity().unwrap_or(0);
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| ((a, a + b - r), c.clone())))
    }

    /// Substitutes `v -> v + shift`.
    pub fn translate_v(&self, shift: &BigRational) -> Self {
        if shift.is_zero() {
            return self.clone();
        }
        let mut p = Self::zero();
        for (&(a, b), c) in &self.terms {
            // (v + s)^b = sum binom(b, k) s^(b-k) v^k
            let mut binom = BigInt::one();
            for k in 0..=b {
                let coeff = c * BigRational::from_integer(binom.clone()) * shift.pow((b - k) as i32);
                p.add_term(a, k, coeff);
                binom = binom * BigInt::from(b - k) / BigInt::from(k + 1);
            }
        }
        p
    }

    /// Restriction to the line `u = 0`, as a polynomial in `v`.
    pub fn restrict_u0(&self) -> UPoly {
        let deg = self.terms.keys().filter(|k| k.0 == 0).map(|k| k.1).max();
        let Some(deg) = deg else { return UPoly::zero() };
        let mut c = vec![BigRational::zero(); deg as usize + 1];
        for (&(a, b), coeff) in &self.terms {
            if a == 0 {
                c[b as usize] = coeff.clone();
            }
        }
        UPoly::from_coeffs(c)
    }

    /// Restriction to the line `v = 0`, as a polynomial in `u`.
    pub fn restrict_v0(&self) -> UPoly {
        self.swap().restrict_u0()
    }

    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())))
    }

    fn to_vpoly(&self) -> VPoly {
        let deg = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); deg + 1];
        for (&(a, b), c) in &self.terms {
            let row = &mut rows[b as usize];
            if row.len() <= a as usize {
                row.resize(a as usize + 1, BigRational::zero());
            }
            row[a as usize] = c.clone();
        }
        VPoly::new(rows.into_iter().map(UPoly::from_coeffs).collect())
    }

    fn from_vpoly(p: &VPoly) -> Self {
        let mut out = Self::zero();
        for (b, coeff) in p.0.iter().enumerate() {
            for (a, c) in coeff.coeffs().iter().enumerate() {
                out.add_term(a as u32, b as u32, c.clone());
            }
        }
        out
    }

    /// Square-free decomposition into pairwise coprime square-free factors
    /// with multiplicities; constant factors are dropped.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(u32, Poly2)>> {
        if self.is_zero() {
            return Err(Error::Domain("square-free decomposition of zero".into()));
        }
        let p = self.to_vpoly();
        let content = p.content();
        let prim = p.div_scalar(&content)?;
        let mut out: Vec<(u32, Poly2)> = content
            .squarefree_decomposition()
            .into_iter()
            .map(|(k, f)| (k, Self::from_vpoly(&VPoly::new(vec![f]))))
            .collect();

        if prim.degree() > 0 {
            let dp = prim.derivative();
            let b = prim.gcd(&dp)?;
            let mut c = prim.exact_div(&b)?;
            let mut d = dp.exact_div(&b)?.sub(&c.derivative());
            let mut i = 1;
            while c.degree() > 0 {
                let a = c.gcd(&d)?;
                c = c.exact_div(&a)?;
                d = d.exact_div(&a)?.sub(&c.derivative());
                if a.degree() > 0 {
                    out.push((i, Self::from_vpoly(&a)));
                }
                i += 1;
            }
        }
        out.sort_by_key(|a| a.0);
        Ok(out)
    }

    pub fn display_with(&self, x: &str, y: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(&(a, b), _)| (std::cmp::Reverse(a + b), std::cmp::Reverse(a)));
        for (i, (&(a, b), c)) in keys.into_iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut mono = String::new();
            for (name, e) in [(x, a), (y, b)] {
                match e {
                    0 => {}
                    1 => mono.push_str(name),
                    _ => mono.push_str(&format!("{name}^{e}")),
                }
            }
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("u", "v"))
    }
}

/// Polynomials in `v` with coefficients in `ℚ[u]`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct VPoly(Vec<UPoly>);

impl VPoly {
    fn new(mut c: Vec<UPoly>) -> Self {
        while c.last().is_some_and(UPoly::is_zero) {
            c.pop();
        }
        Self(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree in `v`; zero polynomial reports 0.
    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &UPoly {
        self.0.last().expect("leading coefficient of zero")
    }

    fn coeff(&self, i: usize) -> UPoly {
        self.0.get(i).cloned().unwrap_or_else(UPoly::zero)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    /// Monic gcd of the `ℚ[u]` coefficients.
    fn content(&self) -> UPoly {
        self.0.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
    }

    fn div_scalar(&self, s: &UPoly) -> Result<Self> {
        Ok(Self::new(self.0.iter().map(|c| c.exact_div(s)).collect::<Result<Vec<_>>>()?))
    }

    fn primitive(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        self.div_scalar(&self.content())
    }

    /// Pseudo-remainder without the trailing power of the leading coefficient.
    fn prem(&self, b: &Self) -> Self {
        let lcb = b.lc().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= b.degree() {
            let shift = r.degree() - b.degree();
            let lcr = r.lc().clone();
            let mut next = Vec::with_capacity(r.0.len());
            for i in 0..r.0.len() {
                let mut c = r.0[i].mul(&lcb);
                if i >= shift {
                    c = c.sub(&b.coeff(i - shift).mul(&lcr));
                }
                next.push(c);
            }
            r = Self::new(next);
        }
        r
    }

    fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive()?, other.primitive()?);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive()?;
        }
        let g = a.primitive()?;
        let g = Self::new(g.0.iter().map(|x| x.mul(&c)).collect());
        // Normalize the overall rational unit.
        let lead = g.lc().leading().cloned().unwrap_or_else(BigRational::one);
        Ok(Self::new(g.0.iter().map(|x| x.scale(&lead.recip())).collect()))
    }

    fn exact_div(&self, b: &Self) -> Result<Self> {
        let mut r = self.clone();
        let mut q = vec![UPoly::zero(); self.0.len().saturating_sub(b.degree()).max(1)];
        while !r.is_zero() && r.degree() >= b.degree() {
            let shift = r.degree() - b.degree();
            let c = r.lc().exact_div(b.lc())?;
            let mut next = r.0.clone();
            for (i, bc) in b.0.iter().enumerate() {
                next[i + shift] = next[i + shift].sub(&bc.mul(&c));
            }
            q[shift] = q[shift].add(&c);
            r = Self::new(next);
        }
        if !r.is_zero() {
            return Err(Error::Domain("inexact bivariate division".into()));
        }
        Ok(Self::new(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((u32, u32), i64)]) -> Poly2 {
        Poly2::from_i64_terms(terms)
    }

    #[test]
    fn chart_transforms_of_cusp() {
        // u^2 + v^3
        let f = p(&[((2, 0), 1), ((0, 3), 1)]);
        assert_eq!(f.multiplicity(), Some(2));
        assert_eq!(f.chart_u(), p(&[((0, 0), 1), ((1, 3), 1)]));
        assert_eq!(f.chart_v(), p(&[((2, 0), 1), ((0, 1), 1)]));
    }

    #[test]
    fn translation_expands_binomially() {
        // v^2 at v -> v + 2 is v^2 + 4v + 4
        let f = p(&[((0, 2), 1)]);
        let two = BigRational::from_integer(2.into());
        assert_eq!(f.translate_v(&two), p(&[((0, 2), 1), ((0, 1), 4), ((0, 0), 4)]));
    }

    #[test]
    fn squarefree_of_reduced_curve_is_itself() {
        let f = p(&[((2, 0), 1), ((0, 3), 1)]);
        let dec = f.squarefree_decomposition().unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].0, 1);
        assert_eq!(dec[0].1, f);
    }

    #[test]
    fn squarefree_separates_repeated_components() {
        // (u^2 - v^3)^2 * u^3 * (u + v)
        let cusp = p(&[((2, 0), 1), ((0, 3), -1)]);
        let line = p(&[((1, 0), 1), ((0, 1), 1)]);
        let f = cusp.pow(2).mul(&Poly2::u().pow(3)).mul(&line);
        let dec = f.squarefree_decomposition().unwrap();
        let mults: Vec<u32> = dec.iter().map(|d| d.0).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        let mut product = Poly2::monomial(BigRational::one(), 0, 0);
        for (k, g) in &dec {
            product = product.mul(&g.pow(*k));
        }
        // equal up to a rational unit
        let ratio =
            f.terms().next().unwrap().1 / product.terms().find(|(k, _)| **k == *f.terms().next().unwrap().0).unwrap().1;
        let scaled = Poly2::from_terms(product.terms().map(|(k, c)| (*k, c * &ratio)));
        assert_eq!(scaled, f);
    }

    #[test]
    fn restriction_to_axes() {
        let f = p(&[((0, 2), 3), ((1, 1), 5), ((2, 0), 7)]);
        assert_eq!(f.restrict_u0(), UPoly::from_i64s(&[0, 0, 3]));
        assert_eq!(f.restrict_v0(), UPoly::from_i64s(&[0, 0, 7]));
    }
}
