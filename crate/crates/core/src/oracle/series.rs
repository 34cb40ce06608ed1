//! Prime fields and truncated power series over them.

use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn require_prime(q: u64) -> Result<()> {
    if !is_prime(q) || q >= 1 << 31 {
        return Err(Error::Domain(format!("{q} is not a supported prime field order")));
    }
    Ok(())
}

/// Reduces an integer into `[0, q)`.
pub fn reduce(c: i64, q: u64) -> u64 {
    c.rem_euclid(q as i64) as u64
}

/// A polynomial in `t` modulo `t^{l+1}` with coefficients in `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    q: u64,
    coeffs: Vec<u64>,
}

impl TruncatedSeries {
    pub fn zero(q: u64, level: usize) -> Self {
        Self { q, coeffs: vec![0; level + 1] }
    }

    pub fn one(q: u64, level: usize) -> Self {
        let mut s = Self::zero(q, level);
        s.coeffs[0] = 1 % q;
        s
    }

    /// Coefficients `c_0..c_l`; the length fixes the level.
    pub fn from_coeffs(q: u64, coeffs: Vec<u64>) -> Self {
        Self { q, coeffs: coeffs.into_iter().map(|c| c % q).collect() }
    }

    pub fn level(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn field_order(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    fn compatible(&self, other: &Self) {
        assert_eq!(self.q, other.q, "series over different fields");
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "series at different levels");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.compatible(other);
        let q = self.q;
        Self { q, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % q).collect() }
    }

    pub fn scale(&self, c: u64) -> Self {
        let q = self.q;
        Self { q, coeffs: self.coeffs.iter().map(|a| a * (c % q) % q).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.compatible(other);
        let n = self.coeffs.len();
        let q = self.q;
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..n - i].iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % q;
            }
        }
        Self { q, coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.q, self.level());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// `f(γ)` truncated at the common level of the jet's series.
pub fn evaluate_on_jet(f: &Polynomial, jet: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    if jet.len() != f.num_vars() {
        return Err(Error::Precondition(format!(
            "jet has {} coordinates but the polynomial has {} variables",
            jet.len(),
            f.num_vars()
        )));
    }
    let (q, level) = match jet.first() {
        Some(s) => (s.q, s.level()),
        None => return Err(Error::Precondition("a jet needs at least one coordinate".into())),
    };
    if jet.iter().any(|s| s.q != q || s.level() != level) {
        return Err(Error::Precondition("jet coordinates must share field and level".into()));
    }
    let mut out = TruncatedSeries::zero(q, level);
    for (exps, &c) in f.terms() {
        let mut term = TruncatedSeries::one(q, level).scale(reduce(c, q));
        for (s, &e) in jet.iter().zip(exps) {
            if e > 0 {
                term = term.mul(&s.pow(e));
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}
