//! Dense univariate polynomials over ℚ.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients stored from the constant term upward, never with a zero
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monic linear polynomial `t - root`.
    pub fn linear_root(root: &BigRational) -> Self {
        Self::from_coeffs(vec![-root.clone(), BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Quotient of an exact division; errors when a remainder is left.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Domain(format!("{divisor} does not divide {self}")))
        }
    }

    /// Yun's square-free decomposition: pairs `(multiplicity, factor)` with
    /// square-free, pairwise coprime monic factors of positive degree.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, UPoly)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let b = f.gcd(&df);
        let mut c = f.div_rem(&b).0;
        let mut d = df.div_rem(&b).0.sub(&c.derivative());
        let mut i = 1;
        while !c.is_constant() {
            let a = c.gcd(&d);
            c = c.div_rem(&a).0;
            d = d.div_rem(&a).0.sub(&c.derivative());
            if !a.is_constant() {
                out.push((i, a));
            }
            i += 1;
        }
        out
    }

    /// Rational roots with multiplicities, ascending by value, plus the
    /// cofactor carrying the remaining (irrational or complex) roots.
    pub fn rational_roots(&self) -> Result<(Vec<(BigRational, u32)>, UPoly)> {
        if self.is_zero() {
            return Err(Error::Domain("roots of the zero polynomial".into()));
        }
        let mut rest = self.monic();
        let mut roots = Vec::new();
        let mut zero_mult = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.coeff(0).is_zero() {
            rest = rest.exact_div(&UPoly::from_i64s(&[0, 1]))?;
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((BigRational::zero(), zero_mult));
        }
        if rest.degree().unwrap_or(0) > 0 {
            let ints = rest.integer_coefficients();
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let nums = positive_divisors(&a0)?;
            let dens = positive_divisors(&an)?;
            let mut candidates: Vec<BigRational> = Vec::new();
            for p in &nums {
                for q in &dens {
                    let r = BigRational::new(p.clone(), q.clone());
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
            candidates.sort();
            candidates.dedup();
            for r in candidates {
                let lin = UPoly::linear_root(&r);
                let mut mult = 0;
                loop {
                    let (q, rem) = rest.div_rem(&lin);
                    if !rem.is_zero() {
                        break;
                    }
                    rest = q;
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((r, mult));
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok((roots, rest))
    }

    /// Primitive integer multiple of the polynomial (positive leading term).
    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        let mut ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| num::integer::gcd(g, c.clone()));
        if !g.is_zero() {
            for c in &mut ints {
                *c /= &g;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in &mut ints {
                *c = -c.clone();
            }
        }
        ints
    }
}

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.to_u64().ok_or_else(|| Error::Domain(format!("coefficient {n} too large for rational root search")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small.into_iter().map(BigInt::from).collect())
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_in(f, "t")
    }
}

impl UPoly {
    /// Renders with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        struct In<'a>(&'a UPoly, &'a str);
        impl fmt::Display for In<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write_in(f, self.1)
            }
        }
        In(self, var).to_string()
    }

    fn write_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "{var}")?,
                (1, false) => write!(f, "{a}{var}")?,
                (_, true) => write!(f, "{var}^{i}")?,
                (_, false) => write!(f, "{a}{var}^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn gcd_and_division() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = UPoly::from_i64s(&[-2, 1, 1]);
        let b = UPoly::from_i64s(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), UPoly::from_i64s(&[-1, 1]));
        let (qq, r) = a.mul(&b).div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(qq, a);
    }

    #[test]
    fn squarefree_parts() {
        // (t-1)^2 (t+1)^3 t
        let p = UPoly::from_i64s(&[-1, 1])
            .mul(&UPoly::from_i64s(&[-1, 1]))
            .mul(&UPoly::from_i64s(&[1, 1]).mul(&UPoly::from_i64s(&[1, 1])).mul(&UPoly::from_i64s(&[1, 1])))
            .mul(&UPoly::from_i64s(&[0, 1]));
        let dec = p.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![(1, UPoly::from_i64s(&[0, 1])), (2, UPoly::from_i64s(&[-1, 1])), (3, UPoly::from_i64s(&[1, 1])),]
        );
    }

    #[test]
    fn rational_roots_split_off_cofactor() {
        // (2t - 1)^2 (t^2 + 1) (t + 3)
        let p = UPoly::from_i64s(&[-1, 2])
            .mul(&UPoly::from_i64s(&[-1, 2]))
            .mul(&UPoly::from_i64s(&[1, 0, 1]))
            .mul(&UPoly::from_i64s(&[3, 1]));
        let (roots, rest) = p.rational_roots().unwrap();
        assert_eq!(roots, vec![(q(-3), 1), (BigRational::new(1.into(), 2.into()), 2)]);
        assert_eq!(rest, UPoly::from_i64s(&[1, 0, 1]));
    }

    #[test]
    fn roots_at_zero() {
        let p = UPoly::from_i64s(&[0, 0, 1, 1]);
        let (roots, rest) = p.rational_roots().unwrap();
        assert_eq!(roots, vec![(q(-1), 1), (q(0), 2)]);
        assert!(rest.is_constant());
    }
}
