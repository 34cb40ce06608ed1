//! Euler characteristics from point counts by exact interpolation in `q`.

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiFit {
    /// Coefficients from the constant term upward, as exact rationals.
    pub coefficients: Vec<String>,
    pub polynomial: String,
    pub degree: Option<usize>,
    /// Value of the fit at `q = 1`.
    pub chi: String,
    /// `N(q) - P(q)` at the points not used to build the fit.
    pub residuals: Vec<(u64, String)>,
    pub validation_points: usize,
    pub conclusive: bool,
    pub verdict: String,
}

impl ChiFit {
    pub fn chi_integer(&self) -> Option<i64> {
        self.chi.parse().ok()
    }

    /// Integer coefficients when every coefficient is integral.
    pub fn integer_coefficients(&self) -> Option<Vec<i128>> {
        self.coefficients.iter().map(|c| c.parse().ok()).collect()
    }
}

/// The unique polynomial of degree below `points.len()` through the points.
pub fn interpolate(points: &[(u64, u128)]) -> UPoly {
    let xs: Vec<BigRational> = points.iter().map(|&(q, _)| BigRational::from_integer(BigInt::from(q))).collect();
    let mut out = UPoly::zero();
    for (i, &(_, n)) in points.iter().enumerate() {
        let mut basis = UPoly::constant(BigRational::from_integer(BigInt::from(n)));
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let denom = &xs[i] - xj;
                basis = basis.mul(&UPoly::linear_root(xj)).scale(&(BigRational::one() / denom));
            }
        }
        out = out.add(&basis);
    }
    out
}

/// Fits the first `expected_dim + 1` counts and validates the fit on the
/// rest. A verdict needs at least one validation point and zero residuals.
pub fn interpolate_chi(counts: &[(u64, u128)], expected_dim: usize) -> Result<ChiFit> {
    if counts.len() < expected_dim + 1 {
        return Err(Error::Precondition(format!(
            "{} sample points cannot determine a degree-{expected_dim} fit",
            counts.len()
        )));
    }
    let mut seen: Vec<u64> = counts.iter().map(|c| c.0).collect();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != counts.len() {
        return Err(Error::Precondition("sample points must use distinct field orders".into()));
    }
    let (basis, rest) = counts.split_at(expected_dim + 1);
    let p = interpolate(basis);
    let residuals: Vec<(u64, BigRational)> = rest
        .iter()
        .map(|&(q, n)| {
            let x = BigRational::from_integer(BigInt::from(q));
            (q, BigRational::from_integer(BigInt::from(n)) - p.eval(&x))
        })
        .collect();
    let exact = residuals.iter().all(|(_, r)| r.is_zero());
    let conclusive = exact && !rest.is_empty();
    let verdict = if conclusive {
        "polynomial count".to_string()
    } else if !exact {
        "not polynomial-count, inconclusive".to_string()
    } else {
        "no validation points, inconclusive".to_string()
    };
    Ok(ChiFit {
        coefficients: p.coeffs().iter().map(|c| c.to_string()).collect(),
        polynomial: p.display_in("q"),
        degree: p.degree(),
        chi: p.eval(&BigRational::one()).to_string(),
        residuals: residuals.into_iter().map(|(q, r)| (q, r.to_string())).collect(),
        validation_points: rest.len(),
        conclusive,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_fit() {
        let pts: Vec<(u64, u128)> = [3u64, 5, 7, 11, 13].iter().map(|&q| (q, ((q - 1) * q * q) as u128)).collect();
        let fit = interpolate_chi(&pts, 3).unwrap();
        assert!(fit.conclusive);
        assert_eq!(fit.chi_integer(), Some(0));
        assert_eq!(fit.integer_coefficients(), Some(vec![0, 0, -1, 1]));
        assert_eq!(fit.degree, Some(3));
    }

    #[test]
    fn cusp_fit_and_constant() {
        let pts: Vec<(u64, u128)> = [3u64, 5, 7, 11, 13].iter().map(|&q| (q, 2 * (q as u128).pow(3))).collect();
        let fit = interpolate_chi(&pts, 3).unwrap();
        assert_eq!((fit.chi_integer(), fit.validation_points), (Some(2), 1));
        let fit = interpolate_chi(&[(3, 4), (5, 4)], 0).unwrap();
        assert!(fit.conclusive);
        assert_eq!(fit.chi_integer(), Some(4));
        assert_eq!(fit.degree, Some(0));
    }

    #[test]
    fn inconclusive_cases() {
        let fit = interpolate_chi(&[(3, 18), (5, 100), (7, 294)], 2).unwrap();
        assert!(!fit.conclusive);
        assert!(fit.verdict.contains("validation"));
        let fit = interpolate_chi(&[(3, 1), (5, 2), (7, 7)], 1).unwrap();
        assert!(!fit.conclusive);
        assert_eq!(fit.residuals, vec![(7, "4".to_string())]);
        assert!(interpolate_chi(&[(3, 18), (5, 100), (7, 294)], 3).is_err());
        assert!(interpolate_chi(&[(3, 1), (3, 1)], 0).is_err());
    }
}
