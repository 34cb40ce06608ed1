//! Euler-characteristic oracle from resolution data: Lefschetz numbers of
//! monodromy iterates and the monodromy zeta function.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covers::CoverMap;
use crate::error::Result;
use crate::model::SncConfiguration;
use crate::spectral::e1_page;
use crate::weights::WeightVector;

/// `Λ(φ^m) = Σ m_i χ(E_i°)` over divisors above Σ with `m_i | m`.
pub fn lefschetz_number(cfg: &SncConfiguration, m: u64) -> Result<i64> {
    let mut total = 0;
    for d in cfg.divisors.iter().filter(|d| d.over_sigma && m.is_multiple_of(d.mult)) {
        total += d.mult as i64 * cfg.euler_open_stratum(d.id)?;
    }
    Ok(total)
}

/// `∏ (1 - t^{m_i})^{e_i}` with `e_i = -χ(E_i°)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaFactorization {
    /// One factor per divisor above Σ, in id order.
    pub factors: Vec<(u64, i64)>,
}

impl ZetaFactorization {
    /// Exponents merged by cycle length, zero exponents dropped.
    pub fn reduced(&self) -> BTreeMap<u64, i64> {
        let mut out = BTreeMap::new();
        for &(len, e) in &self.factors {
            *out.entry(len).or_insert(0) += e;
        }
        out.retain(|_, e| *e != 0);
        out
    }
}

fn render_factors(factors: &[(u64, i64)]) -> String {
    factors
        .iter()
        .map(|&(len, e)| {
            let base = format!("(1-t^{len})");
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect()
}

impl fmt::Display for ZetaFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reduced = self.reduced();
        let num: Vec<(u64, i64)> = reduced.iter().filter(|(_, &e)| e > 0).map(|(&l, &e)| (l, e)).collect();
        let den: Vec<(u64, i64)> = reduced.iter().filter(|(_, &e)| e < 0).map(|(&l, &e)| (l, -e)).collect();
        let top = if num.is_empty() { "1".to_string() } else { render_factors(&num) };
        match den.len() {
            0 => f.write_str(&top),
            1 if den[0].1 == 1 => write!(f, "{top} / {}", render_factors(&den)),
            _ => write!(f, "{top} / ({})", render_factors(&den)),
        }
    }
}

pub fn zeta_factorization(cfg: &SncConfiguration) -> Result<ZetaFactorization> {
    let mut divs: Vec<_> = cfg.divisors.iter().filter(|d| d.over_sigma).collect();
    divs.sort_by_key(|d| d.id);
    let factors = divs.into_iter().map(|d| Ok((d.mult, -cfg.euler_open_stratum(d.id)?))).collect::<Result<_>>()?;
    Ok(ZetaFactorization { factors })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub m: u64,
    pub page_euler: i64,
    pub lefschetz: i64,
    pub pass: bool,
}

/// Compares `χ` of the first page (through cover homology) with `Λ(φ^m)`
/// (through the open strata directly).
pub fn cross_check_euler(cfg: &SncConfiguration, w: &WeightVector, m: u64, covers: &CoverMap) -> Result<EulerCheck> {
    let page_euler = e1_page(cfg, w, m, covers)?.euler_characteristic();
    let lefschetz = lefschetz_number(cfg, m)?;
    Ok(EulerCheck { m, page_euler, lefschetz, pass: page_euler == lefschetz })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::compute_covers;
    use crate::model::fixtures::{cusp, node};
    use crate::weights::solve_weights;

    #[test]
    fn cusp_lefschetz_sequence() {
        let got: Vec<i64> = (1..=6).map(|m| lefschetz_number(&cusp(), m).unwrap()).collect();
        assert_eq!(got, vec![0, 2, 3, 2, 0, -1]);
        assert!((1..=8).all(|m| lefschetz_number(&node(), m).unwrap() == 0));
        let p = SncConfiguration::point_configuration(3);
        assert_eq!(lefschetz_number(&p, 6).unwrap(), 3);
        assert_eq!(lefschetz_number(&p, 4).unwrap(), 0);
    }

    #[test]
    fn zeta_rendering() {
        assert_eq!(zeta_factorization(&cusp()).unwrap().to_string(), "(1-t^6) / ((1-t^2)(1-t^3))");
        assert_eq!(zeta_factorization(&node()).unwrap().to_string(), "1");
        assert!(zeta_factorization(&node()).unwrap().reduced().is_empty());
        let p = SncConfiguration::point_configuration(4);
        assert_eq!(zeta_factorization(&p).unwrap().to_string(), "1 / (1-t^4)");
    }

    #[test]
    fn cross_checks() {
        let c = cusp();
        let w = solve_weights(&c).unwrap();
        let covers = compute_covers(&c, &[1, 2, 3]).unwrap();
        for m in 1..=6 {
            let r = cross_check_euler(&c, &w, m, &covers).unwrap();
            assert!(r.pass, "m = {m}: {r:?}");
        }
        let n = node();
        let covers = compute_covers(&n, &[1]).unwrap();
        let r = cross_check_euler(&n, &solve_weights(&n).unwrap(), 2, &covers).unwrap();
        assert_eq!((r.page_euler, r.lefschetz), (0, 0));
    }
}
