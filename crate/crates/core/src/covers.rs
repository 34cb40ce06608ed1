//! Homology of the unramified cyclic covers `Ẽ_i° → E_i°` of degree `m_i`.
//!
//! For a rational curve with punctures, the monodromy around a puncture on
//! `E_j` is `m_j mod m_i`, so the cover splits into `gcd(m_i, m_j, …)`
//! components. Everything else is taken from supplied data.

use std::collections::BTreeMap;

use num::integer::{gcd, lcm};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DivisorId, SncConfiguration, TorsionDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverSource {
    Computed,
    Supplied,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverHomology {
    pub divisor: DivisorId,
    pub components: u64,
    pub betti: Vec<u64>,
    pub torsion: Vec<TorsionDescriptor>,
    pub source: CoverSource,
}

impl CoverHomology {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

pub type CoverMap = BTreeMap<DivisorId, CoverHomology>;

fn supplied(cfg: &SncConfiguration, id: DivisorId) -> Result<Option<CoverHomology>> {
    let d = cfg.divisor(id)?;
    let Some(betti) = &d.cover_betti else { return Ok(None) };
    let components = *betti
        .first()
        .ok_or_else(|| Error::InvalidConfiguration(format!("divisor {} has empty cover_betti", d.label)))?;
    Ok(Some(CoverHomology {
        divisor: id,
        components,
        betti: betti.clone(),
        torsion: d.cover_torsion.clone().unwrap_or_default(),
        source: CoverSource::Supplied,
    }))
}

fn rational_curve_check(cfg: &SncConfiguration, id: DivisorId) -> Result<()> {
    let d = cfg.divisor(id)?;
    match cfg.ambient_dim {
        1 => Ok(()),
        2 if d.genus == Some(0) => Ok(()),
        2 => Err(Error::CoverNotDetermined(id)),
        _ => Err(Error::MissingCoverData(vec![id])),
    }
}

pub fn cover_component_count(cfg: &SncConfiguration, id: DivisorId) -> Result<u64> {
    if let Some(s) = supplied(cfg, id)? {
        return Ok(s.components);
    }
    rational_curve_check(cfg, id)?;
    let mi = cfg.divisor(id)?.mult;
    let mut c = mi;
    for (other, _) in cfg.punctures(id) {
        c = gcd(c, cfg.divisor(other)?.mult);
    }
    Ok(c)
}

pub fn cover_betti(cfg: &SncConfiguration, id: DivisorId) -> Result<CoverHomology> {
    if let Some(s) = supplied(cfg, id)? {
        return Ok(s);
    }
    rational_curve_check(cfg, id)?;
    let mi = cfg.divisor(id)?.mult;
    let c = cover_component_count(cfg, id)?;
    let betti = if cfg.ambient_dim == 1 {
        vec![mi]
    } else {
        let k = cfg.puncture_count(id) as i64;
        if k == 0 {
            vec![mi, 0, mi]
        } else {
            let b1 = c as i64 - mi as i64 * (2 - k);
            if b1 < 0 {
                return Err(Error::Inconsistent(format!(
                    "cover of {} would have negative first Betti number {b1}",
                    cfg.divisor(id)?.label
                )));
            }
            vec![c, b1 as u64]
        }
    };
    Ok(CoverHomology { divisor: id, components: c, betti, torsion: Vec::new(), source: CoverSource::Computed })
}

/// Covers for the given divisors, failing with the list of those that have
/// no determinable data.
pub fn compute_covers(cfg: &SncConfiguration, ids: &[DivisorId]) -> Result<CoverMap> {
    let mut out = CoverMap::new();
    let mut missing = Vec::new();
    for &id in ids {
        match cover_betti(cfg, id) {
            Ok(h) => {
                out.insert(id, h);
            }
            Err(Error::MissingCoverData(v)) => missing.extend(v),
            Err(e) => return Err(e),
        }
    }
    if missing.is_empty() {
        Ok(out)
    } else {
        Err(Error::MissingCoverData(missing))
    }
}

/// Point count of `Ẽ_i°` over `F_q` as `a·q + b`, valid for every `q ≡ 1 mod
/// m_i`, when every compactified component of the cover is rational.
/// Returns `None` when that is not the case.
pub fn split_count_linear(cfg: &SncConfiguration, id: DivisorId) -> Result<Option<(i64, i64)>> {
    let d = cfg.divisor(id)?;
    if d.cover_betti.is_some() {
        return Ok(None);
    }
    rational_curve_check(cfg, id)?;
    let mi = d.mult;
    if cfg.ambient_dim == 1 {
        return Ok(Some((0, mi as i64)));
    }
    let c = cover_component_count(cfg, id)?;
    let k = cfg.puncture_count(id) as i64;
    let mut points_over_punctures = 0u64;
    for (other, count) in cfg.punctures(id) {
        points_over_punctures += count * gcd(mi, cfg.divisor(other)?.mult);
    }
    // compactified component: χ = (m_i/c)(2 - k) + (points over punctures)/c
    let chi_total = mi as i64 * (2 - k) + points_over_punctures as i64;
    if chi_total != 2 * c as i64 {
        return Ok(None);
    }
    Ok(Some((c as i64, c as i64 - points_over_punctures as i64)))
}

/// [`split_count_linear`] evaluated at `q`, or `None` when `q ≢ 1 mod m_i`.
pub fn split_point_count(cfg: &SncConfiguration, id: DivisorId, q: u64) -> Result<Option<u128>> {
    let mi = cfg.divisor(id)?.mult;
    if !(q - 1).is_multiple_of(mi) {
        return Ok(None);
    }
    Ok(split_count_linear(cfg, id)?.map(|(a, b)| (a as i128 * q as i128 + b as i128) as u128))
}

/// Least common multiple of the multiplicities of the given divisors.
pub fn multiplicity_lcm(cfg: &SncConfiguration, ids: &[DivisorId]) -> Result<u64> {
    let mut l = 1;
    for &id in ids {
        l = lcm(l, cfg.divisor(id)?.mult);
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{cusp, node};
    use crate::model::Divisor;

    #[test]
    fn cusp_covers() {
        let c = cusp();
        assert_eq!(cover_component_count(&c, 1).unwrap(), 2);
        assert_eq!(cover_component_count(&c, 3).unwrap(), 1);
        assert_eq!(cover_betti(&c, 1).unwrap().betti, vec![2, 0]);
        assert_eq!(cover_betti(&c, 2).unwrap().betti, vec![3, 0]);
        let e3 = cover_betti(&c, 3).unwrap();
        assert_eq!(e3.betti, vec![1, 7]);
        assert_eq!(e3.euler_characteristic(), 6 * c.euler_open_stratum(3).unwrap());
    }

    #[test]
    fn node_and_isolated() {
        assert_eq!(cover_betti(&node(), 1).unwrap().betti, vec![1, 1]);
        let iso = SncConfiguration {
            ambient_dim: 2,
            sigma: "origin".into(),
            divisors: vec![Divisor::new(1, "E1", 5, 2, true, true).rational_curve(Some(-1))],
            cells: vec![],
            weights: None,
        };
        assert_eq!(cover_component_count(&iso, 1).unwrap(), 5);
        assert_eq!(cover_betti(&iso, 1).unwrap().betti, vec![5, 0, 5]);
    }

    #[test]
    fn one_puncture_must_split() {
        let mut c = node();
        c.cells.pop();
        c.divisors.pop();
        // E1 (m=2) now has one puncture on a divisor of multiplicity 1
        assert!(matches!(cover_betti(&c, 1), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn positive_genus_needs_data() {
        let mut c = node();
        c.divisors[0].genus = Some(1);
        assert!(matches!(cover_betti(&c, 1), Err(Error::CoverNotDetermined(1))));
        c.divisors[0].cover_betti = Some(vec![1, 3]);
        let h = cover_betti(&c, 1).unwrap();
        assert_eq!(h.source, CoverSource::Supplied);
        assert_eq!(h.components, 1);
    }

    #[test]
    fn higher_dimensions_report_missing() {
        let mut c = node();
        c.ambient_dim = 3;
        match compute_covers(&c, &[1, 2]) {
            Err(Error::MissingCoverData(ids)) => assert_eq!(ids, vec![1, 2]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn split_counts() {
        let c = cusp();
        assert_eq!(split_point_count(&c, 1, 5).unwrap(), Some(10));
        assert_eq!(split_point_count(&c, 2, 7).unwrap(), Some(21));
        assert_eq!(split_point_count(&c, 2, 5).unwrap(), None);
        // E3 compactifies to a genus-one curve
        assert_eq!(split_point_count(&c, 3, 7).unwrap(), None);
        assert_eq!(split_point_count(&node(), 1, 3).unwrap(), Some(2));
        let p = SncConfiguration::point_configuration(3);
        assert_eq!(split_point_count(&p, 1, 7).unwrap(), Some(3));
    }
}
