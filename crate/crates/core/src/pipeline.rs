//! End-to-end driver: resolution, separation, weights, covers, first page and
//! degeneration analysis for one contact order.

use serde::{Deserialize, Serialize};

use crate::covers::{compute_covers, CoverMap};
use crate::curve::{resolve_plane_curve, ResolutionLog};
use crate::error::{Error, Result};
use crate::lefschetz::{cross_check_euler, EulerCheck};
use crate::model::SncConfiguration;
use crate::poly::Polynomial;
use crate::separation::{separate, Separation};
use crate::spectral::{contributing_set, degeneration_analysis, E1Page, HcReport};
use crate::weights::{check_weights, solve_weights, WeightVector};

/// Starting data: a configuration and, when it came from a polynomial, the
/// polynomial and its resolution log.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub f: Option<Polynomial>,
    pub base: SncConfiguration,
    pub log: Option<ResolutionLog>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSource {
    Override,
    Configuration,
    Solved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub m: u64,
    pub separation: Separation,
    pub weights: WeightVector,
    pub weight_source: WeightSource,
    pub covers: CoverMap,
    pub page: E1Page,
    pub hc: HcReport,
    pub euler: EulerCheck,
}

impl Pipeline {
    /// One variable gives the point configuration of its order at 0; two
    /// variables go through the plane-curve resolution.
    pub fn from_polynomial(f: &Polynomial) -> Result<Self> {
        match f.num_vars() {
            1 => {
                let r =
                    f.multiplicity().ok_or_else(|| Error::Domain("the zero polynomial has no resolution".into()))?;
                if r == 0 {
                    return Err(Error::Domain(format!("{f} does not vanish at the origin")));
                }
                Ok(Self { f: Some(f.clone()), base: SncConfiguration::point_configuration(r as u64), log: None })
            }
            2 => {
                let (base, log) = resolve_plane_curve(f)?;
                Ok(Self { f: Some(f.clone()), base, log: Some(log) })
            }
            n => Err(Error::UnsupportedDimension { operation: "resolution", dim: n as u32 }),
        }
    }

    pub fn from_config(cfg: SncConfiguration) -> Result<Self> {
        cfg.ensure_valid()?;
        Ok(Self { f: None, base: cfg, log: None })
    }

    pub fn stage(&self, m: u64, weights: Option<&WeightVector>) -> Result<Stage> {
        if m == 0 {
            return Err(Error::Precondition("contact order m must be at least 1".into()));
        }
        let separation = separate(&self.base, m)?;
        let cfg = &separation.config;
        let (weights, weight_source) = match (weights, &cfg.weights) {
            (Some(w), _) => (w.clone(), WeightSource::Override),
            (None, Some(w)) if !w.is_empty() || cfg.exceptional_ids().is_empty() => {
                (WeightVector(w.clone()), WeightSource::Configuration)
            }
            _ => (solve_weights(cfg)?, WeightSource::Solved),
        };
        let check = check_weights(cfg, &weights)?;
        if !check.valid {
            return Err(Error::Precondition(format!("weights rejected: {}", check.problems.join("; "))));
        }
        let set = contributing_set(cfg, &weights, m)?;
        let ids: Vec<_> = set.members.iter().map(|mb| mb.divisor).collect();
        let covers = compute_covers(cfg, &ids)?;
        let page = crate::spectral::e1_page(cfg, &weights, m, &covers)?;
        let hc = degeneration_analysis(&page);
        let euler = cross_check_euler(cfg, &weights, m, &covers)?;
        Ok(Stage { m, separation, weights, weight_source, covers, page, hc, euler })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::DegreeStatus;

    #[test]
    fn cusp_stage() {
        let p = Pipeline::from_polynomial(&Polynomial::parse("x^2+y^3").unwrap()).unwrap();
        let s = p.stage(2, None).unwrap();
        assert_eq!(s.hc.integral(6), DegreeStatus::Exact { rank: 2, free: true });
        assert!(s.euler.pass);
        assert_eq!(s.weight_source, WeightSource::Solved);
    }

    #[test]
    fn univariate_powers() {
        let p = Pipeline::from_polynomial(&Polynomial::parse("x^3").unwrap()).unwrap();
        assert!(p.stage(5, None).unwrap().page.is_empty());
        let s = p.stage(6, None).unwrap();
        assert_eq!(s.hc.integral(8), DegreeStatus::Exact { rank: 3, free: true });
        assert!(Pipeline::from_polynomial(&Polynomial::parse("x+1").unwrap()).is_err());
    }
}
