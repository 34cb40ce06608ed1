//! Attribution of order strata to exceptional divisors with monomial
//! valuations, and the divisibility test that goes with it.
//!
//! When every exceptional divisor has a monomial valuation, the resolution
//! is toric and its valuation vectors, together with the coordinate axes,
//! are the rays of a regular fan. A jet with order vector `w` lifts to the
//! divisor whose ray is `w` or, if `w` lies strictly between an exceptional
//! ray and a coordinate axis that is not a component of `f`, to a generic
//! point of that exceptional divisor. Jets in any other cone lift to an
//! intersection point and are left unattributed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::count::CountReport;
use crate::covers::split_point_count;
use crate::curve::ResolutionLog;
use crate::error::{Error, Result};
use crate::model::{DivisorId, SncConfiguration};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumAttribution {
    pub orders: Vec<u32>,
    pub count: u128,
    pub divisor: Option<DivisorId>,
    /// Order of vanishing of the lifted jet along the divisor.
    pub k: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorStratum {
    pub divisor: DivisorId,
    pub label: String,
    pub k: u64,
    pub count: u128,
    /// `d·l - kν`, the expected affine fiber dimension.
    pub exponent: i64,
    pub divisible: bool,
    pub quotient: Option<u128>,
    /// Split point count of the cover, when it is known in closed form.
    pub expected_points: Option<u128>,
}

impl DivisorStratum {
    pub fn matches_expected(&self) -> Option<bool> {
        Some(self.quotient? == self.expected_points?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributionReport {
    /// Whether every exceptional divisor has a monomial valuation. Without
    /// that, strata are reported raw.
    pub monomial: bool,
    pub strata: Vec<StratumAttribution>,
    pub divisors: Vec<DivisorStratum>,
}

impl AttributionReport {
    pub fn all_divisible(&self) -> bool {
        self.divisors.iter().all(|s| s.divisible)
    }

    pub fn unattributed(&self) -> u128 {
        self.strata.iter().filter(|s| s.divisor.is_none()).map(|s| s.count).sum()
    }

    pub fn divisor(&self, id: DivisorId) -> Option<&DivisorStratum> {
        self.divisors.iter().find(|d| d.divisor == id)
    }
}

#[derive(Clone, Copy, Debug)]
enum Ray {
    Divisor(DivisorId),
    /// A coordinate axis, flagged when it is a component of `f`.
    Axis {
        component: bool,
    },
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Rays sorted counter-clockwise from `(1, 0)` to `(0, 1)`.
fn fan(cfg: &SncConfiguration, log: &ResolutionLog, f: &Polynomial) -> Vec<((i64, i64), Ray)> {
    let divides = |var: usize| f.terms().all(|(e, _)| e.get(var).copied().unwrap_or(0) > 0);
    // ray (1, 0) is the valuation of {x = 0}, ray (0, 1) that of {y = 0}
    let mut rays = vec![((1, 0), Ray::Axis { component: divides(0) }), ((0, 1), Ray::Axis { component: divides(1) })];
    for id in cfg.exceptional_ids() {
        if let Some(&(ox, oy)) = log.valuations.get(&id) {
            rays.push(((ox as i64, oy as i64), Ray::Divisor(id)));
        }
    }
    rays.sort_by(|a, b| 0.cmp(&cross(a.0, b.0)));
    rays
}

/// Divisor and order of a jet with order vector `w`, if it lifts to a
/// generic point of an exceptional divisor.
fn locate(rays: &[((i64, i64), Ray)], w: (i64, i64)) -> Option<(DivisorId, u64)> {
    for &(r, ray) in rays {
        if cross(r, w) == 0 {
            return match ray {
                Ray::Divisor(id) => {
                    let k = if r.0 > 0 { w.0 / r.0 } else { w.1 / r.1 };
                    Some((id, k as u64))
                }
                _ => None,
            };
        }
    }
    let hi = rays.iter().position(|&(r, _)| cross(w, r) > 0)?;
    let (lo, hi) = (rays[hi - 1], rays[hi]);
    // w = α·lo + β·hi with det(lo, hi) = 1 for a regular fan
    let det = cross(lo.0, hi.0);
    let alpha = cross(w, hi.0) / det;
    let beta = cross(lo.0, w) / det;
    if alpha * lo.0 .0 + beta * hi.0 .0 != w.0 || alpha * lo.0 .1 + beta * hi.0 .1 != w.1 {
        return None;
    }
    match (lo.1, hi.1) {
        (Ray::Divisor(id), Ray::Axis { component: false }) => Some((id, alpha as u64)),
        (Ray::Axis { component: false }, Ray::Divisor(id)) => Some((id, beta as u64)),
        _ => None,
    }
}

pub fn attribute_strata(
    report: &CountReport,
    cfg: &SncConfiguration,
    log: &ResolutionLog,
) -> Result<AttributionReport> {
    if cfg.ambient_dim != 2 {
        return Err(Error::UnsupportedDimension { operation: "stratum attribution", dim: cfg.ambient_dim });
    }
    let f = Polynomial::parse(&report.f)?;
    if f.num_vars() != 2 {
        return Err(Error::Precondition(format!("stratum attribution needs a plane curve, got {}", report.f)));
    }
    let exceptional = cfg.exceptional_ids();
    let monomial = !exceptional.is_empty() && exceptional.iter().all(|id| log.monomial.contains(id));
    let rays = fan(cfg, log, &f);
    let mut strata = Vec::new();
    let mut sums: BTreeMap<(DivisorId, u64), u128> = BTreeMap::new();
    for s in &report.strata {
        let mut a = StratumAttribution { orders: s.orders.clone(), count: s.count, divisor: None, k: None };
        if monomial {
            let w = (s.orders[0] as i64, s.orders[1] as i64);
            if let Some((id, k)) = locate(&rays, w) {
                let div = cfg.divisor(id)?;
                if div.over_sigma && k * div.mult == report.m {
                    a.divisor = Some(id);
                    a.k = Some(k);
                    *sums.entry((id, k)).or_insert(0) += s.count;
                }
            }
        }
        strata.push(a);
    }
    let d = cfg.ambient_dim as i64;
    let mut divisors = Vec::new();
    for ((id, k), count) in sums {
        let div = cfg.divisor(id)?;
        let exponent = d * report.l as i64 - (k * div.disc) as i64;
        let quotient = if exponent >= 0 {
            let scale = (report.q as u128).pow(exponent as u32);
            (count % scale == 0).then(|| count / scale)
        } else {
            None
        };
        divisors.push(DivisorStratum {
            divisor: id,
            label: div.label.clone(),
            k,
            count,
            exponent,
            divisible: quotient.is_some(),
            quotient,
            expected_points: split_point_count(cfg, id, report.q).unwrap_or(None),
        });
    }
    Ok(AttributionReport { monomial, strata, divisors })
}
