//! Weight vectors `w` with `-Σ w_i E_i` positive on every exceptional curve.

use std::collections::BTreeMap;

use num::{BigRational, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DivisorId, SncConfiguration};

pub const WEIGHT_ITERATION_CAP: usize = 100_000;

/// Nonnegative integer weights keyed by divisor id; absent ids weigh 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub BTreeMap<DivisorId, u64>);

impl WeightVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, id: DivisorId) -> u64 {
        self.0.get(&id).copied().unwrap_or(0)
    }

    pub fn set(&mut self, id: DivisorId, w: u64) {
        self.0.insert(id, w);
    }

    pub fn scaled(&self, c: u64) -> Self {
        Self(self.0.iter().map(|(&k, &v)| (k, v * c)).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `id=w,id=w`.
    pub fn parse_inline(s: &str) -> Result<Self> {
        let mut w = Self::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidConfiguration(format!("weight entry '{part}' is not id=value")))?;
            let k: DivisorId =
                k.trim().parse().map_err(|_| Error::InvalidConfiguration(format!("bad divisor id '{k}'")))?;
            let v: u64 = v.trim().parse().map_err(|_| Error::InvalidConfiguration(format!("bad weight '{v}'")))?;
            w.set(k, v);
        }
        Ok(w)
    }
}

impl From<BTreeMap<DivisorId, u64>> for WeightVector {
    fn from(m: BTreeMap<DivisorId, u64>) -> Self {
        Self(m)
    }
}

/// Intersection numbers among all divisors of a curve configuration. The
/// diagonal is only known for exceptional curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    pub ids: Vec<DivisorId>,
    pub entries: Vec<Vec<Option<i64>>>,
}

impl IntersectionMatrix {
    pub fn index(&self, id: DivisorId) -> Result<usize> {
        self.ids.iter().position(|&i| i == id).ok_or(Error::UnknownDivisor(id))
    }

    pub fn get(&self, a: DivisorId, b: DivisorId) -> Result<Option<i64>> {
        Ok(self.entries[self.index(a)?][self.index(b)?])
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

pub fn intersection_matrix(cfg: &SncConfiguration) -> Result<IntersectionMatrix> {
    if cfg.ambient_dim != 2 {
        return Err(Error::UnsupportedDimension { operation: "intersection_matrix", dim: cfg.ambient_dim });
    }
    cfg.ensure_valid()?;
    let ids = cfg.ids();
    let n = ids.len();
    let pos = |id: DivisorId| ids.iter().position(|&i| i == id).unwrap();
    let mut entries = vec![vec![Some(0i64); n]; n];
    for d in &cfg.divisors {
        let i = pos(d.id);
        entries[i][i] = if d.exceptional { d.self_int } else { None };
    }
    for cell in &cfg.cells {
        let (a, b) = (pos(cell.ids[0]), pos(cell.ids[1]));
        for (x, y) in [(a, b), (b, a)] {
            let e = entries[x][y].get_or_insert(0);
            *e += cell.count as i64;
        }
    }
    Ok(IntersectionMatrix { ids, entries })
}

/// Checks negative definiteness of the exceptional block via the pivots of
/// Gaussian elimination on its negative.
pub fn exceptional_block_negative_definite(m: &IntersectionMatrix, exceptional: &[DivisorId]) -> Result<bool> {
    let idx: Vec<usize> = exceptional.iter().map(|&id| m.index(id)).collect::<Result<_>>()?;
    let n = idx.len();
    let mut a: Vec<Vec<BigRational>> = idx
        .iter()
        .map(|&i| idx.iter().map(|&j| BigRational::from_integer((-m.entries[i][j].unwrap_or(0)).into())).collect())
        .collect();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return Ok(false);
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &a[k][k];
            let (top, rest) = a.split_at_mut(i);
            for (x, pivot) in rest[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= &factor * pivot;
            }
        }
    }
    Ok(true)
}

/// `-Σ_i w_i (E_i · E_j)` for an exceptional `j`.
fn degree_against(cfg: &SncConfiguration, m: &IntersectionMatrix, w: &WeightVector, j: DivisorId) -> Result<i64> {
    let mut s = 0i64;
    for d in &cfg.divisors {
        let wi = w.get(d.id) as i64;
        if wi == 0 {
            continue;
        }
        let e = if d.id == j { m.get(j, j)?.unwrap_or(0) } else { m.get(d.id, j)?.unwrap_or(0) };
        s -= wi * e;
    }
    Ok(s)
}

/// Deterministic fixed-point search: start from 1 on every exceptional curve
/// and repeatedly raise the lowest-id violated weight to the least value
/// satisfying its own constraint.
pub fn solve_weights(cfg: &SncConfiguration) -> Result<WeightVector> {
    let exc = cfg.exceptional_ids();
    if exc.is_empty() {
        cfg.ensure_valid()?;
        return Ok(WeightVector::new());
    }
    let m = intersection_matrix(cfg)?;
    if !exceptional_block_negative_definite(&m, &exc)? {
        return Err(Error::NotNegativeDefinite);
    }
    let mut w = WeightVector::new();
    for &id in &exc {
        w.set(id, 1);
    }
    for _ in 0..WEIGHT_ITERATION_CAP {
        let mut violated = None;
        for &j in &exc {
            if degree_against(cfg, &m, &w, j)? <= 0 {
                violated = Some(j);
                break;
            }
        }
        let Some(j) = violated else { return Ok(w) };
        let s = -m.get(j, j)?.unwrap_or(0);
        let others = degree_against(cfg, &m, &w, j)? - (w.get(j) as i64) * s;
        let need = (-others).div_euclid(s) + 1;
        w.set(j, need.max(1) as u64);
    }
    Err(Error::Resource {
        what: "weight solver iterations".into(),
        cap: WEIGHT_ITERATION_CAP as u128,
        estimated: WEIGHT_ITERATION_CAP as u128 + 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCheck {
    pub valid: bool,
    pub problems: Vec<String>,
}

pub fn check_weights(cfg: &SncConfiguration, w: &WeightVector) -> Result<WeightCheck> {
    let mut problems = Vec::new();
    for (&id, &v) in &w.0 {
        match cfg.divisor(id) {
            Err(_) => problems.push(format!("weight given for unknown divisor {id}")),
            Ok(d) if !d.exceptional && v != 0 => {
                problems.push(format!("non-exceptional divisor {} has weight {v}", d.label))
            }
            Ok(_) => {}
        }
    }
    if cfg.ambient_dim == 2 {
        let m = intersection_matrix(cfg)?;
        for j in cfg.exceptional_ids() {
            let deg = degree_against(cfg, &m, w, j)?;
            if deg <= 0 {
                problems.push(format!("degree {deg} on {} is not positive", cfg.divisor(j)?.label));
            }
        }
    }
    Ok(WeightCheck { valid: problems.is_empty(), problems })
}

pub fn validate_weights(cfg: &SncConfiguration, w: &WeightVector) -> Result<bool> {
    Ok(check_weights(cfg, w)?.valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{cusp, node};
    use crate::model::{Divisor, SncConfiguration};

    fn wv(pairs: &[(DivisorId, u64)]) -> WeightVector {
        WeightVector(pairs.iter().copied().collect())
    }

    #[test]
    fn cusp_matrix() {
        let m = intersection_matrix(&cusp()).unwrap();
        assert_eq!(m.get(1, 1).unwrap(), Some(-3));
        assert_eq!(m.get(3, 3).unwrap(), Some(-1));
        assert_eq!(m.get(1, 3).unwrap(), Some(1));
        assert_eq!(m.get(1, 2).unwrap(), Some(0));
        assert_eq!(m.get(3, 4).unwrap(), Some(1));
        assert_eq!(m.get(4, 4).unwrap(), None);
    }

    #[test]
    fn cusp_solution() {
        let w = solve_weights(&cusp()).unwrap();
        assert_eq!(w, wv(&[(1, 4), (2, 6), (3, 11)]));
        assert!(validate_weights(&cusp(), &w).unwrap());
        assert!(validate_weights(&cusp(), &w.scaled(3)).unwrap());
        assert!(!validate_weights(&cusp(), &wv(&[(1, 2), (2, 3), (3, 6)])).unwrap());
        assert!(!validate_weights(&cusp(), &WeightVector::new()).unwrap());
    }

    #[test]
    fn node_and_isolated_curve() {
        assert_eq!(solve_weights(&node()).unwrap(), wv(&[(1, 1)]));
        let single = SncConfiguration {
            ambient_dim: 2,
            sigma: "origin".into(),
            divisors: vec![Divisor::new(1, "E1", 1, 2, true, true).rational_curve(Some(-1))],
            cells: vec![],
            weights: None,
        };
        let m = intersection_matrix(&single).unwrap();
        assert_eq!(m.entries, vec![vec![Some(-1)]]);
    }

    #[test]
    fn weights_on_branches_are_rejected() {
        assert!(!validate_weights(&node(), &wv(&[(1, 1), (2, 1)])).unwrap());
    }

    #[test]
    fn point_configuration_has_empty_weights() {
        let p = SncConfiguration::point_configuration(3);
        assert!(validate_weights(&p, &WeightVector::new()).unwrap());
        assert!(solve_weights(&p).unwrap().is_empty());
        let mut q = crate::model::fixtures::node();
        q.ambient_dim = 3;
        assert!(matches!(solve_weights(&q), Err(Error::UnsupportedDimension { dim: 3, .. })));
    }

    #[test]
    fn positive_definite_block_is_refused() {
        let mut c = node();
        c.divisors.push(Divisor::new(4, "E2", 1, 2, true, true).rational_curve(Some(-1)));
        c.cells.push(crate::model::IntersectionCell::pair(1, 4, 2, true));
        assert!(matches!(solve_weights(&c), Err(Error::NotNegativeDefinite)));
    }

    #[test]
    fn inline_parsing() {
        assert_eq!(WeightVector::parse_inline("1=4, 2=6,3=11").unwrap(), wv(&[(1, 4), (2, 6), (3, 11)]));
        assert!(WeightVector::parse_inline("1:4").is_err());
    }
}
