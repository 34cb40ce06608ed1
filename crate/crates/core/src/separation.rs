//! m-separation by stellar subdivision of 1-cells of the dual complex.
//!
//! In the curve case a 1-cell is an intersection point of two divisors and
//! subdividing it is the blowup of that point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Divisor, DivisorId, DualComplex, IntersectionCell, OneCell, SncConfiguration};

/// `M(Δ)`: the smallest multiplicity sum over 1-cells, if any.
pub fn min_pair_multiplicity(dual: &DualComplex) -> Option<u64> {
    dual.one_cells.iter().map(|c| c.m_sigma).min()
}

/// The first 1-cell (in id order) whose multiplicity sum is at most `m`.
pub fn first_violation(cfg: &SncConfiguration, m: u64) -> Result<Option<OneCell>> {
    Ok(cfg
        .dual_complex()?
        .one_cells
        .into_iter()
        .filter(|c| c.m_sigma <= m)
        .min_by_key(|c| (c.m_sigma, c.a, c.b, c.cell)))
}

pub fn is_m_separating(cfg: &SncConfiguration, m: u64) -> Result<bool> {
    Ok(first_violation(cfg, m)?.is_none())
}

/// Precondition check producing a [`Error::NotSeparating`] naming the cell.
pub fn require_m_separating(cfg: &SncConfiguration, m: u64) -> Result<()> {
    match first_violation(cfg, m)? {
        None => Ok(()),
        Some(c) => Err(Error::NotSeparating {
            m,
            a: c.a,
            b: c.b,
            label_a: cfg.divisor(c.a)?.label.clone(),
            label_b: cfg.divisor(c.b)?.label.clone(),
            m_sigma: c.m_sigma,
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionRecord {
    pub pass: usize,
    /// `M(Δ)` at the start of the pass.
    pub level: u64,
    pub a: DivisorId,
    pub b: DivisorId,
    pub point_index: u64,
    pub new_divisor: DivisorId,
    pub label: String,
    pub mult: u64,
    pub disc: u64,
    pub over_sigma: bool,
    /// The cell carried no flag and the endpoint flags were combined.
    pub flag_defaulted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub config: SncConfiguration,
    pub records: Vec<SubdivisionRecord>,
    /// `M(Δ)` before each pass and after the last one.
    pub levels: Vec<Option<u64>>,
    pub warnings: Vec<String>,
}

/// Subdivides minimal 1-cells until every multiplicity sum exceeds `m`.
///
/// Weights attached to the input are dropped when a subdivision occurs, since
/// they no longer cover the new divisors.
pub fn separate(cfg: &SncConfiguration, m: u64) -> Result<Separation> {
    cfg.ensure_valid()?;
    let mut cfg = cfg.clone();
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    let mut levels = vec![min_pair_multiplicity(&cfg.dual_complex()?)];

    if is_m_separating(&cfg, m)? {
        return Ok(Separation { config: cfg, records, levels, warnings });
    }
    if cfg.ambient_dim != 2 {
        return Err(Error::UnsupportedDimension { operation: "separate", dim: cfg.ambient_dim });
    }
    cfg.weights = None;

    let mut pass = 0;
    loop {
        let dual = cfg.dual_complex()?;
        let Some(level) = min_pair_multiplicity(&dual) else { break };
        if level > m {
            break;
        }
        pass += 1;
        let mut targets: Vec<OneCell> = dual.one_cells.into_iter().filter(|c| c.m_sigma == level).collect();
        targets.sort_by_key(|c| (c.a, c.b, c.cell));
        for cell in targets {
            for point in 0..cell.count {
                let rec = subdivide_point(&mut cfg, &cell, point, pass, level, &mut warnings)?;
                records.push(rec);
            }
        }
        cfg.cells.retain(|c| c.count > 0);
        let after = min_pair_multiplicity(&cfg.dual_complex()?);
        if after.is_some_and(|a| a <= level) {
            return Err(Error::Inconsistent(format!(
                "separation pass {pass} did not raise the minimal multiplicity sum above {level}"
            )));
        }
        levels.push(after);
    }
    Ok(Separation { config: cfg, records, levels, warnings })
}

fn subdivide_point(
    cfg: &mut SncConfiguration,
    cell: &OneCell,
    point: u64,
    pass: usize,
    level: u64,
    warnings: &mut Vec<String>,
) -> Result<SubdivisionRecord> {
    let (da, db) = (cfg.divisor(cell.a)?.clone(), cfg.divisor(cell.b)?.clone());
    let (over_sigma, flag_defaulted) = match cell.over_sigma {
        Some(f) => (f, false),
        None => {
            warnings.push(format!(
                "cell {}-{} has no over_sigma flag; using {} from its endpoints",
                da.label,
                db.label,
                da.over_sigma || db.over_sigma
            ));
            (da.over_sigma || db.over_sigma, true)
        }
    };
    let id = cfg.max_id() + 1;
    let label = format!("E{}", cfg.exceptional_ids().len() + 1);
    let new = Divisor::new(id, label.clone(), da.mult + db.mult, da.disc + db.disc, true, over_sigma)
        .rational_curve(Some(-1));
    for end in [cell.a, cell.b] {
        if let Some(s) = cfg.divisor_mut(end)?.self_int.as_mut() {
            *s -= 1;
        }
    }
    let source = &mut cfg.cells[cell.cell];
    source.count -= 1;
    cfg.divisors.push(new);
    cfg.cells.push(IntersectionCell::pair(cell.a, id, 1, over_sigma));
    cfg.cells.push(IntersectionCell::pair(cell.b, id, 1, over_sigma));
    Ok(SubdivisionRecord {
        pass,
        level,
        a: cell.a,
        b: cell.b,
        point_index: point,
        new_divisor: id,
        label,
        mult: da.mult + db.mult,
        disc: da.disc + db.disc,
        over_sigma,
        flag_defaulted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{cusp, node};

    #[test]
    fn minimal_sums() {
        assert_eq!(min_pair_multiplicity(&cusp().dual_complex().unwrap()), Some(7));
        assert_eq!(min_pair_multiplicity(&node().dual_complex().unwrap()), Some(3));
        let p = SncConfiguration::point_configuration(3);
        assert_eq!(min_pair_multiplicity(&p.dual_complex().unwrap()), None);
    }

    #[test]
    fn separating_predicate() {
        assert!(is_m_separating(&cusp(), 6).unwrap());
        assert!(!is_m_separating(&cusp(), 7).unwrap());
        assert!(is_m_separating(&node(), 2).unwrap());
        match require_m_separating(&cusp(), 7) {
            Err(Error::NotSeparating { m_sigma: 7, label_a, label_b, .. }) => {
                assert_eq!((label_a.as_str(), label_b.as_str()), ("E3", "D1"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cusp_at_seven_needs_one_subdivision() {
        let s = separate(&cusp(), 7).unwrap();
        assert_eq!(s.records.len(), 1);
        let r = &s.records[0];
        assert_eq!((r.a, r.b, r.mult, r.disc), (3, 4, 7, 6));
        let mut sums: Vec<u64> = s.config.dual_complex().unwrap().one_cells.iter().map(|c| c.m_sigma).collect();
        sums.sort_unstable();
        assert_eq!(sums, vec![8, 8, 9, 13]);
        assert!(is_m_separating(&s.config, 7).unwrap());
        assert_eq!(s.config.divisor(3).unwrap().self_int, Some(-2));
    }

    #[test]
    fn identity_when_already_separating() {
        let s = separate(&cusp(), 6).unwrap();
        assert!(s.records.is_empty());
        assert_eq!(s.config, cusp());
    }

    #[test]
    fn node_at_three_subdivides_both_edges() {
        let s = separate(&node(), 3).unwrap();
        assert_eq!(s.records.len(), 2);
        assert!(s.records.iter().all(|r| (r.mult, r.disc) == (3, 3)));
        assert_eq!(min_pair_multiplicity(&s.config.dual_complex().unwrap()), Some(4));
        assert_eq!(s.levels, vec![Some(3), Some(4)]);
    }

    #[test]
    fn missing_flag_defaults_with_warning() {
        let mut c = node();
        c.cells[0].over_sigma = None;
        let s = separate(&c, 3).unwrap();
        assert!(s.records[0].flag_defaulted);
        assert!(s.records[0].over_sigma);
        assert_eq!(s.warnings.len(), 1);
    }

    #[test]
    fn higher_dimension_is_unsupported_only_when_needed() {
        let mut c = node();
        c.ambient_dim = 3;
        for d in &mut c.divisors {
            d.euler_open = Some(0);
        }
        assert!(separate(&c, 2).unwrap().records.is_empty());
        assert!(matches!(separate(&c, 3), Err(Error::UnsupportedDimension { dim: 3, .. })));
    }
}
