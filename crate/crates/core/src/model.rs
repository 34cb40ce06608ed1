//! Simple-normal-crossing configurations: the combinatorial data of a log
//! resolution (divisors with multiplicities and discrepancies, intersection
//! cells) together with validation and the dual complex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type DivisorId = u32;

/// Torsion in one homology degree, given by its elementary divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionDescriptor {
    pub degree: u32,
    pub elementary_divisors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Divisor {
    pub id: DivisorId,
    pub label: String,
    /// Vanishing order `m_i` of `f` along the divisor.
    pub mult: u64,
    /// Discrepancy plus one, `ν_i`.
    pub disc: u64,
    pub exceptional: bool,
    /// Whether the divisor maps into Σ.
    pub over_sigma: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_int: Option<i64>,
    /// Euler characteristic of the open stratum, required when `ambient_dim ≥ 3`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_open: Option<i64>,
    /// Betti numbers of the cyclic cover of the open stratum, if supplied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_betti: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_torsion: Option<Vec<TorsionDescriptor>>,
}

impl Divisor {
    /// A divisor with no curve or cover metadata.
    pub fn new(
        id: DivisorId,
        label: impl Into<String>,
        mult: u64,
        disc: u64,
        exceptional: bool,
        over_sigma: bool,
    ) -> Self {
        Self {
            id,
            label: label.into(),
            mult,
            disc,
            exceptional,
            over_sigma,
            genus: None,
            self_int: None,
            euler_open: None,
            cover_betti: None,
            cover_torsion: None,
        }
    }

    pub fn rational_curve(mut self, self_int: Option<i64>) -> Self {
        self.genus = Some(0);
        self.self_int = self_int;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionCell {
    pub ids: Vec<DivisorId>,
    pub count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over_sigma: Option<bool>,
}

impl IntersectionCell {
    pub fn pair(a: DivisorId, b: DivisorId, count: u64, over_sigma: bool) -> Self {
        Self { ids: vec![a, b], count, over_sigma: Some(over_sigma) }
    }

    pub fn contains(&self, id: DivisorId) -> bool {
        self.ids.contains(&id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SncConfiguration {
    pub ambient_dim: u32,
    pub sigma: String,
    pub divisors: Vec<Divisor>,
    #[serde(default)]
    pub cells: Vec<IntersectionCell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<DivisorId, u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "id")]
pub enum Subject {
    Configuration,
    Divisor(DivisorId),
    Cell(usize),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Configuration => f.write_str("configuration"),
            Subject::Divisor(id) => write!(f, "divisor {id}"),
            Subject::Cell(i) => write!(f, "cell #{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub subject: Subject,
    pub rule: String,
    pub severity: Severity,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag}: {}: {}", self.subject, self.rule)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(|v| v.severity == Severity::Warning)
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, subject: Subject, severity: Severity, rule: impl Into<String>) {
        self.violations.push(Violation { subject, rule: rule.into(), severity });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneCell {
    pub a: DivisorId,
    pub b: DivisorId,
    pub m_sigma: u64,
    pub count: u64,
    pub over_sigma: Option<bool>,
    /// Index of the originating cell in the configuration.
    pub cell: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualComplex {
    pub vertices: Vec<(DivisorId, u64)>,
    pub one_cells: Vec<OneCell>,
    pub higher_cells: Vec<Vec<DivisorId>>,
}

pub const RULE_MULT: &str = "mult ≥ 1";
pub const RULE_DISC: &str = "disc ≥ 1";
pub const RULE_NON_EXCEPTIONAL_DISC: &str = "non-exceptional ⇒ disc = 1";
pub const RULE_GENUS: &str = "curve case requires genus";
pub const RULE_SELF_INT: &str = "exceptional curve requires self_int < 0";
pub const RULE_DUPLICATE_ID: &str = "duplicate divisor id";
pub const RULE_CELL_DISTINCT: &str = "cell ids must be distinct";
pub const RULE_CELL_UNKNOWN: &str = "cell references unknown divisor";
pub const RULE_CELL_COUNT: &str = "cell count ≥ 1";
pub const RULE_CELL_PAIR: &str = "curve case cells are pairs";
pub const RULE_CELL_ARITY: &str = "cell needs at least two divisors";
pub const RULE_SIGMA_EMPTY: &str = "Σ must be nonempty (some divisor over Σ)";
pub const RULE_POINT_CELLS: &str = "ambient_dim = 1 admits no cells";
pub const RULE_DIM: &str = "ambient_dim ≥ 1";
pub const RULE_CELL_FLAG: &str = "cell over_sigma flag missing";

impl SncConfiguration {
    /// The configuration of `x^r` on the line: a single divisor over the origin.
    pub fn point_configuration(r: u64) -> Self {
        Self {
            ambient_dim: 1,
            sigma: "origin".into(),
            divisors: vec![Divisor::new(1, "D1", r, 1, false, true)],
            cells: Vec::new(),
            weights: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfiguration(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configuration serializes")
    }

    pub fn is_curve_case(&self) -> bool {
        self.ambient_dim == 2
    }

    pub fn divisor(&self, id: DivisorId) -> Result<&Divisor> {
        self.divisors.iter().find(|d| d.id == id).ok_or(Error::UnknownDivisor(id))
    }

    pub fn divisor_mut(&mut self, id: DivisorId) -> Result<&mut Divisor> {
        self.divisors.iter_mut().find(|d| d.id == id).ok_or(Error::UnknownDivisor(id))
    }

    pub fn ids(&self) -> Vec<DivisorId> {
        let mut ids: Vec<_> = self.divisors.iter().map(|d| d.id).collect();
        ids.sort_unstable();
        ids
    }

    pub fn max_id(&self) -> DivisorId {
        self.divisors.iter().map(|d| d.id).max().unwrap_or(0)
    }

    pub fn exceptional_ids(&self) -> Vec<DivisorId> {
        let mut ids: Vec<_> = self.divisors.iter().filter(|d| d.exceptional).map(|d| d.id).collect();
        ids.sort_unstable();
        ids
    }

    /// Neighbours of `id` across cells, with the number of points per cell.
    pub fn punctures(&self, id: DivisorId) -> Vec<(DivisorId, u64)> {
        let mut out = Vec::new();
        for cell in &self.cells {
            if cell.contains(id) {
                for &other in &cell.ids {
                    if other != id {
                        out.push((other, cell.count));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn puncture_count(&self, id: DivisorId) -> u64 {
        self.cells.iter().filter(|c| c.contains(id)).map(|c| c.count).sum()
    }

    pub fn validate(&self) -> ValidationReport {
        use Severity::*;
        let mut r = ValidationReport::default();
        let curve = self.is_curve_case();

        if self.ambient_dim == 0 {
            r.push(Subject::Configuration, Error, RULE_DIM);
        }
        let mut seen = BTreeSet::new();
        for d in &self.divisors {
            let s = Subject::Divisor(d.id);
            if !seen.insert(d.id) {
                r.push(s.clone(), Error, RULE_DUPLICATE_ID);
            }
            if d.mult < 1 {
                r.push(s.clone(), Error, RULE_MULT);
            }
            if d.disc < 1 {
                r.push(s.clone(), Error, RULE_DISC);
            }
            if !d.exceptional && d.disc != 1 {
                r.push(s.clone(), Error, RULE_NON_EXCEPTIONAL_DISC);
            }
            if curve {
                if d.genus.is_none() {
                    r.push(s.clone(), Error, RULE_GENUS);
                }
                if d.exceptional && !matches!(d.self_int, Some(v) if v < 0) {
                    r.push(s.clone(), Error, RULE_SELF_INT);
                }
            }
        }
        if !self.divisors.iter().any(|d| d.over_sigma) {
            r.push(Subject::Configuration, Error, RULE_SIGMA_EMPTY);
        }
        if self.ambient_dim == 1 && !self.cells.is_empty() {
            r.push(Subject::Configuration, Error, RULE_POINT_CELLS);
        }
        for (i, cell) in self.cells.iter().enumerate() {
            let s = Subject::Cell(i);
            let distinct: BTreeSet<_> = cell.ids.iter().collect();
            if distinct.len() != cell.ids.len() {
                r.push(s.clone(), Error, RULE_CELL_DISTINCT);
            }
            if cell.ids.iter().any(|id| !seen.contains(id)) {
                r.push(s.clone(), Error, RULE_CELL_UNKNOWN);
            }
            if cell.count < 1 {
                r.push(s.clone(), Error, RULE_CELL_COUNT);
            }
            if curve && cell.ids.len() != 2 {
                r.push(s.clone(), Error, RULE_CELL_PAIR);
            } else if cell.ids.len() < 2 {
                r.push(s.clone(), Error, RULE_CELL_ARITY);
            }
            if cell.over_sigma.is_none() {
                r.push(s, Warning, RULE_CELL_FLAG);
            }
        }
        r
    }

    /// Fails with the first error-level violation, if any.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        let first = report.errors().next().map(|v| v.to_string());
        match first {
            None => Ok(()),
            Some(v) => Err(Error::InvalidConfiguration(v)),
        }
    }

    pub fn dual_complex(&self) -> Result<DualComplex> {
        self.ensure_valid()?;
        let mut vertices: Vec<_> = self.divisors.iter().map(|d| (d.id, d.mult)).collect();
        vertices.sort_unstable();
        let mut one_cells = Vec::new();
        let mut higher_cells = Vec::new();
        for (idx, cell) in self.cells.iter().enumerate() {
            if cell.ids.len() == 2 {
                let (a, b) = (cell.ids[0].min(cell.ids[1]), cell.ids[0].max(cell.ids[1]));
                let m_sigma = self.divisor(a)?.mult + self.divisor(b)?.mult;
                one_cells.push(OneCell { a, b, m_sigma, count: cell.count, over_sigma: cell.over_sigma, cell: idx });
            } else {
                let mut ids = cell.ids.clone();
                ids.sort_unstable();
                higher_cells.push(ids);
            }
        }
        one_cells.sort_by_key(|c| (c.a, c.b, c.cell));
        Ok(DualComplex { vertices, one_cells, higher_cells })
    }

    /// Euler characteristic of `E_i` minus all other divisors.
    pub fn euler_open_stratum(&self, id: DivisorId) -> Result<i64> {
        let d = self.divisor(id)?;
        match self.ambient_dim {
            1 => Ok(1),
            2 => {
                let g = d.genus.ok_or_else(|| Error::InvalidConfiguration(format!("divisor {id} has no genus")))?;
                Ok(2 - 2 * g as i64 - self.puncture_count(id) as i64)
            }
            dim => d.euler_open.ok_or(Error::UnsupportedDimension { operation: "euler_open_stratum", dim }),
        }
    }
}

pub fn validate_configuration(cfg: &SncConfiguration) -> ValidationReport {
    cfg.validate()
}

pub fn build_dual_complex(cfg: &SncConfiguration) -> Result<DualComplex> {
    cfg.dual_complex()
}

pub fn euler_open_stratum(cfg: &SncConfiguration, id: DivisorId) -> Result<i64> {
    cfg.euler_open_stratum(id)
}

/// Hand-assembled configurations used as fixtures and documentation.
pub mod fixtures {
    use super::*;

    /// Minimal resolution of the cusp `x^2 + y^3`.
    pub fn cusp() -> SncConfiguration {
        SncConfiguration {
            ambient_dim: 2,
            sigma: "origin".into(),
            divisors: vec![
                Divisor::new(1, "E1", 2, 2, true, true).rational_curve(Some(-3)),
                Divisor::new(2, "E2", 3, 3, true, true).rational_curve(Some(-2)),
                Divisor::new(3, "E3", 6, 5, true, true).rational_curve(Some(-1)),
                Divisor::new(4, "D1", 1, 1, false, false).rational_curve(None),
            ],
            cells: vec![
                IntersectionCell::pair(1, 3, 1, true),
                IntersectionCell::pair(2, 3, 1, true),
                IntersectionCell::pair(3, 4, 1, true),
            ],
            weights: None,
        }
    }

    /// One blowup of the node `xy`.
    pub fn node() -> SncConfiguration {
        SncConfiguration {
            ambient_dim: 2,
            sigma: "origin".into(),
            divisors: vec![
                Divisor::new(1, "E1", 2, 2, true, true).rational_curve(Some(-1)),
                Divisor::new(2, "D1", 1, 1, false, false).rational_curve(None),
                Divisor::new(3, "D2", 1, 1, false, false).rational_curve(None),
            ],
            cells: vec![IntersectionCell::pair(1, 2, 1, true), IntersectionCell::pair(1, 3, 1, true)],
            weights: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{cusp, node};
    use super::*;

    #[test]
    fn fixtures_validate() {
        assert!(cusp().validate().violations.is_empty());
        assert!(node().validate().violations.is_empty());
        assert!(SncConfiguration::point_configuration(3).validate().violations.is_empty());
    }

    #[test]
    fn disc_violations_are_reported() {
        let mut c = cusp();
        c.divisors[0].disc = 0;
        c.divisors[3].disc = 2;
        let r = c.validate();
        assert!(r.has_rule(RULE_DISC));
        assert!(r.has_rule(RULE_NON_EXCEPTIONAL_DISC));
        assert!(!r.is_valid());
        assert!(c.dual_complex().is_err());
    }

    #[test]
    fn structural_violations() {
        let mut c = node();
        c.cells.push(IntersectionCell { ids: vec![1, 9], count: 0, over_sigma: None });
        c.divisors[0].self_int = Some(0);
        let r = c.validate();
        for rule in [RULE_CELL_UNKNOWN, RULE_CELL_COUNT, RULE_CELL_FLAG, RULE_SELF_INT] {
            assert!(r.has_rule(rule), "{rule}");
        }
        assert_eq!(r.warnings().count(), 1);

        let mut p = SncConfiguration::point_configuration(2);
        p.divisors[0].over_sigma = false;
        p.cells.push(IntersectionCell::pair(1, 1, 1, true));
        let r = p.validate();
        assert!(r.has_rule(RULE_SIGMA_EMPTY));
        assert!(r.has_rule(RULE_POINT_CELLS));
        assert!(r.has_rule(RULE_CELL_DISTINCT));
    }

    #[test]
    fn dual_complex_edge_sums() {
        let sums: Vec<u64> = cusp().dual_complex().unwrap().one_cells.iter().map(|c| c.m_sigma).collect();
        assert_eq!(sums, vec![8, 9, 7]);
        let sums: Vec<u64> = node().dual_complex().unwrap().one_cells.iter().map(|c| c.m_sigma).collect();
        assert_eq!(sums, vec![3, 3]);
        assert!(SncConfiguration::point_configuration(4).dual_complex().unwrap().one_cells.is_empty());
    }

    #[test]
    fn open_strata_euler_characteristics() {
        let c = cusp();
        assert_eq!(c.euler_open_stratum(3).unwrap(), -1);
        assert_eq!(c.euler_open_stratum(1).unwrap(), 1);
        assert_eq!(node().euler_open_stratum(1).unwrap(), 0);
        assert_eq!(SncConfiguration::point_configuration(5).euler_open_stratum(1).unwrap(), 1);
    }

    #[test]
    fn higher_dimension_needs_supplied_euler() {
        let mut c = SncConfiguration::point_configuration(2);
        c.ambient_dim = 3;
        assert!(matches!(c.euler_open_stratum(1), Err(Error::UnsupportedDimension { dim: 3, .. })));
        c.divisors[0].euler_open = Some(4);
        assert_eq!(c.euler_open_stratum(1).unwrap(), 4);
    }

    #[test]
    fn json_round_trip() {
        let c = cusp();
        assert_eq!(SncConfiguration::from_json(&c.to_json()).unwrap(), c);
    }
}
