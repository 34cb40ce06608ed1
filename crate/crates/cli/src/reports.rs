//! Serializable command results and their plain-text form.

use std::collections::BTreeMap;
use std::fmt::Write;

use jetloci::curve::ResolutionLog;
use jetloci::oracle::{ChiFit, CountReport, FibrationReport};
use jetloci::pipeline::WeightSource;
use jetloci::spectral::GapAnalysis;
use jetloci::weights::WeightCheck;
use jetloci::{E1Page, EulerCheck, Separation, SncConfiguration, Stage, ValidationReport, WeightVector};
use serde::{Deserialize, Serialize};

use crate::tables::{configuration_table, grid, hc_table, page_table, weights_line};

pub const AMPLE_NOTE: &str = "weights are relatively ample (positive on every exceptional curve); \
very ampleness is not certified, use --scale to enlarge them";

pub trait Render {
    fn table(&self) -> String;

    /// False when the command ran a check that failed.
    fn passed(&self) -> bool {
        true
    }
}

fn source_name(w: WeightSource) -> &'static str {
    match w {
        WeightSource::Override => "supplied",
        WeightSource::Configuration => "from the configuration",
        WeightSource::Solved => "solved",
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateOutput {
    pub source: String,
    pub configuration: SncConfiguration,
    pub validation: ValidationReport,
}

impl Render for ValidateOutput {
    fn table(&self) -> String {
        let mut out = format!("{}\n", self.source);
        out.push_str(&configuration_table(&self.configuration));
        if self.validation.violations.is_empty() {
            out.push_str("no violations\n");
        }
        for v in &self.validation.violations {
            let _ = writeln!(out, "{v}");
        }
        let _ = writeln!(out, "valid: {}", if self.validation.is_valid() { "yes" } else { "no" });
        out
    }

    fn passed(&self) -> bool {
        self.validation.is_valid()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveOutput {
    pub f: String,
    pub configuration: SncConfiguration,
    pub log: Option<ResolutionLog>,
}

impl Render for ResolveOutput {
    fn table(&self) -> String {
        let mut out = format!("f = {}\n", self.f);
        if let Some(log) = &self.log {
            let mut rows =
                vec![["step", "center", "through", "mult", "new", "m", "nu", "ord(x,y)"].map(String::from).to_vec()];
            for s in &log.steps {
                let through: Vec<String> = s.through.iter().map(|id| id.to_string()).collect();
                rows.push(vec![
                    s.step.to_string(),
                    s.center.clone(),
                    if through.is_empty() { "-".into() } else { through.join(",") },
                    s.strict_multiplicity.to_string(),
                    s.new_divisor.to_string(),
                    s.mult.to_string(),
                    s.disc.to_string(),
                    format!("({}, {})", s.valuation.0, s.valuation.1),
                ]);
            }
            out.push_str(&grid(&rows));
        }
        out.push_str(&configuration_table(&self.configuration));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparateOutput {
    pub source: String,
    pub m: u64,
    pub separation: Separation,
}

impl Render for SeparateOutput {
    fn table(&self) -> String {
        let mut out = format!("{}, m = {}\n", self.source, self.m);
        if self.separation.records.is_empty() {
            out.push_str("already m-separating, nothing to do\n");
        } else {
            let mut rows =
                vec![["pass", "level", "cell", "point", "new", "label", "m", "nu", "over"].map(String::from).to_vec()];
            for r in &self.separation.records {
                rows.push(vec![
                    r.pass.to_string(),
                    r.level.to_string(),
                    format!("{}-{}", r.a, r.b),
                    r.point_index.to_string(),
                    r.new_divisor.to_string(),
                    r.label.clone(),
                    r.mult.to_string(),
                    r.disc.to_string(),
                    format!("{}{}", if r.over_sigma { "yes" } else { "no" }, if r.flag_defaulted { "*" } else { "" }),
                ]);
            }
            out.push_str(&grid(&rows));
            if self.separation.records.iter().any(|r| r.flag_defaulted) {
                out.push_str("* flag defaulted to over-center for an unflagged cell\n");
            }
        }
        for w in &self.separation.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out.push_str(&configuration_table(&self.separation.config));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsOutput {
    pub source: String,
    pub m: Option<u64>,
    pub configuration: SncConfiguration,
    pub weights: WeightVector,
    pub weight_source: WeightSource,
    pub scale: u64,
    pub check: WeightCheck,
    pub note: String,
}

impl Render for WeightsOutput {
    fn table(&self) -> String {
        let mut out = self.source.clone();
        if let Some(m) = self.m {
            let _ = write!(out, ", {m}-separated");
        }
        out.push('\n');
        let _ = writeln!(
            out,
            "weights ({}): {}",
            source_name(self.weight_source),
            weights_line(&self.configuration, &self.weights)
        );
        if self.scale > 1 {
            let _ = writeln!(out, "scale factor: {}", self.scale);
        }
        let _ = writeln!(out, "valid: {}", if self.check.valid { "yes" } else { "no" });
        for p in &self.check.problems {
            let _ = writeln!(out, "problem: {p}");
        }
        let _ = writeln!(out, "note: {}", self.note);
        out
    }

    fn passed(&self) -> bool {
        self.check.valid
    }
}

fn stage_header(out: &mut String, source: &str, stage: &Stage) {
    let cfg = &stage.separation.config;
    let _ = writeln!(out, "{source}, m = {}", stage.m);
    if !stage.separation.records.is_empty() {
        let _ = writeln!(out, "separation added {} divisor(s)", stage.separation.records.len());
    }
    let _ = writeln!(out, "weights ({}): {}", source_name(stage.weight_source), weights_line(cfg, &stage.weights));
    let _ = writeln!(out, "note: {AMPLE_NOTE}");
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageOutput {
    pub source: String,
    pub stage: Stage,
    /// The page as printed; differs from `stage.page` in the Floer grading.
    pub page: E1Page,
    pub gap: Option<GapAnalysis>,
    pub note: String,
}

impl Render for PageOutput {
    fn table(&self) -> String {
        let mut out = String::new();
        stage_header(&mut out, &self.source, &self.stage);
        out.push_str(&page_table(&self.page));
        if let Some(g) = &self.gap {
            let cols = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
            let _ = writeln!(out, "gap analysis:");
            let _ = writeln!(out, "  columns: {}", cols(&g.columns));
            match g.min_gap {
                Some(gap) => {
                    let _ = writeln!(out, "  smallest gap: {gap}");
                }
                None => {
                    let _ = writeln!(out, "  smallest gap: none (at most one column)");
                }
            }
            let _ = writeln!(out, "  scale factor: {}", g.scale);
            let _ = writeln!(out, "  scaled columns: {}", cols(&g.scaled_columns));
            let _ = writeln!(
                out,
                "  rational degeneration after scaling: {} ({})",
                if g.rational_window_forced { "forced" } else { "not forced" },
                g.caveat
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcOutput {
    pub source: String,
    pub stage: Stage,
    pub note: String,
}

impl Render for HcOutput {
    fn table(&self) -> String {
        let mut out = String::new();
        stage_header(&mut out, &self.source, &self.stage);
        out.push_str(&hc_table(&self.stage.hc));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerOutput {
    pub source: String,
    pub stage: Stage,
    pub check: EulerCheck,
    pub note: String,
}

impl Render for EulerOutput {
    fn table(&self) -> String {
        let mut out = String::new();
        stage_header(&mut out, &self.source, &self.stage);
        let _ = writeln!(out, "euler characteristic of the page: {}", self.check.page_euler);
        let _ = writeln!(out, "lefschetz number: {}", self.check.lefschetz);
        let _ = writeln!(out, "{}", pass_fail(self.check.pass));
        out
    }

    fn passed(&self) -> bool {
        self.check.pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaOutput {
    pub source: String,
    pub factors: Vec<(u64, i64)>,
    pub reduced: BTreeMap<u64, i64>,
    pub display: String,
}

impl Render for ZetaOutput {
    fn table(&self) -> String {
        let mut out = format!("{}\n", self.source);
        let _ = writeln!(out, "zeta(t) = {}", self.display);
        for (len, e) in &self.reduced {
            let _ = writeln!(out, "  (1-t^{len}) exponent {e}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzOutput {
    pub source: String,
    pub values: Vec<(u64, i64)>,
}

impl Render for LefschetzOutput {
    fn table(&self) -> String {
        let mut rows = vec![vec!["m".to_string(), "lefschetz".to_string()]];
        rows.extend(self.values.iter().map(|(m, v)| vec![m.to_string(), v.to_string()]));
        format!("{}\n{}", self.source, grid(&rows))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCount {
    pub report: CountReport,
    /// Residue of `q` modulo the lcm of the multiplicities that divide `m`.
    pub residue: Option<(u64, u64)>,
    pub predicted: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOutput {
    pub f: String,
    pub m: u64,
    pub level: u64,
    pub predicted_polynomial: Option<String>,
    pub modulus: Option<u64>,
    pub counts: Vec<PrimeCount>,
}

impl CountOutput {
    pub fn mismatches(&self) -> usize {
        self.counts.iter().filter(|c| c.predicted.is_some_and(|p| p != c.report.total)).count()
    }
}

impl Render for CountOutput {
    fn table(&self) -> String {
        let mut out = format!("f = {}, m = {}, level {}\n", self.f, self.m, self.level);
        if let (Some(p), Some(md)) = (&self.predicted_polynomial, self.modulus) {
            let _ = writeln!(out, "predicted count for q = 1 mod {md}: {p}");
        }
        let mut rows = vec![["q", "count", "predicted", "q mod", "nodes", "ms"].map(String::from).to_vec()];
        for c in &self.counts {
            let r = &c.report;
            rows.push(vec![
                r.q.to_string(),
                r.total.to_string(),
                c.predicted
                    .map_or_else(|| "-".into(), |p| format!("{p}{}", if p == r.total { "" } else { " (mismatch)" })),
                c.residue.map_or_else(|| "-".into(), |(res, md)| format!("{res} (mod {md})")),
                r.nodes.to_string(),
                r.elapsed_ms.to_string(),
            ]);
        }
        out.push_str(&grid(&rows));
        for c in &self.counts {
            let _ =
                writeln!(out, "strata at q = {} (orders of the coordinates, {} = zero):", c.report.q, self.level + 1);
            for s in &c.report.strata {
                let o: Vec<String> = s.orders.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "  ({}): {}", o.join(", "), s.count);
            }
        }
        out
    }

    fn passed(&self) -> bool {
        self.mismatches() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiOutput {
    pub f: String,
    pub m: u64,
    pub dim: usize,
    pub counts: Vec<(u64, u128)>,
    pub fit: ChiFit,
}

impl Render for ChiOutput {
    fn table(&self) -> String {
        let mut out = format!("f = {}, m = {}, expected degree {}\n", self.f, self.m, self.dim);
        let mut rows = vec![vec!["q".to_string(), "count".to_string()]];
        rows.extend(self.counts.iter().map(|(q, n)| vec![q.to_string(), n.to_string()]));
        out.push_str(&grid(&rows));
        let _ = writeln!(out, "fit: {}", self.fit.polynomial);
        for (q, r) in &self.fit.residuals {
            let _ = writeln!(out, "residual at q = {q}: {r}");
        }
        let _ = writeln!(out, "euler characteristic (fit at q = 1): {}", self.fit.chi);
        let _ = writeln!(out, "verdict: {}", self.fit.verdict);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationOutput {
    pub reports: Vec<FibrationReport>,
}

impl Render for FibrationOutput {
    fn table(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let _ = writeln!(
                out,
                "q = {}, m = {}, level {}, d = {}, nu = {}: {} source jets, {} image points, expected fiber {}",
                r.q, r.m, r.l, r.d, r.nu, r.source_jets, r.image_points, r.expected_fiber
            );
            for (size, n) in &r.histogram {
                let _ = writeln!(out, "  fiber size {size}: {n} point(s)");
            }
            let _ = writeln!(out, "  {}", pass_fail(r.pass));
        }
        out
    }

    fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullReport {
    pub source: String,
    pub base: SncConfiguration,
    pub stage: Stage,
    pub lefschetz: i64,
    pub counts: Option<CountOutput>,
    pub fit: Option<ChiFit>,
    pub checks: Vec<CheckLine>,
    pub pass: bool,
    pub note: String,
}

impl Render for FullReport {
    fn table(&self) -> String {
        let mut out = String::new();
        stage_header(&mut out, &self.source, &self.stage);
        out.push_str(&configuration_table(&self.stage.separation.config));
        out.push_str(&page_table(&self.stage.page));
        out.push_str(&hc_table(&self.stage.hc));
        let _ = writeln!(out, "lefschetz number: {}", self.lefschetz);
        if let Some(c) = &self.counts {
            out.push_str(&c.table());
        }
        if let Some(fit) = &self.fit {
            let _ = writeln!(out, "fit: {} ({})", fit.polynomial, fit.verdict);
        }
        out.push_str("checks:\n");
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            let _ = writeln!(out, "  {tag} {}: {}", c.name, c.detail);
        }
        let _ = writeln!(out, "verdict: {}", pass_fail(self.pass));
        out
    }

    fn passed(&self) -> bool {
        self.pass
    }
}
