//! The first page of the spectral sequence converging to the compactly
//! supported cohomology of the contact locus `X_m`, its degeneration
//! analysis, and the dimension formulas attached to the strata.
//!
//! A divisor `i ∈ S_m` with `k_i = m / m_i` contributes `H_n(Ẽ_i°)` in column
//! `p = -w_i k_i` at total degree `2(d(m+1) - k_i ν_i - 1) - n`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::covers::{compute_covers, CoverMap};
use crate::error::{Error, Result};
use crate::model::{DivisorId, SncConfiguration};
use crate::poly::Polynomial;
use crate::separation::require_m_separating;
use crate::weights::WeightVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub divisor: DivisorId,
    pub label: String,
    pub mult: u64,
    pub disc: u64,
    pub k: u64,
    pub p: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributingSet {
    pub m: u64,
    pub members: Vec<Member>,
}

/// Divisors over Σ whose multiplicity divides `m`, in id order, with
/// `k = m / m_i`. No separation check.
pub fn divisors_dividing(cfg: &SncConfiguration, m: u64) -> Vec<(DivisorId, u64, u64)> {
    let mut out: Vec<_> = cfg
        .divisors
        .iter()
        .filter(|d| d.over_sigma && d.mult > 0 && m.is_multiple_of(d.mult))
        .map(|d| (d.id, m / d.mult, d.disc))
        .collect();
    out.sort_unstable();
    out
}

pub fn contributing_set(cfg: &SncConfiguration, w: &WeightVector, m: u64) -> Result<ContributingSet> {
    if m == 0 {
        return Err(Error::Precondition("contact order m must be at least 1".into()));
    }
    require_m_separating(cfg, m)?;
    let mut members = Vec::new();
    for (id, k, disc) in divisors_dividing(cfg, m) {
        let d = cfg.divisor(id)?;
        members.push(Member {
            divisor: id,
            label: d.label.clone(),
            mult: d.mult,
            disc,
            k,
            p: -((w.get(id) * k) as i64),
        });
    }
    Ok(ContributingSet { m, members })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grading {
    /// Total degree is the cohomological degree of `H_c^*(X_m)`.
    ContactLocus,
    /// Total degree shifted down by `2dm + d - 1`.
    McLean,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contributor {
    pub divisor: DivisorId,
    pub label: String,
    pub homology_degree: u32,
    pub rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionPiece {
    pub divisor: DivisorId,
    pub homology_degree: u32,
    pub elementary_divisors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Entry {
    pub p: i64,
    pub q: i64,
    pub rank: u64,
    pub torsion: Vec<TorsionPiece>,
    pub contributors: Vec<Contributor>,
}

impl E1Entry {
    pub fn total(&self) -> i64 {
        self.p + self.q
    }

    pub fn is_zero_integrally(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1Page {
    pub m: u64,
    pub d: u32,
    pub grading: Grading,
    /// Sorted by `(p, q)`.
    pub entries: Vec<E1Entry>,
}

impl E1Page {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, p: i64, q: i64) -> Option<&E1Entry> {
        self.entries.iter().find(|e| e.p == p && e.q == q)
    }

    /// Alternating sum of ranks over total degrees.
    pub fn euler_characteristic(&self) -> i64 {
        self.entries.iter().map(|e| if e.total().rem_euclid(2) == 0 { e.rank as i64 } else { -(e.rank as i64) }).sum()
    }

    /// Summed rank per total degree.
    pub fn ranks_by_total_degree(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.total()).or_insert(0) += e.rank;
        }
        out.retain(|_, r| *r > 0);
        out
    }

    /// The weight-independent content `(total degree, rank, divisor)`.
    pub fn content(&self) -> Vec<(i64, u64, DivisorId)> {
        let mut out: Vec<_> = self
            .entries
            .iter()
            .flat_map(|e| e.contributors.iter().map(move |c| (e.total(), c.rank, c.divisor)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn shift(&self) -> i64 {
        mclean_shift(self.d, self.m)
    }
}

/// Base total degree `2(d(m+1) - kν - 1)` of the contribution of a divisor.
pub fn base_degree(d: u32, m: u64, k: u64, disc: u64) -> i64 {
    2 * (d as i64 * (m as i64 + 1) - (k * disc) as i64 - 1)
}

pub fn e1_page(cfg: &SncConfiguration, w: &WeightVector, m: u64, covers: &CoverMap) -> Result<E1Page> {
    let set = contributing_set(cfg, w, m)?;
    let missing: Vec<DivisorId> =
        set.members.iter().map(|mb| mb.divisor).filter(|id| !covers.contains_key(id)).collect();
    if !missing.is_empty() {
        return Err(Error::MissingCoverData(missing));
    }
    let d = cfg.ambient_dim;
    let mut cells: BTreeMap<(i64, i64), E1Entry> = BTreeMap::new();
    for mb in &set.members {
        let cover = &covers[&mb.divisor];
        let top = base_degree(d, m, mb.k, mb.disc);
        let mut degrees: BTreeMap<u32, (u64, Option<Vec<u64>>)> = BTreeMap::new();
        for (n, &b) in cover.betti.iter().enumerate() {
            if b > 0 {
                degrees.entry(n as u32).or_default().0 = b;
            }
        }
        for t in &cover.torsion {
            degrees.entry(t.degree).or_default().1 = Some(t.elementary_divisors.clone());
        }
        for (n, (rank, torsion)) in degrees {
            let total = top - n as i64;
            let q = total - mb.p;
            let entry = cells.entry((mb.p, q)).or_insert_with(|| E1Entry {
                p: mb.p,
                q,
                rank: 0,
                torsion: Vec::new(),
                contributors: Vec::new(),
            });
            entry.rank += rank;
            if let Some(ed) = torsion {
                entry.torsion.push(TorsionPiece { divisor: mb.divisor, homology_degree: n, elementary_divisors: ed });
            }
            entry.contributors.push(Contributor {
                divisor: mb.divisor,
                label: mb.label.clone(),
                homology_degree: n,
                rank,
            });
        }
    }
    Ok(E1Page { m, d, grading: Grading::ContactLocus, entries: cells.into_values().collect() })
}

/// Convenience wrapper computing cover data for the contributing divisors.
pub fn e1_page_with_computed_covers(cfg: &SncConfiguration, w: &WeightVector, m: u64) -> Result<E1Page> {
    let set = contributing_set(cfg, w, m)?;
    let ids: Vec<DivisorId> = set.members.iter().map(|mb| mb.divisor).collect();
    let covers = compute_covers(cfg, &ids)?;
    e1_page(cfg, w, m, &covers)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum DegreeStatus {
    Zero,
    /// Exactly known; `free` is false when only the associated graded is known.
    Exact {
        rank: u64,
        free: bool,
    },
    Bounds {
        lo: u64,
        hi: u64,
    },
}

impl DegreeStatus {
    pub fn is_exact(&self) -> bool {
        !matches!(self, DegreeStatus::Bounds { .. })
    }

    pub fn range(&self) -> (u64, u64) {
        match *self {
            DegreeStatus::Zero => (0, 0),
            DegreeStatus::Exact { rank, .. } => (rank, rank),
            DegreeStatus::Bounds { lo, hi } => (lo, hi),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub page: i64,
    pub cap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub degree: i64,
    pub e1_rank: u64,
    pub torsion: bool,
    pub integral: DegreeStatus,
    pub rational: DegreeStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcReport {
    pub m: u64,
    pub d: u32,
    pub grading: Grading,
    pub degrees: Vec<DegreeReport>,
    /// No differential on any page joins two nonzero entries.
    pub integral_forced: bool,
    /// No differential `d_r` with `1 ≤ r ≤ d` joins two nonzero rational entries.
    pub rational_window_forced: bool,
    pub euler_characteristic: i64,
    pub arrows: Vec<Arrow>,
}

impl HcReport {
    pub fn degree(&self, n: i64) -> Option<&DegreeReport> {
        self.degrees.iter().find(|r| r.degree == n)
    }

    /// Rational status of degree `n`; degrees absent from the page are zero.
    pub fn rational(&self, n: i64) -> DegreeStatus {
        self.degree(n).map(|r| r.rational.clone()).unwrap_or(DegreeStatus::Zero)
    }

    pub fn integral(&self, n: i64) -> DegreeStatus {
        self.degree(n).map(|r| r.integral.clone()).unwrap_or(DegreeStatus::Zero)
    }

    /// Whether some choice of ranks within the rational bounds has the
    /// reported Euler characteristic.
    pub fn bounds_admit_euler_characteristic(&self) -> bool {
        let (mut lo, mut hi) = (0i64, 0i64);
        for r in &self.degrees {
            let (a, b) = r.rational.range();
            if r.degree.rem_euclid(2) == 0 {
                lo += a as i64;
                hi += b as i64;
            } else {
                lo -= b as i64;
                hi -= a as i64;
            }
        }
        lo <= self.euler_characteristic && self.euler_characteristic <= hi
    }
}

/// Potential differentials `d_r: (p, q) → (p + r, q - r + 1)`, `r ≥ 1`,
/// between entries accepted by `nonzero`.
fn arrows(page: &E1Page, nonzero: impl Fn(&E1Entry) -> bool, max_r: Option<i64>) -> Vec<Arrow> {
    let live: Vec<&E1Entry> = page.entries.iter().filter(|e| nonzero(e)).collect();
    let mut out = Vec::new();
    for a in &live {
        for b in &live {
            let r = b.p - a.p;
            if r >= 1 && b.total() == a.total() + 1 && max_r.is_none_or(|mr| r <= mr) {
                out.push(Arrow { from: (a.p, a.q), to: (b.p, b.q), page: r, cap: a.rank.min(b.rank) });
            }
        }
    }
    out
}

fn statuses(page: &E1Page, arrows: &[Arrow], integral: bool) -> BTreeMap<i64, DegreeStatus> {
    let mut per_degree: BTreeMap<i64, (u64, u64, bool, bool)> = BTreeMap::new();
    for e in &page.entries {
        let cancel: u64 = arrows.iter().filter(|a| a.from == (e.p, e.q) || a.to == (e.p, e.q)).map(|a| a.cap).sum();
        let touched = arrows.iter().any(|a| a.from == (e.p, e.q) || a.to == (e.p, e.q));
        let slot = per_degree.entry(e.total()).or_insert((0, 0, false, false));
        slot.0 += e.rank;
        slot.1 += e.rank - cancel.min(e.rank);
        slot.2 |= touched;
        slot.3 |= !e.torsion.is_empty();
    }
    per_degree
        .into_iter()
        .map(|(n, (hi, lo, touched, torsion))| {
            let status = if touched {
                DegreeStatus::Bounds { lo, hi }
            } else if hi == 0 && !(integral && torsion) {
                DegreeStatus::Zero
            } else {
                DegreeStatus::Exact { rank: hi, free: !(integral && torsion) }
            };
            (n, status)
        })
        .collect()
}

pub fn degeneration_analysis(page: &E1Page) -> HcReport {
    let integral_arrows = arrows(page, |e| !e.is_zero_integrally(), None);
    let rational_arrows = arrows(page, |e| e.rank > 0, Some(page.d as i64));
    let integral = statuses(page, &integral_arrows, true);
    let rational = statuses(page, &rational_arrows, false);
    let mut degrees = Vec::new();
    for (n, st) in &integral {
        let e1_rank = page.entries.iter().filter(|e| e.total() == *n).map(|e| e.rank).sum();
        let torsion = page.entries.iter().any(|e| e.total() == *n && !e.torsion.is_empty());
        degrees.push(DegreeReport {
            degree: *n,
            e1_rank,
            torsion,
            integral: st.clone(),
            rational: rational[n].clone(),
        });
    }
    let mut all = integral_arrows.clone();
    for a in rational_arrows.iter() {
        if !all.contains(a) {
            all.push(a.clone());
        }
    }
    HcReport {
        m: page.m,
        d: page.d,
        grading: page.grading,
        degrees,
        integral_forced: integral_arrows.is_empty(),
        rational_window_forced: rational_arrows.is_empty(),
        euler_characteristic: page.euler_characteristic(),
        arrows: all,
    }
}

pub fn mclean_shift(d: u32, m: u64) -> i64 {
    2 * d as i64 * m as i64 + d as i64 - 1
}

fn shifted(page: &E1Page, by: i64, grading: Grading) -> E1Page {
    let mut out = page.clone();
    out.grading = grading;
    for e in &mut out.entries {
        e.q += by;
    }
    out
}

/// Moves every entry from total degree `n` to `n - (2dm + d - 1)`, keeping `p`.
pub fn mclean_relabel(page: &E1Page) -> E1Page {
    match page.grading {
        Grading::McLean => page.clone(),
        Grading::ContactLocus => shifted(page, -page.shift(), Grading::McLean),
    }
}

/// Inverse of [`mclean_relabel`].
pub fn contact_relabel(page: &E1Page) -> E1Page {
    match page.grading {
        Grading::ContactLocus => page.clone(),
        Grading::McLean => shifted(page, page.shift(), Grading::ContactLocus),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum InitialForm {
    /// A power `ℓ^p` of a linear form: the Milnor fiber is `p` parallel hyperplanes.
    PowerOfLinear { p: u64 },
    /// A homogeneous form of the given degree with an isolated singularity.
    HomogeneousIsolated { degree: u64 },
    /// Betti numbers of the Milnor fiber given directly.
    Supplied { betti: Vec<u64> },
}

impl InitialForm {
    pub fn milnor_betti(&self, d: u32) -> Vec<u64> {
        match self {
            InitialForm::PowerOfLinear { p } => vec![*p],
            InitialForm::HomogeneousIsolated { degree } => {
                let mut b = vec![0; d.max(1) as usize];
                b[0] += 1;
                b[d.max(1) as usize - 1] += (degree - 1).pow(d);
                b
            }
            InitialForm::Supplied { betti } => betti.clone(),
        }
    }
}

/// Recognizes initial forms that are a power of a coordinate, or (in two
/// variables) square-free binary forms.
pub fn classify_initial_form(f: &Polynomial) -> Option<InitialForm> {
    let init = f.initial_form();
    let degree = init.multiplicity()? as u64;
    let terms: Vec<_> = init.terms().collect();
    if terms.len() == 1 && terms[0].0.iter().filter(|&&e| e > 0).count() == 1 {
        return Some(InitialForm::PowerOfLinear { p: degree });
    }
    if init.num_vars() == 2 {
        let sf = init.to_poly2().ok()?.squarefree_decomposition().ok()?;
        if sf.iter().all(|(k, _)| *k == 1) {
            return Some(InitialForm::HomogeneousIsolated { degree });
        }
    }
    None
}

/// `H_c^n(X_m) ≅ H_{2(dm-1)-n}(F)` where `F` is the Milnor fiber of the
/// initial form and `m` is the multiplicity.
pub fn multiplicity_case_prediction(d: u32, m: u64, milnor_betti: &[u64]) -> BTreeMap<i64, u64> {
    let top = 2 * (d as i64 * m as i64 - 1);
    milnor_betti.iter().enumerate().filter(|(_, &b)| b > 0).map(|(j, &b)| (top - j as i64, b)).collect()
}

/// `l₀ = max over S_m of max{2k(ν-1), k(ν-1) + m}`.
pub fn stabilization_level(cfg: &SncConfiguration, m: u64) -> Result<u64> {
    divisors_dividing(cfg, m)
        .into_iter()
        .map(|(_, k, nu)| (2 * k * (nu - 1)).max(k * (nu - 1) + m))
        .max()
        .ok_or_else(|| Error::Precondition(format!("no divisor over Σ has multiplicity dividing {m}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Jet(u64),
    Contact,
}

/// Dimension of the stratum of jets (or contact jets) lifting to `Ẽ_i°`.
pub fn stratum_dimension(cfg: &SncConfiguration, id: DivisorId, m: u64, level: Level) -> Result<i64> {
    let (_, k, nu) = divisors_dividing(cfg, m)
        .into_iter()
        .find(|(i, _, _)| *i == id)
        .ok_or_else(|| Error::Precondition(format!("divisor {id} is not in S_{m}")))?;
    let l = match level {
        Level::Jet(l) => l,
        Level::Contact => m,
    };
    Ok(cfg.ambient_dim as i64 * (l as i64 + 1) - (k * nu) as i64 - 1)
}

/// `e = Σ k_i (ν_i - 1)` for a contact multi-index given as `(k_i, ν_i)` pairs.
pub fn fiber_dimension(multi_index: &[(u64, u64)]) -> u64 {
    multi_index.iter().map(|&(k, nu)| k * nu.saturating_sub(1)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapAnalysis {
    pub columns: Vec<i64>,
    pub min_gap: Option<i64>,
    pub scale: u64,
    pub scaled_columns: Vec<i64>,
    pub rational_window_forced: bool,
    pub caveat: String,
}

pub const GAP_CAVEAT: &str = "conditional on the page bound applying to the scaled weight choice";

/// Scales `w` until distinct columns are more than `d` apart and reports
/// whether the page bound would then force rational degeneration.
pub fn gap_analysis(cfg: &SncConfiguration, w: &WeightVector, m: u64, covers: &CoverMap) -> Result<GapAnalysis> {
    let page = e1_page(cfg, w, m, covers)?;
    let mut columns: Vec<i64> = page.entries.iter().map(|e| e.p).collect();
    columns.dedup();
    let min_gap = columns.windows(2).map(|p| p[1] - p[0]).min();
    let d = cfg.ambient_dim as i64;
    let scale = match min_gap {
        Some(g) => (d / g + 1) as u64,
        None => 1,
    };
    let scaled = e1_page(cfg, &w.scaled(scale), m, covers)?;
    let mut scaled_columns: Vec<i64> = scaled.entries.iter().map(|e| e.p).collect();
    scaled_columns.dedup();
    Ok(GapAnalysis {
        columns,
        min_gap,
        scale,
        scaled_columns,
        rational_window_forced: degeneration_analysis(&scaled).rational_window_forced,
        caveat: GAP_CAVEAT.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{cusp, node};
    use crate::weights::solve_weights;

    fn wv(pairs: &[(DivisorId, u64)]) -> WeightVector {
        WeightVector(pairs.iter().copied().collect())
    }

    fn cusp_w() -> WeightVector {
        wv(&[(1, 4), (2, 6), (3, 11)])
    }

    #[test]
    fn cusp_contributing_sets() {
        let s = contributing_set(&cusp(), &cusp_w(), 6).unwrap();
        let got: Vec<_> = s.members.iter().map(|m| (m.divisor, m.k, m.p)).collect();
        assert_eq!(got, vec![(1, 3, -12), (2, 2, -12), (3, 1, -11)]);
        assert!(contributing_set(&cusp(), &cusp_w(), 5).unwrap().members.is_empty());
        assert!(matches!(contributing_set(&cusp(), &cusp_w(), 7), Err(Error::NotSeparating { .. })));
        let n = contributing_set(&node(), &wv(&[(1, 1)]), 2).unwrap();
        assert_eq!(n.members[0].p, -1);
    }

    #[test]
    fn cusp_page_m6() {
        let page = e1_page_with_computed_covers(&cusp(), &cusp_w(), 6).unwrap();
        assert_eq!(page.ranks_by_total_degree(), BTreeMap::from([(14, 5), (15, 7), (16, 1)]));
        assert_eq!(page.euler_characteristic(), -1);
        let e = page.entry(-12, 26).unwrap();
        assert_eq!(e.contributors.len(), 2);
        let hc = degeneration_analysis(&page);
        assert_eq!(hc.integral(16), DegreeStatus::Exact { rank: 1, free: true });
        assert_eq!(hc.rational(14), DegreeStatus::Bounds { lo: 0, hi: 5 });
        assert_eq!(hc.rational(15), DegreeStatus::Bounds { lo: 2, hi: 7 });
        assert!(!hc.rational_window_forced);
        assert!(hc.bounds_admit_euler_characteristic());
    }

    #[test]
    fn cusp_page_m2_single_column() {
        let page = e1_page_with_computed_covers(&cusp(), &cusp_w(), 2).unwrap();
        assert_eq!(page.ranks_by_total_degree(), BTreeMap::from([(6, 2)]));
        let hc = degeneration_analysis(&page);
        assert!(hc.integral_forced);
        assert_eq!(hc.integral(6), DegreeStatus::Exact { rank: 2, free: true });
        let mc = mclean_relabel(&page);
        assert_eq!(mc.ranks_by_total_degree(), BTreeMap::from([(-3, 2)]));
        assert_eq!(contact_relabel(&mc), page);
    }

    #[test]
    fn point_pages() {
        let c = SncConfiguration::point_configuration(3);
        let w = WeightVector::new();
        let page = e1_page_with_computed_covers(&c, &w, 6).unwrap();
        assert_eq!(page.entries.len(), 1);
        assert_eq!((page.entries[0].p, page.entries[0].q, page.entries[0].rank), (0, 8, 3));
        assert!(e1_page_with_computed_covers(&c, &w, 5).unwrap().is_empty());
        let r3 = e1_page_with_computed_covers(&c, &w, 3).unwrap();
        assert_eq!(mclean_relabel(&r3).ranks_by_total_degree(), BTreeMap::from([(-2, 3)]));
    }

    #[test]
    fn empty_page_analysis() {
        let page = E1Page { m: 5, d: 2, grading: Grading::ContactLocus, entries: vec![] };
        let hc = degeneration_analysis(&page);
        assert!(hc.degrees.is_empty());
        assert_eq!(hc.euler_characteristic, 0);
        assert_eq!(mclean_relabel(&page).entries.len(), 0);
    }

    #[test]
    fn missing_covers_are_listed() {
        let covers = CoverMap::new();
        match e1_page(&cusp(), &cusp_w(), 6, &covers) {
            Err(Error::MissingCoverData(ids)) => assert_eq!(ids, vec![1, 2, 3]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn torsion_downgrades_integral_status() {
        let mut c = SncConfiguration::point_configuration(2);
        c.divisors[0].cover_betti = Some(vec![2]);
        c.divisors[0].cover_torsion =
            Some(vec![crate::model::TorsionDescriptor { degree: 0, elementary_divisors: vec![3] }]);
        let page = e1_page_with_computed_covers(&c, &WeightVector::new(), 2).unwrap();
        let hc = degeneration_analysis(&page);
        assert_eq!(hc.integral(2), DegreeStatus::Exact { rank: 2, free: false });
        assert_eq!(hc.rational(2), DegreeStatus::Exact { rank: 2, free: true });
    }

    #[test]
    fn multiplicity_case() {
        assert_eq!(multiplicity_case_prediction(2, 2, &[2]), BTreeMap::from([(6, 2)]));
        let b = InitialForm::HomogeneousIsolated { degree: 3 }.milnor_betti(2);
        assert_eq!(multiplicity_case_prediction(2, 3, &b), BTreeMap::from([(9, 4), (10, 1)]));
        assert_eq!(multiplicity_case_prediction(1, 4, &[4]), BTreeMap::from([(6, 4)]));
        let f = Polynomial::parse("x^2 + y^3").unwrap();
        assert_eq!(classify_initial_form(&f), Some(InitialForm::PowerOfLinear { p: 2 }));
        let g = Polynomial::parse("x^3 + y^3").unwrap();
        assert_eq!(classify_initial_form(&g), Some(InitialForm::HomogeneousIsolated { degree: 3 }));
        let h = Polynomial::parse("x^2 y + x^4").unwrap();
        assert_eq!(classify_initial_form(&h), None);
    }

    #[test]
    fn stabilization_and_dimensions() {
        assert_eq!(stabilization_level(&cusp(), 2).unwrap(), 3);
        assert_eq!(stabilization_level(&cusp(), 6).unwrap(), 10);
        assert_eq!(stabilization_level(&SncConfiguration::point_configuration(4), 4).unwrap(), 4);
        assert!(stabilization_level(&cusp(), 5).is_err());
        assert_eq!(stratum_dimension(&cusp(), 1, 2, Level::Contact).unwrap(), 3);
        assert_eq!(stratum_dimension(&cusp(), 3, 6, Level::Contact).unwrap(), 8);
        assert_eq!(stratum_dimension(&node(), 1, 2, Level::Jet(3)).unwrap(), 5);
        assert!(stratum_dimension(&cusp(), 3, 2, Level::Contact).is_err());
        assert_eq!(fiber_dimension(&[(1, 2)]), 1);
        assert_eq!(fiber_dimension(&[(1, 5)]), 4);
        assert_eq!(fiber_dimension(&[(3, 1)]), 0);
    }

    #[test]
    fn gap_analysis_scales_apart() {
        let c = cusp();
        let w = solve_weights(&c).unwrap();
        let covers = compute_covers(&c, &[1, 2, 3]).unwrap();
        let g = gap_analysis(&c, &w, 6, &covers).unwrap();
        assert_eq!(g.columns, vec![-12, -11]);
        assert_eq!(g.scale, 3);
        assert!(g.rational_window_forced);
        assert_eq!(g.caveat, GAP_CAVEAT);
    }
}
