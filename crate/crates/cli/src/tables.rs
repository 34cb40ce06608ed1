//! Plain-text rendering of pages, degeneration reports and configurations.

use std::collections::BTreeSet;
use std::fmt::Write;

use jetloci::model::SncConfiguration;
use jetloci::spectral::{DegreeStatus, E1Entry, E1Page, Grading, HcReport};
use jetloci::WeightVector;

/// Left-aligned columns separated by two spaces, first column right-aligned.
pub fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            let pad = widths[c] - cell.chars().count();
            if c == 0 {
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            } else {
                line.push_str("  ");
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn free_group(symbol: &str, rank: u64) -> String {
    match rank {
        0 => "0".into(),
        1 => symbol.into(),
        r => format!("{symbol}^{r}"),
    }
}

fn entry_cell(e: &E1Entry) -> String {
    let mut group = free_group("Z", e.rank);
    for t in &e.torsion {
        let parts: Vec<String> = t.elementary_divisors.iter().map(|d| format!("Z/{d}")).collect();
        group = if e.rank == 0 && group == "0" { parts.join("+") } else { format!("{group}+{}", parts.join("+")) };
    }
    let who: Vec<String> = e.contributors.iter().map(|c| format!("{}:H{}", c.label, c.homology_degree)).collect();
    format!("{group} [{}]", who.join(", "))
}

pub fn weights_line(cfg: &SncConfiguration, w: &WeightVector) -> String {
    if w.is_empty() {
        return "none (no exceptional divisors)".into();
    }
    w.0.iter()
        .map(|(&id, &v)| {
            let label = cfg.divisor(id).map(|d| d.label.clone()).unwrap_or_else(|_| id.to_string());
            format!("{label}={v}")
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn page_table(page: &E1Page) -> String {
    let mut out = String::new();
    let grading = match page.grading {
        Grading::ContactLocus => "contact-locus grading",
        Grading::McLean => "Floer grading",
    };
    let _ = writeln!(out, "E1 page, m = {}, d = {}, {grading}", page.m, page.d);
    if page.is_empty() {
        let _ = writeln!(out, "empty: no divisor over the singular point has multiplicity dividing {}", page.m);
        let _ = writeln!(out, "euler characteristic: 0");
        return out;
    }
    let ps: BTreeSet<i64> = page.entries.iter().map(|e| e.p).collect();
    let qs: BTreeSet<i64> = page.entries.iter().map(|e| e.q).collect();
    let mut rows =
        vec![std::iter::once("q \\ p".to_string()).chain(ps.iter().map(|p| p.to_string())).collect::<Vec<_>>()];
    for &q in &qs {
        let mut row = vec![q.to_string()];
        for &p in &ps {
            row.push(page.entry(p, q).map(entry_cell).unwrap_or_else(|| ".".into()));
        }
        rows.push(row);
    }
    out.push_str(&grid(&rows));
    let ranks: Vec<String> = page.ranks_by_total_degree().iter().map(|(n, r)| format!("{n}: {r}")).collect();
    let _ = writeln!(out, "rank by total degree p+q: {}", ranks.join(", "));
    let _ = writeln!(out, "euler characteristic: {}", page.euler_characteristic());
    out
}

fn status_cell(st: &DegreeStatus, symbol: &str) -> String {
    match st {
        DegreeStatus::Zero => "0".into(),
        DegreeStatus::Exact { rank, free: true } => free_group(symbol, *rank),
        DegreeStatus::Exact { rank, free: false } => format!("graded {} + torsion", free_group(symbol, *rank)),
        DegreeStatus::Bounds { lo, hi } => format!("rank in [{lo}, {hi}]"),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn hc_table(hc: &HcReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "H_c, m = {}, d = {}", hc.m, hc.d);
    if hc.degrees.is_empty() {
        let _ = writeln!(out, "all groups vanish");
    } else {
        let mut rows = vec![vec!["degree".into(), "E1 rank".into(), "integral".into(), "rational".into()]];
        for r in &hc.degrees {
            rows.push(vec![
                r.degree.to_string(),
                r.e1_rank.to_string(),
                status_cell(&r.integral, "Z"),
                status_cell(&r.rational, "Q"),
            ]);
        }
        out.push_str(&grid(&rows));
    }
    let _ = writeln!(out, "integral degeneration forced: {}", yes_no(hc.integral_forced));
    let _ = writeln!(out, "rational degeneration forced by the page bound: {}", yes_no(hc.rational_window_forced));
    for a in &hc.arrows {
        let _ = writeln!(
            out,
            "possible d_{}: ({}, {}) -> ({}, {}), rank at most {}",
            a.page, a.from.0, a.from.1, a.to.0, a.to.1, a.cap
        );
    }
    let _ = writeln!(out, "euler characteristic: {}", hc.euler_characteristic);
    out
}

pub fn configuration_table(cfg: &SncConfiguration) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "configuration: dimension {}, center {}", cfg.ambient_dim, cfg.sigma);
    let mut rows = vec![["id", "label", "m", "nu", "exc", "over", "genus", "self"].map(String::from).to_vec()];
    let mut divs: Vec<_> = cfg.divisors.iter().collect();
    divs.sort_by_key(|d| d.id);
    let opt = |v: Option<i64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
    for d in divs {
        rows.push(vec![
            d.id.to_string(),
            d.label.clone(),
            d.mult.to_string(),
            d.disc.to_string(),
            yes_no(d.exceptional).into(),
            yes_no(d.over_sigma).into(),
            opt(d.genus.map(|g| g as i64)),
            opt(d.self_int),
        ]);
    }
    out.push_str(&grid(&rows));
    for c in &cfg.cells {
        let labels: Vec<String> = c
            .ids
            .iter()
            .map(|&id| cfg.divisor(id).map(|d| d.label.clone()).unwrap_or_else(|_| id.to_string()))
            .collect();
        let flag = match c.over_sigma {
            Some(true) => "over center",
            Some(false) => "away from center",
            None => "unflagged",
        };
        let _ = writeln!(out, "cell {}: {} point(s), {flag}", labels.join("-"), c.count);
    }
    out
}
