//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::time::{Duration, Instant};

use jetloci::curve::resolve_plane_curve;
use jetloci::lefschetz::{lefschetz_number, zeta_factorization};
use jetloci::model::fixtures::{cusp, node};
use jetloci::oracle::{
    closed_form_power, contact_count, interpolate_chi, primes_congruent_one, verify_chart_fibration, CountOptions,
};
use jetloci::pipeline::{Pipeline, Stage};
use jetloci::separation::{is_m_separating, separate};
use jetloci::spectral::{classify_initial_form, multiplicity_case_prediction, stratum_dimension, DegreeStatus, Level};
use jetloci::weights::{solve_weights, validate_weights};
use jetloci::{Polynomial, SncConfiguration, WeightVector};

struct Check {
    notes: Vec<String>,
    ok: bool,
}

impl Check {
    fn new() -> Self {
        Self { notes: Vec::new(), ok: true }
    }

    fn expect(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn run(n: u32, title: &str, limit: Duration, body: impl FnOnce(&mut Check)) -> bool {
    let mut c = Check::new();
    let start = Instant::now();
    body(&mut c);
    let elapsed = start.elapsed();
    if elapsed > limit {
        c.expect(false, format!("runtime {elapsed:?} exceeds {limit:?}"));
    }
    let verdict = if c.ok { "PASS" } else { "FAIL" };
    println!("criterion {n:>2} {verdict} ({:.3} s) {title}", elapsed.as_secs_f64());
    for note in &c.notes {
        println!("    {note}");
    }
    c.ok
}

fn poly(s: &str) -> Polynomial {
    Polynomial::parse(s).unwrap()
}

fn stage(f: &str, m: u64) -> Stage {
    Pipeline::from_polynomial(&poly(f)).unwrap().stage(m, None).unwrap()
}

fn count(f: &str, m: u64, l: u64, q: u64) -> u128 {
    contact_count(&poly(f), m, l, q, &CountOptions::default()).unwrap().total
}

fn exact(rank: u64) -> DegreeStatus {
    DegreeStatus::Exact { rank, free: true }
}

/// Degrees with nonzero integral status.
fn support(s: &Stage) -> Vec<(i64, DegreeStatus)> {
    s.hc.degrees.iter().filter(|d| d.integral != DegreeStatus::Zero).map(|d| (d.degree, d.integral.clone())).collect()
}

fn powers(c: &mut Check) {
    for (r, m) in [(2u64, 2u64), (2, 4), (3, 6), (5, 5), (3, 5)] {
        let s = stage(&format!("x^{r}"), m);
        let want = if m % r == 0 { vec![(2 * (m - m / r) as i64, exact(r))] } else { vec![] };
        c.expect(support(&s) == want, format!("x^{r}, m = {m}: H_c support {:?}, expected {want:?}", support(&s)));
        for q in [3, 5, 7, 11, 13] {
            let n = count(&format!("x^{r}"), m, m, q);
            let want = closed_form_power(r, m, q);
            c.expect(n == want, format!("x^{r}, m = {m}, q = {q}: count {n}, expected {want}"));
        }
    }
}

fn cusp_m2(c: &mut Check) {
    let s = stage("x^2+y^3", 2);
    let columns: std::collections::BTreeSet<i64> = s.page.entries.iter().map(|e| e.p).collect();
    c.expect(columns.len() == 1, format!("page has columns {columns:?}"));
    c.expect(support(&s) == vec![(6, exact(2))], format!("H_c support {:?}", support(&s)));
    let form = classify_initial_form(&poly("x^2+y^3")).unwrap();
    let prediction = multiplicity_case_prediction(2, 2, &form.milnor_betti(2));
    c.expect(prediction.into_iter().collect::<Vec<_>>() == vec![(6, 2)], "multiplicity-case prediction differs");
    for q in [3u64, 5, 7, 11] {
        let n = count("x^2+y^3", 2, 2, q);
        c.expect(n == 2 * (q as u128).pow(3), format!("q = {q}: count {n}"));
    }
}

fn cusp_m3(c: &mut Check) {
    let s = stage("x^2+y^3", 3);
    c.expect(support(&s) == vec![(8, exact(3))], format!("H_c support {:?}", support(&s)));
    for q in [7u64, 13] {
        let n = count("x^2+y^3", 3, 3, q);
        c.expect(n == 3 * (q as u128).pow(4), format!("q = {q}: count {n}"));
    }
}

fn cusp_m6(c: &mut Check) {
    let s = stage("x^2+y^3", 6);
    let page_chi = s.page.euler_characteristic();
    let lambda = lefschetz_number(&cusp(), 6).unwrap();
    c.expect(page_chi == -1 && lambda == -1, format!("χ(page) = {page_chi}, Λ(φ⁶) = {lambda}"));
    c.expect(s.hc.integral(16) == exact(1), format!("H_c^16 status {:?}", s.hc.integral(16)));
    for n in [14, 15] {
        let st = s.hc.rational(n);
        c.expect(matches!(st, DegreeStatus::Bounds { .. }), format!("degree {n} status {st:?}"));
    }
    c.expect(s.hc.bounds_admit_euler_characteristic(), "bounds exclude the Euler characteristic");
    let (lo14, hi14) = s.hc.rational(14).range();
    let (lo15, hi15) = s.hc.rational(15).range();
    c.note(format!("H_c^14 ∈ [{lo14}, {hi14}], H_c^15 ∈ [{lo15}, {hi15}], H_c^16 = Z"));
}

fn node_suite(c: &mut Check) {
    for m in [1u64, 3, 5, 7] {
        let s = stage("x*y", m);
        c.expect(s.page.is_empty(), format!("m = {m}: page has {} nonzero entries", s.page.entries.len()));
        for q in [3u64, 5, 7] {
            if m > 3 && q > 3 {
                continue;
            }
            let n = count("x*y", m, m, q);
            c.expect(n == 0, format!("m = {m}, q = {q}: oracle counts {n} contact jets, expected 0"));
        }
    }
    if !c.ok {
        c.note("x = t, y = t^(m-1) is an m-contact jet for every m ≥ 2, so X_m(xy) is never empty for m ≥ 2;");
        c.note("after m-separation a divisor of multiplicity m appears between E1 and a branch");
    }
    let s = stage("x*y", 2);
    c.expect(support(&s) == vec![(5, exact(1)), (6, exact(1))], format!("m = 2: H_c support {:?}", support(&s)));
    let lambda = lefschetz_number(&node(), 2).unwrap();
    c.expect(lambda == 0, format!("Λ(φ²) = {lambda}"));
    for q in [3u64, 5, 7] {
        let n = count("x*y", 2, 2, q);
        c.expect(n == ((q - 1) * q * q) as u128, format!("m = 2, q = {q}: count {n}"));
    }
}

fn suite_configs() -> Vec<(&'static str, SncConfiguration)> {
    vec![
        ("cusp", cusp()),
        ("node", node()),
        ("x^3+y^4", resolve_plane_curve(&poly("x^3+y^4")).unwrap().0),
        ("x^2+y^5", resolve_plane_curve(&poly("x^2+y^5")).unwrap().0),
    ]
}

fn separation(c: &mut Check) {
    for (name, cfg) in suite_configs() {
        let zeta = zeta_factorization(&cfg).unwrap().reduced();
        let lambdas: Vec<i64> = (1..=12).map(|n| lefschetz_number(&cfg, n).unwrap()).collect();
        for m in 1..=12 {
            let sep = separate(&cfg, m).unwrap();
            let out = &sep.config;
            c.expect(is_m_separating(out, m).unwrap(), format!("{name}, m = {m}: output not separating"));
            for r in &sep.records {
                let (a, b) = (out.divisor(r.a).unwrap(), out.divisor(r.b).unwrap());
                c.expect(
                    r.mult == a.mult + b.mult && r.disc == a.disc + b.disc,
                    format!("{name}, m = {m}: {} is not additive", r.label),
                );
            }
            let after: Vec<i64> = (1..=12).map(|n| lefschetz_number(out, n).unwrap()).collect();
            c.expect(after == lambdas, format!("{name}, m = {m}: Lefschetz numbers changed"));
            c.expect(zeta_factorization(out).unwrap().reduced() == zeta, format!("{name}, m = {m}: zeta changed"));
            let again = separate(out, m).unwrap();
            c.expect(again.records.is_empty() && &again.config == out, format!("{name}, m = {m}: not idempotent"));
        }
    }
}

/// A valid weight vector not proportional to `w`, found by raising single
/// weights.
fn perturbed(cfg: &SncConfiguration, w: &WeightVector) -> Option<WeightVector> {
    for id in cfg.exceptional_ids() {
        for bump in 1..=20 {
            let mut v = w.clone();
            v.set(id, w.get(id) + bump);
            if validate_weights(cfg, &v).unwrap() {
                return Some(v);
            }
        }
    }
    None
}

fn weights(c: &mut Check) {
    for (name, base) in suite_configs() {
        for m in 1..=12 {
            let cfg = separate(&base, m).unwrap().config;
            let w = solve_weights(&cfg).unwrap();
            let mut variants = vec![w.clone(), w.scaled(2), w.scaled(5)];
            if let Some(v) = perturbed(&cfg, &w) {
                variants.push(v);
            }
            let pipeline = Pipeline::from_config(cfg.clone()).unwrap();
            let mut contents = Vec::new();
            for v in &variants {
                c.expect(validate_weights(&cfg, v).unwrap(), format!("{name}, m = {m}: {v:?} rejected"));
                contents.push(pipeline.stage(m, Some(v)).unwrap().page.content());
            }
            let distinct = {
                let mut vs = variants.clone();
                vs.dedup();
                vs.len()
            };
            c.expect(
                distinct >= 3 || cfg.exceptional_ids().is_empty(),
                format!("{name}, m = {m}: only {distinct} weights"),
            );
            c.expect(contents.windows(2).all(|p| p[0] == p[1]), format!("{name}, m = {m}: content depends on weights"));
        }
    }
}

fn euler(c: &mut Check) {
    for p in 2..=5u32 {
        for q in p..=5u32 {
            let f = format!("x^{p}+y^{q}");
            let pipeline = Pipeline::from_polynomial(&poly(&f)).unwrap();
            for m in 1..=12 {
                let s = pipeline.stage(m, None).unwrap();
                c.expect(
                    s.euler.pass,
                    format!("{f}, m = {m}: χ(page) = {}, Λ = {}", s.euler.page_euler, s.euler.lefschetz),
                );
            }
        }
    }
}

fn fibration(c: &mut Check) {
    for m in [1u64, 2] {
        for l in [m, m + 1] {
            for q in [3u64, 5] {
                let r = verify_chart_fibration(m, l, q, 2, 2).unwrap();
                c.expect(r.pass, format!("m = {m}, l = {l}, q = {q}: fiber histogram {:?}", r.histogram));
            }
        }
    }
}

fn dimensions(c: &mut Check) {
    let cases: [(&str, SncConfiguration, u64, u32, Vec<u64>); 3] = [
        ("x^2+y^3", cusp(), 2, 1, vec![3, 5, 7, 11, 13]),
        ("x^2+y^3", cusp(), 3, 2, primes_congruent_one(3, 6)),
        ("x*y", node(), 2, 1, vec![3, 5, 7, 11, 13]),
    ];
    for (f, cfg, m, id, primes) in cases {
        let dim = stratum_dimension(&cfg, id, m, Level::Contact).unwrap();
        let counts: Vec<(u64, u128)> = primes.iter().map(|&q| (q, count(f, m, m, q))).collect();
        let fit = interpolate_chi(&counts, dim as usize).unwrap();
        c.expect(
            fit.conclusive && fit.degree == Some(dim as usize),
            format!(
                "{f}, m = {m}: fit {} ({}) has degree {:?}, stratum dimension {dim}",
                fit.polynomial, fit.verdict, fit.degree
            ),
        );
        c.note(format!("{f}, m = {m}: N(q) = {}, χ = {}, dimension {dim}", fit.polynomial, fit.chi));
        let full = CountOptions { shortcut: false, ..Default::default() };
        for &q in primes.iter().take(3) {
            let base = counts.iter().find(|p| p.0 == q).unwrap().1;
            let next = contact_count(&poly(f), m, m + 1, q, &full).unwrap().total;
            let want = base * (q as u128).pow(cfg.ambient_dim);
            c.expect(next == want, format!("{f}, m = {m}, q = {q}: level m+1 count {next}, expected {want}"));
        }
    }
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        run(1, "powers x^r: H_c and closed-form counts", s(1), powers),
        run(2, "cusp m = 2: multiplicity case", s(1), cusp_m2),
        run(3, "cusp m = 3", s(5), cusp_m3),
        run(4, "cusp m = 6: Euler characteristic and bounds", s(1), cusp_m6),
        run(5, "node suite", s(1), node_suite),
        run(6, "separation properties", s(5), separation),
        run(7, "weight solver and weight independence", s(30), weights),
        run(8, "Euler characteristic cross-check for x^p + y^q", s(30), euler),
        run(9, "chart fibration", s(10), fibration),
        run(10, "count degrees and stabilization", s(60), dimensions),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
