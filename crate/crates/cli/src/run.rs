//! Command dispatch.

use std::path::Path;

use anyhow::{bail, Context, Result};
use jetloci::lefschetz::{lefschetz_number, zeta_factorization};
use jetloci::oracle::{
    contact_count, interpolate_chi, predicted_contact_count, predicted_count_polynomial, verify_chart_fibration, ChiFit,
};
use jetloci::pipeline::WeightSource;
use jetloci::separation::separate;
use jetloci::spectral::{
    classify_initial_form, divisors_dividing, gap_analysis, mclean_relabel, multiplicity_case_prediction,
    stratum_dimension, DegreeStatus, Level,
};
use jetloci::weights::{check_weights, solve_weights};
use jetloci::{Polynomial, SncConfiguration, Stage, WeightVector};
use num::{BigInt, BigRational};
use serde::Serialize;

use crate::args::{Cli, Command, Format, PrimeArgs};
use crate::input::{self, count_options, load, primes, raw_configuration, run_stage, weight_override};
use crate::reports::*;

/// What a command printed and whether its checks held.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn emit<R: Render + Serialize>(report: &R, format: Format) -> Result<Outcome> {
    let text = match format {
        Format::Table => report.table(),
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
    };
    Ok(Outcome { text, passed: report.passed() })
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Validate { source, output } => {
            let (configuration, source) = raw_configuration(&source)?;
            let validation = configuration.validate();
            emit(&ValidateOutput { source, configuration, validation }, output.format)
        }
        Command::Resolve { poly, output } => {
            let f = input::parse_polynomial(&poly)?;
            let p = jetloci::Pipeline::from_polynomial(&f)?;
            emit(&ResolveOutput { f: f.to_string(), configuration: p.base, log: p.log }, output.format)
        }
        Command::Separate { source, contact, output } => {
            let l = load(&source)?;
            let separation = separate(&l.pipeline.base, contact.m)?;
            emit(&SeparateOutput { source: l.description, m: contact.m, separation }, output.format)
        }
        Command::Weights { source, m, weights, output } => {
            let l = load(&source)?;
            let configuration = match m {
                Some(m) => separate(&l.pipeline.base, m)?.config,
                None => l.pipeline.base,
            };
            let (w, weight_source) = match (weight_override(&weights)?, &configuration.weights) {
                (Some(w), _) => (w, WeightSource::Override),
                (None, Some(w)) if !w.is_empty() => (WeightVector(w.clone()), WeightSource::Configuration),
                _ => (solve_weights(&configuration)?, WeightSource::Solved),
            };
            let w = w.scaled(weights.scale);
            let check = check_weights(&configuration, &w)?;
            let report = WeightsOutput {
                source: l.description,
                m,
                configuration,
                weights: w,
                weight_source,
                scale: weights.scale,
                check,
                note: AMPLE_NOTE.into(),
            };
            emit(&report, output.format)
        }
        Command::E1 { source, contact, weights, gap_analysis: gap, output } => {
            let l = load(&source)?;
            let stage = run_stage(&l.pipeline, contact.m, &weights)?;
            let gap = if gap {
                Some(gap_analysis(&stage.separation.config, &stage.weights, stage.m, &stage.covers)?)
            } else {
                None
            };
            let page = stage.page.clone();
            emit(&PageOutput { source: l.description, stage, page, gap, note: AMPLE_NOTE.into() }, output.format)
        }
        Command::Mclean { source, contact, weights, output } => {
            let l = load(&source)?;
            let stage = run_stage(&l.pipeline, contact.m, &weights)?;
            let page = mclean_relabel(&stage.page);
            emit(&PageOutput { source: l.description, stage, page, gap: None, note: AMPLE_NOTE.into() }, output.format)
        }
        Command::Hc { source, contact, weights, output } => {
            let l = load(&source)?;
            let stage = run_stage(&l.pipeline, contact.m, &weights)?;
            emit(&HcOutput { source: l.description, stage, note: AMPLE_NOTE.into() }, output.format)
        }
        Command::CheckEuler { source, contact, weights, output } => {
            let l = load(&source)?;
            let stage = run_stage(&l.pipeline, contact.m, &weights)?;
            let check = stage.euler.clone();
            emit(&EulerOutput { source: l.description, stage, check, note: AMPLE_NOTE.into() }, output.format)
        }
        Command::Zeta { source, output } => {
            let l = load(&source)?;
            let z = zeta_factorization(&l.pipeline.base)?;
            let report =
                ZetaOutput { source: l.description, reduced: z.reduced(), display: z.to_string(), factors: z.factors };
            emit(&report, output.format)
        }
        Command::Lefschetz { source, m, max_m, output } => {
            let l = load(&source)?;
            let range: Vec<u64> = match m {
                Some(m) => vec![m],
                None => (1..=max_m).collect(),
            };
            let values =
                range.into_iter().map(|m| Ok((m, lefschetz_number(&l.pipeline.base, m)?))).collect::<Result<_>>()?;
            emit(&LefschetzOutput { source: l.description, values }, output.format)
        }
        Command::OracleCount { poly, contact, level, primes: p, csv, output } => {
            let f = input::parse_polynomial(&poly)?;
            let report = count_output(&f, contact.m, level.unwrap_or(contact.m), &primes(&p)?)?;
            if let Some(path) = csv {
                let rows: Vec<(u64, u128)> = report.counts.iter().map(|c| (c.report.q, c.report.total)).collect();
                write_csv(&path, &rows)?;
            }
            emit(&report, output.format)
        }
        Command::OracleChi { poly, contact, dim, primes: p, csv, output } => {
            let f = input::parse_polynomial(&poly)?;
            let dim = match dim {
                Some(d) => d,
                None => default_dim(&f, contact.m)?,
            };
            let qs = chi_primes(&p, dim)?;
            let opts = count_options()?;
            let counts = qs
                .iter()
                .map(|&q| Ok((q, contact_count(&f, contact.m, contact.m, q, &opts)?.total)))
                .collect::<Result<Vec<_>>>()?;
            if let Some(path) = csv {
                write_csv(&path, &counts)?;
            }
            let fit = interpolate_chi(&counts, dim)?;
            emit(&ChiOutput { f: f.to_string(), m: contact.m, dim, counts, fit }, output.format)
        }
        Command::VerifyFibration { m, level, d, nu, primes: p, output } => {
            let qs = primes(&p)?;
            let reports = qs
                .iter()
                .map(|&q| Ok(verify_chart_fibration(m, level.unwrap_or(m), q, d, nu)?))
                .collect::<Result<_>>()?;
            emit(&FibrationOutput { reports }, output.format)
        }
        Command::Report { source, contact, weights, primes: p, output } => {
            let report = full_report(&source, contact.m, &weights, &p)?;
            emit(&report, output.format)
        }
    }
}

fn write_csv(path: &Path, rows: &[(u64, u128)]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record(["q", "count"])?;
    for (q, n) in rows {
        w.write_record([q.to_string(), n.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// With no explicit primes, take enough of them for one validation point.
fn chi_primes(p: &PrimeArgs, dim: usize) -> Result<Vec<u64>> {
    if p.primes.is_some() {
        return primes(p);
    }
    let modulus = p.congruence.unwrap_or(1);
    Ok(jetloci::oracle::primes_congruent_one(modulus, (dim + 2).max(jetloci::oracle::DEFAULT_PRIMES.len())))
}

fn separated(f: &Polynomial, m: u64) -> Result<SncConfiguration> {
    let p = jetloci::Pipeline::from_polynomial(f)?;
    Ok(separate(&p.base, m)?.config)
}

fn default_dim(f: &Polynomial, m: u64) -> Result<usize> {
    let cfg = separated(f, m).context("cannot derive the expected degree, pass --dim")?;
    max_stratum_dimension(&cfg, m)
}

fn max_stratum_dimension(cfg: &SncConfiguration, m: u64) -> Result<usize> {
    let dims = divisors_dividing(cfg, m)
        .into_iter()
        .map(|(id, _, _)| stratum_dimension(cfg, id, m, Level::Contact))
        .collect::<jetloci::Result<Vec<_>>>()?;
    match dims.into_iter().max() {
        Some(d) if d >= 0 => Ok(d as usize),
        _ => bail!("no divisor over the singular point has multiplicity dividing {m}; the count vanishes"),
    }
}

fn count_output(f: &Polynomial, m: u64, level: u64, qs: &[u64]) -> Result<CountOutput> {
    let opts = count_options()?;
    let cfg = separated(f, m).ok();
    let poly = match &cfg {
        Some(cfg) => predicted_count_polynomial(cfg, m, level)?,
        None => None,
    };
    let mut counts = Vec::new();
    for &q in qs {
        let report = contact_count(f, m, level, q, &opts)?;
        let predicted = match &cfg {
            Some(cfg) => predicted_contact_count(cfg, m, level, q)?,
            None => None,
        };
        let residue = poly.as_ref().map(|(_, md)| (q % md, *md));
        counts.push(PrimeCount { report, residue, predicted });
    }
    Ok(CountOutput {
        f: f.to_string(),
        m,
        level,
        predicted_polynomial: poly.as_ref().map(|(p, _)| p.display_in("q")),
        modulus: poly.map(|(_, md)| md),
        counts,
    })
}

fn check(name: &str, status: CheckStatus, detail: impl Into<String>) -> CheckLine {
    CheckLine { name: name.into(), status, detail: detail.into() }
}

fn status(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn multiplicity_check(f: &Polynomial, stage: &Stage, d: u32) -> CheckLine {
    const NAME: &str = "multiplicity case";
    let Some(mult) = f.multiplicity() else { return check(NAME, CheckStatus::Skipped, "zero polynomial") };
    if stage.m != mult as u64 {
        return check(NAME, CheckStatus::Skipped, format!("m differs from the multiplicity {mult}"));
    }
    let Some(form) = classify_initial_form(f) else {
        return check(NAME, CheckStatus::Skipped, "Milnor fiber of the initial form not recognized");
    };
    let predicted = multiplicity_case_prediction(d, stage.m, &form.milnor_betti(d));
    let mut ok = true;
    let mut parts = Vec::new();
    for (&n, &rank) in &predicted {
        ok &= stage.hc.integral(n) == DegreeStatus::Exact { rank, free: true };
        parts.push(format!("H_c^{n} = {}", crate::tables::free_group("Z", rank)));
    }
    for r in &stage.hc.degrees {
        if !predicted.contains_key(&r.degree) {
            ok &= r.integral == DegreeStatus::Zero;
        }
    }
    check(NAME, status(ok), format!("predicted {}", parts.join(", ")))
}

fn full_report(
    source: &crate::args::Source,
    m: u64,
    weights: &crate::args::WeightArgs,
    p: &PrimeArgs,
) -> Result<FullReport> {
    let loaded = load(source)?;
    let stage = run_stage(&loaded.pipeline, m, weights)?;
    let cfg = &stage.separation.config;
    let lefschetz = lefschetz_number(cfg, m)?;
    let mut checks = vec![check(
        "euler characteristic",
        status(stage.euler.pass),
        format!("page {} vs lefschetz {}", stage.euler.page_euler, stage.euler.lefschetz),
    )];
    let mut counts = None;
    let mut fit = None;
    if let Some(f) = &loaded.pipeline.f {
        checks.push(multiplicity_check(f, &stage, cfg.ambient_dim));
        let qs = primes(p)?;
        match count_output(f, m, m, &qs) {
            Ok(c) => {
                let compared: Vec<&PrimeCount> = c.counts.iter().filter(|pc| pc.predicted.is_some()).collect();
                if compared.is_empty() {
                    checks.push(check("point counts", CheckStatus::Skipped, "no prime with a closed-form prediction"));
                } else {
                    let bad = c.mismatches();
                    let detail = match &c.predicted_polynomial {
                        Some(poly) => format!("{} of {} prime(s) match {poly}", compared.len() - bad, compared.len()),
                        None => format!("{} of {} prime(s) match", compared.len() - bad, compared.len()),
                    };
                    checks.push(check("point counts", status(bad == 0), detail));
                }
                let usable: Vec<(u64, u128)> = c
                    .counts
                    .iter()
                    .filter(|pc| pc.residue.is_none_or(|(r, md)| r == 1 % md))
                    .map(|pc| (pc.report.q, pc.report.total))
                    .collect();
                let line = fit_check(cfg, m, &usable, stage.page.euler_characteristic(), &mut fit);
                checks.push(line);
                counts = Some(c);
            }
            Err(e) => checks.push(check("point counts", CheckStatus::Skipped, e.to_string())),
        }
    }
    let pass = checks.iter().all(|c| c.status != CheckStatus::Fail);
    Ok(FullReport {
        source: loaded.description,
        base: loaded.pipeline.base.clone(),
        stage,
        lefschetz,
        counts,
        fit,
        checks,
        pass,
        note: AMPLE_NOTE.into(),
    })
}

fn fit_check(
    cfg: &SncConfiguration,
    m: u64,
    usable: &[(u64, u128)],
    page_chi: i64,
    slot: &mut Option<ChiFit>,
) -> CheckLine {
    const NAME: &str = "interpolated euler characteristic";
    let dim = match max_stratum_dimension(cfg, m) {
        Ok(d) => d,
        Err(_) => {
            let ok = usable.iter().all(|&(_, n)| n == 0);
            return check(NAME, status(ok && page_chi == 0), "empty contact locus");
        }
    };
    if usable.len() < dim + 2 {
        return check(
            NAME,
            CheckStatus::Skipped,
            format!("{} usable prime(s), a degree-{dim} fit needs {} to be validated", usable.len(), dim + 2),
        );
    }
    let result = match interpolate_chi(usable, dim) {
        Ok(r) => r,
        Err(e) => return check(NAME, CheckStatus::Skipped, e.to_string()),
    };
    let line = if !result.conclusive {
        check(NAME, CheckStatus::Skipped, result.verdict.clone())
    } else {
        let expected = BigRational::from_integer(BigInt::from(page_chi)).to_string();
        check(
            NAME,
            status(result.chi == expected),
            format!("fit {} gives {} vs page {page_chi}", result.polynomial, result.chi),
        )
    };
    *slot = Some(result);
    line
}
