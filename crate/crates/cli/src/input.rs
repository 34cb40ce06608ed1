//! Turning command-line arguments into pipeline inputs.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use jetloci::oracle::{
    congruence_filter, primes_congruent_one, require_prime, CountOptions, DEFAULT_NODE_CAP, DEFAULT_PRIMES,
};
use jetloci::pipeline::Pipeline;
use jetloci::{DivisorId, Polynomial, SncConfiguration, Stage, WeightVector};

use crate::args::{PrimeArgs, Source, WeightArgs};

pub const NODE_CAP_VAR: &str = "JETLOCI_NODE_CAP";

pub struct Loaded {
    pub pipeline: Pipeline,
    pub description: String,
}

pub fn parse_polynomial(src: &str) -> Result<Polynomial> {
    Polynomial::parse(src).with_context(|| format!("cannot parse polynomial '{src}'"))
}

pub fn read_config(path: &Path) -> Result<SncConfiguration> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    SncConfiguration::from_json(&text).with_context(|| format!("cannot parse configuration {}", path.display()))
}

/// The configuration as given, without the validity gate applied by [`load`].
pub fn raw_configuration(source: &Source) -> Result<(SncConfiguration, String)> {
    match (&source.poly, &source.config) {
        (Some(p), _) => {
            let loaded = load(source)?;
            Ok((loaded.pipeline.base, format!("f = {}", parse_polynomial(p)?)))
        }
        (None, Some(path)) => Ok((read_config(path)?, format!("configuration {}", path.display()))),
        (None, None) => bail!("one of --poly or --config is required"),
    }
}

pub fn load(source: &Source) -> Result<Loaded> {
    match (&source.poly, &source.config) {
        (Some(p), _) => {
            let f = parse_polynomial(p)?;
            let pipeline = Pipeline::from_polynomial(&f).with_context(|| format!("cannot resolve {f}"))?;
            Ok(Loaded { pipeline, description: format!("f = {f}") })
        }
        (None, Some(path)) => {
            let pipeline = Pipeline::from_config(read_config(path)?)?;
            Ok(Loaded { pipeline, description: format!("configuration {}", path.display()) })
        }
        (None, None) => bail!("one of --poly or --config is required"),
    }
}

/// Inline `id=w,...` or the path of a JSON object mapping ids to weights.
pub fn weight_override(args: &WeightArgs) -> Result<Option<WeightVector>> {
    let Some(given) = &args.weights else { return Ok(None) };
    let path = Path::new(given);
    let w = if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let map: BTreeMap<DivisorId, u64> =
            serde_json::from_str(&text).with_context(|| format!("{} is not a map of weights", path.display()))?;
        WeightVector(map)
    } else {
        WeightVector::parse_inline(given)?
    };
    Ok(Some(w))
}

/// Runs one stage, applying the override and then the scale factor.
pub fn run_stage(pipeline: &Pipeline, m: u64, args: &WeightArgs) -> Result<Stage> {
    let stage = match weight_override(args)? {
        Some(w) => pipeline.stage(m, Some(&w.scaled(args.scale)))?,
        None if args.scale > 1 => {
            let base = pipeline.stage(m, None)?;
            let mut scaled = pipeline.stage(m, Some(&base.weights.scaled(args.scale)))?;
            scaled.weight_source = base.weight_source;
            scaled
        }
        None => pipeline.stage(m, None)?,
    };
    Ok(stage)
}

pub fn primes(args: &PrimeArgs) -> Result<Vec<u64>> {
    let chosen = match (&args.primes, args.congruence) {
        (Some(list), Some(c)) => congruence_filter(list, c),
        (Some(list), None) => list.clone(),
        (None, Some(c)) => primes_congruent_one(c, DEFAULT_PRIMES.len()),
        (None, None) => DEFAULT_PRIMES.to_vec(),
    };
    for &q in &chosen {
        require_prime(q)?;
    }
    if chosen.is_empty() {
        bail!("no prime survives the congruence filter");
    }
    Ok(chosen)
}

pub fn count_options() -> Result<CountOptions> {
    let node_cap = match std::env::var(NODE_CAP_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{NODE_CAP_VAR} must be a positive integer, got '{v}'"))?,
        Err(_) => DEFAULT_NODE_CAP,
    };
    Ok(CountOptions { node_cap, ..Default::default() })
}
