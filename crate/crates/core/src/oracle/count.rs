//! Pruned depth-first enumeration of contact jets over a prime field.
//!
//! A jet of level `l` centred at the origin is a tuple of series
//! `x_i = Σ_{j=1..l} a_{i,j} t^j`. Coefficients are assigned one level at a
//! time across all coordinates. Once levels `1..j` are fixed, every
//! coefficient of `f(γ)` up to `t^{j+μ-1}` is determined, where `μ` is the
//! multiplicity of `f` mod `q`, so branches that break the contact condition
//! are cut as early as possible.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::series::{reduce, require_prime};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

pub const DEFAULT_NODE_CAP: u64 = 1_000_000_000;
const PROGRESS_EVERY: u64 = 10_000_000;
const FLUSH_EVERY: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOptions {
    /// Stop the search once every constrained coefficient is fixed and count
    /// the remaining free coefficients in closed form.
    pub shortcut: bool,
    pub node_cap: u64,
    pub parallel: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self { shortcut: true, node_cap: DEFAULT_NODE_CAP, parallel: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    /// Order of each coordinate series, `l + 1` standing for the zero series.
    pub orders: Vec<u32>,
    pub count: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub f: String,
    pub m: u64,
    pub l: u64,
    pub q: u64,
    pub total: u128,
    pub strata: Vec<Stratum>,
    pub nodes: u64,
    pub shortcut: bool,
    pub elapsed_ms: u64,
}

impl CountReport {
    pub fn stratum(&self, orders: &[u32]) -> u128 {
        self.strata.iter().find(|s| s.orders == orders).map_or(0, |s| s.count)
    }
}

struct Problem {
    d: usize,
    m: usize,
    l: usize,
    q: u64,
    mu: usize,
    /// Last level that is enumerated explicitly.
    stop: usize,
    max_exp: usize,
    terms: Vec<(Vec<u32>, u64)>,
}

impl Problem {
    /// Highest coefficient of `f(γ)` determined by levels `1..=j`.
    fn decided(&self, j: usize) -> usize {
        (j + self.mu - 1).min(self.m)
    }

    fn key_space(&self) -> usize {
        (self.stop + 1).pow(self.d as u32)
    }
}

struct Shared {
    cap: u64,
    nodes: AtomicU64,
    abort: AtomicBool,
}

impl Shared {
    fn flush(&self, local: &mut u64) -> bool {
        if *local == 0 {
            return !self.abort.load(Ordering::Relaxed);
        }
        let before = self.nodes.fetch_add(*local, Ordering::Relaxed);
        let after = before + *local;
        *local = 0;
        if after / PROGRESS_EVERY > before / PROGRESS_EVERY {
            log::info!("jet enumeration: {after} nodes visited");
        }
        if after > self.cap {
            self.abort.store(true, Ordering::Relaxed);
        }
        !self.abort.load(Ordering::Relaxed)
    }
}

struct Walker<'a> {
    p: &'a Problem,
    shared: &'a Shared,
    /// `a[i * (stop + 1) + j]`
    a: Vec<u64>,
    /// `pow[(i * (max_exp + 1) + e) * (m + 1) + s]`: coefficient of `t^s` in `x_i^e`.
    pow: Vec<u64>,
    hist: Vec<u128>,
    local: u64,
    alive: bool,
}

impl<'a> Walker<'a> {
    fn new(p: &'a Problem, shared: &'a Shared) -> Self {
        let mut pow = vec![0; p.d * (p.max_exp + 1) * (p.m + 1)];
        for i in 0..p.d {
            pow[(i * (p.max_exp + 1)) * (p.m + 1)] = 1 % p.q;
        }
        Self { p, shared, a: vec![0; p.d * (p.stop + 1)], pow, hist: vec![0; p.key_space()], local: 0, alive: true }
    }

    fn pow_at(&self, i: usize, e: usize, s: usize) -> u64 {
        self.pow[(i * (self.p.max_exp + 1) + e) * (self.p.m + 1) + s]
    }

    fn assign(&mut self, i: usize, j: usize, v: u64) {
        let p = self.p;
        self.a[i * (p.stop + 1) + j] = v;
        for e in 1..=p.max_exp {
            let s = j + e - 1;
            if s > p.m {
                break;
            }
            let mut acc = 0u64;
            for t in 1..=j.min(s + 1 - e) {
                let at = self.a[i * (p.stop + 1) + t];
                if at != 0 {
                    acc = (acc + at * self.pow_at(i, e - 1, s - t)) % p.q;
                }
            }
            self.pow[(i * (p.max_exp + 1) + e) * (p.m + 1) + s] = acc;
        }
    }

    fn monomial_coeff(&self, exps: &[u32], i: usize, s: usize, min_rest: usize) -> u64 {
        let e = exps[i] as usize;
        if i + 1 == exps.len() {
            return self.pow_at(i, e, s);
        }
        let rest = min_rest - exps[i + 1] as usize;
        let mut acc = 0u64;
        let lo = e;
        let hi = s.saturating_sub(min_rest);
        if e == 0 {
            return self.monomial_coeff(exps, i + 1, s, rest);
        }
        for si in lo..=hi {
            let a = self.pow_at(i, e, si);
            if a != 0 {
                acc = (acc + a * self.monomial_coeff(exps, i + 1, s - si, rest)) % self.p.q;
            }
        }
        acc
    }

    fn coefficient(&self, s: usize) -> u64 {
        let mut acc = 0;
        for (exps, c) in &self.p.terms {
            let tail: usize = exps[1..].iter().map(|&e| e as usize).sum();
            acc = (acc + c * self.monomial_coeff(exps, 0, s, tail)) % self.p.q;
        }
        acc
    }

    fn passes(&self, j: usize) -> bool {
        let p = self.p;
        for s in p.decided(j - 1) + 1..=p.decided(j) {
            let want = if s == p.m { 1 } else { 0 };
            if self.coefficient(s) != want {
                return false;
            }
        }
        true
    }

    fn record_leaf(&mut self) {
        let p = self.p;
        let mut key = 0;
        for i in 0..p.d {
            let o = (1..=p.stop).find(|&j| self.a[i * (p.stop + 1) + j] != 0).unwrap_or(p.stop + 1);
            key = key * (p.stop + 1) + (o - 1);
        }
        self.hist[key] += 1;
    }

    fn level_done(&mut self, j: usize) {
        self.local += 1;
        if self.local >= FLUSH_EVERY {
            self.alive = self.shared.flush(&mut self.local);
        }
        if !self.alive || !self.passes(j) {
            return;
        }
        if j == self.p.stop {
            self.record_leaf();
        } else {
            self.walk(j + 1, 0);
        }
    }

    fn walk(&mut self, j: usize, i: usize) {
        if !self.alive {
            return;
        }
        if i == self.p.d {
            self.level_done(j);
            return;
        }
        for v in 0..self.p.q {
            self.assign(i, j, v);
            self.walk(j, i + 1);
            if !self.alive {
                return;
            }
        }
    }

    fn run_from_first_level(mut self, tuple: &[u64]) -> (Vec<u128>, bool) {
        for (i, &v) in tuple.iter().enumerate() {
            self.assign(i, 1, v);
        }
        self.level_done(1);
        let ok = self.shared.flush(&mut self.local) && self.alive;
        (self.hist, ok)
    }
}

fn checked_pow(q: u64, e: usize) -> u128 {
    (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

fn expand(p: &Problem, hist: &[u128]) -> Vec<Stratum> {
    let mut out: std::collections::BTreeMap<Vec<u32>, u128> = Default::default();
    let q = p.q as u128;
    let tail = checked_pow(p.q, p.l - p.stop);
    for (key, &n) in hist.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let mut orders = vec![0usize; p.d];
        let mut k = key;
        for i in (0..p.d).rev() {
            orders[i] = k % (p.stop + 1) + 1;
            k /= p.stop + 1;
        }
        let mut partial: Vec<(Vec<u32>, u128)> = vec![(Vec::new(), n)];
        for &o in &orders {
            let options: Vec<(u32, u128)> = if o <= p.stop {
                vec![(o as u32, tail)]
            } else {
                let mut v: Vec<(u32, u128)> =
                    (p.stop + 1..=p.l).map(|a| (a as u32, (q - 1) * checked_pow(p.q, p.l - a))).collect();
                v.push((p.l as u32 + 1, 1));
                v
            };
            partial = partial
                .into_iter()
                .flat_map(|(ords, c)| {
                    options.iter().map(move |&(o, w)| {
                        let mut ords = ords.clone();
                        ords.push(o);
                        (ords, c * w)
                    })
                })
                .collect();
        }
        for (ords, c) in partial {
            *out.entry(ords).or_insert(0) += c;
        }
    }
    out.into_iter().map(|(orders, count)| Stratum { orders, count }).collect()
}

/// Number of level-`l` jets at the origin with `f(γ) ≡ t^m mod t^{m+1}`,
/// split by the orders of the coordinate series.
pub fn stratified_count(f: &Polynomial, m: u64, l: u64, q: u64, opts: &CountOptions) -> Result<CountReport> {
    let started = Instant::now();
    require_prime(q)?;
    if m == 0 {
        return Err(Error::Precondition("contact order must be at least 1".into()));
    }
    if l < m {
        return Err(Error::Precondition(format!("jet level {l} is below the contact order {m}")));
    }
    let d = f.num_vars();
    if d == 0 {
        return Err(Error::Precondition("the polynomial has no variables".into()));
    }
    let mut report = CountReport {
        f: f.to_string(),
        m,
        l,
        q,
        total: 0,
        strata: Vec::new(),
        nodes: 0,
        shortcut: opts.shortcut,
        elapsed_ms: 0,
    };
    let mut terms = Vec::new();
    let mut constant = 0;
    for (exps, &c) in f.terms() {
        let c = reduce(c, q);
        if c == 0 {
            continue;
        }
        if exps.iter().all(|&e| e == 0) {
            constant = c;
        } else {
            terms.push((exps.clone(), c));
        }
    }
    let mu = terms.iter().map(|(e, _)| e.iter().sum::<u32>() as u64).min();
    let mu = match mu {
        Some(mu) if constant == 0 && mu <= m => mu as usize,
        _ => {
            report.elapsed_ms = started.elapsed().as_millis() as u64;
            return Ok(report);
        }
    };
    let (m, l) = (m as usize, l as usize);
    let stop = if opts.shortcut { m + 1 - mu } else { l };
    let max_exp = terms.iter().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0) as usize;
    let p = Problem { d, m, l, q, mu, stop, max_exp, terms };
    let shared = Shared { cap: opts.node_cap, nodes: AtomicU64::new(0), abort: AtomicBool::new(false) };

    let firsts = checked_pow(q, d);
    let decode = |mut idx: u128| -> Vec<u64> {
        let mut t = vec![0; d];
        for slot in t.iter_mut().rev() {
            *slot = (idx % q as u128) as u64;
            idx /= q as u128;
        }
        t
    };
    let merge = |(mut a, ok_a): (Vec<u128>, bool), (b, ok_b): (Vec<u128>, bool)| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        (a, ok_a && ok_b)
    };
    let identity = || (vec![0u128; p.key_space()], true);
    let (hist, ok) = if opts.parallel {
        (0..firsts as u64)
            .into_par_iter()
            .map(|idx| Walker::new(&p, &shared).run_from_first_level(&decode(idx as u128)))
            .reduce(identity, merge)
    } else {
        (0..firsts as u64)
            .map(|idx| Walker::new(&p, &shared).run_from_first_level(&decode(idx as u128)))
            .fold(identity(), merge)
    };
    if !ok || shared.abort.load(Ordering::Relaxed) {
        return Err(Error::Resource {
            what: format!("jet enumeration for f = {f}, m = {m}, l = {l}, q = {q}"),
            cap: opts.node_cap as u128,
            estimated: checked_pow(q, d * stop),
        });
    }
    report.strata = expand(&p, &hist);
    report.total = report.strata.iter().map(|s| s.count).sum();
    report.nodes = shared.nodes.load(Ordering::Relaxed);
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

pub fn contact_count(f: &Polynomial, m: u64, l: u64, q: u64, opts: &CountOptions) -> Result<CountReport> {
    stratified_count(f, m, l, q, opts)
}
