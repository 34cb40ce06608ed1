//! Embedded resolution of plane curve germs by iterated point blowups.
//!
//! The strict transform is tracked factor by factor (square-free parts with
//! their multiplicities) in local charts centred at points of the newest
//! exceptional curve. Points are processed first-in first-out in discovery
//! order; within one blowup, the `u`-chart points come in ascending order of
//! their rational coordinate and the point at infinity comes last.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Divisor, DivisorId, IntersectionCell, SncConfiguration};
use crate::poly::{Poly2, Polynomial, UPoly};

pub const DEFAULT_BLOWUP_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    /// The divisor is `{u = 0}` in the local chart.
    U,
    /// The divisor is `{v = 0}` in the local chart.
    V,
}

#[derive(Clone, Debug)]
struct Node {
    exceptional: bool,
    mult: u64,
    disc: u64,
    self_int: i64,
    valuation: (u64, u64),
    ordinal: usize,
    monomial: bool,
}

/// A point of the total transform awaiting inspection.
#[derive(Clone, Debug)]
pub struct Center {
    comps: Vec<(usize, Poly2)>,
    divs: Vec<(usize, Axis)>,
    aux: [Option<Poly2>; 2],
    monomial: bool,
    description: String,
}

impl Center {
    pub fn description(&self) -> &str {
        &self.description
    }

    /// Sum of the multiplicities of the reduced strict transform components.
    pub fn reduced_multiplicity(&self) -> u32 {
        self.comps.iter().map(|(_, g)| g.multiplicity().unwrap_or(0)).sum()
    }

    /// Number of divisors through the point.
    pub fn divisor_count(&self) -> usize {
        self.divs.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupRecord {
    pub step: usize,
    pub center: String,
    pub through: Vec<DivisorId>,
    pub strict_multiplicity: u32,
    pub new_divisor: DivisorId,
    pub mult: u64,
    pub disc: u64,
    /// Vanishing orders of the coordinates `x` and `y` along the new divisor.
    pub valuation: (u64, u64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionLog {
    pub steps: Vec<BlowupRecord>,
    /// `(ord x, ord y)` for every exceptional divisor of the output.
    pub valuations: BTreeMap<DivisorId, (u64, u64)>,
    /// Exceptional divisors whose valuation is monomial in `x, y`, i.e. all
    /// centres leading to them were coordinate points of their charts.
    pub monomial: BTreeSet<DivisorId>,
}

/// Blowup state machine for a plane curve germ at the origin.
#[derive(Clone, Debug)]
pub struct ResolutionState {
    factor_mult: Vec<u64>,
    nodes: Vec<Node>,
    edges: BTreeMap<(usize, usize), u64>,
    queue: VecDeque<Center>,
    log: Vec<BlowupRecord>,
    exceptional_count: usize,
    cap: usize,
}

fn exceptional_label(idx: usize) -> String {
    format!("E{idx}")
}

impl ResolutionState {
    pub fn new(f: &Poly2) -> Result<Self> {
        Self::with_cap(f, DEFAULT_BLOWUP_CAP)
    }

    pub fn with_cap(f: &Poly2, cap: usize) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Domain("the zero polynomial defines no curve germ".into()));
        }
        if !f.vanishes_at_origin() {
            return Err(Error::Domain("polynomial does not vanish at the origin".into()));
        }
        let mut factor_mult = Vec::new();
        let mut comps = Vec::new();
        for (k, g) in f.squarefree_decomposition()? {
            if g.vanishes_at_origin() {
                comps.push((factor_mult.len(), g));
                factor_mult.push(k as u64);
            }
        }
        let origin = Center {
            comps,
            divs: Vec::new(),
            aux: [Some(Poly2::u()), Some(Poly2::v())],
            monomial: true,
            description: "origin".into(),
        };
        Ok(Self {
            factor_mult,
            nodes: Vec::new(),
            edges: BTreeMap::new(),
            queue: VecDeque::from([origin]),
            log: Vec::new(),
            exceptional_count: 0,
            cap,
        })
    }

    /// The next point that must be blown up, recording strict-transform
    /// branches at every simple-normal-crossing point skipped on the way.
    pub fn next_center(&mut self) -> Result<Option<Center>> {
        while let Some(c) = self.queue.pop_front() {
            if self.exceptional_count == 0 {
                return Ok(Some(c));
            }
            let r = c.reduced_multiplicity();
            if r == 0 {
                continue;
            }
            if r == 1 && c.divs.len() == 1 {
                let (comp, g) = c.comps.iter().find(|(_, g)| g.multiplicity() == Some(1)).unwrap();
                let (div, axis) = c.divs[0];
                let restriction = match axis {
                    Axis::U => g.restrict_u0(),
                    Axis::V => g.restrict_v0(),
                };
                if order_at_zero(&restriction) == Some(1) {
                    self.add_branch(*comp, div, 1);
                    continue;
                }
            }
            return Ok(Some(c));
        }
        Ok(None)
    }

    fn add_branch(&mut self, comp: usize, div: usize, count: u64) {
        let id = self.nodes.len();
        self.nodes.push(Node {
            exceptional: false,
            mult: self.factor_mult[comp],
            disc: 1,
            self_int: 0,
            valuation: (0, 0),
            ordinal: 0,
            monomial: false,
        });
        *self.edges.entry((div.min(id), div.max(id))).or_insert(0) += count;
    }

    /// Blows up `center`, creating a new exceptional curve and queueing the
    /// points of the total transform that lie on it.
    pub fn blowup_step(&mut self, center: Center) -> Result<()> {
        if center.comps.is_empty() && center.divs.is_empty() {
            return Err(Error::Domain(format!("center {} is not on the total transform", center.description)));
        }
        if self.exceptional_count >= self.cap {
            return Err(Error::Resource {
                what: "blowup iterations".into(),
                cap: self.cap as u128,
                estimated: self.exceptional_count as u128 + 1 + self.queue.len() as u128,
            });
        }
        let strict: u64 =
            center.comps.iter().map(|(i, g)| self.factor_mult[*i] * g.multiplicity().unwrap_or(0) as u64).sum();
        let mut mult = strict;
        let mut disc = 2;
        let mut val = [0u64; 2];
        for (slot, aux) in center.aux.iter().enumerate() {
            val[slot] = aux.as_ref().and_then(Poly2::multiplicity).unwrap_or(0) as u64;
        }
        for &(d, _) in &center.divs {
            let n = &mut self.nodes[d];
            mult += n.mult;
            disc += n.disc - 1;
            val[0] += n.valuation.0;
            val[1] += n.valuation.1;
            n.self_int -= 1;
        }
        let new = self.nodes.len();
        self.exceptional_count += 1;
        self.nodes.push(Node {
            exceptional: true,
            mult,
            disc,
            self_int: -1,
            valuation: (val[0], val[1]),
            ordinal: self.exceptional_count,
            monomial: center.monomial,
        });
        let label = exceptional_label(self.exceptional_count);

        if let [(a, _), (b, _)] = center.divs[..] {
            let key = (a.min(b), a.max(b));
            if let Some(c) = self.edges.get_mut(&key) {
                *c -= 1;
                if *c == 0 {
                    self.edges.remove(&key);
                }
            }
        }
        for &(d, _) in &center.divs {
            self.edges.insert((d, new), 1);
        }

        self.log.push(BlowupRecord {
            step: self.exceptional_count,
            center: center.description.clone(),
            through: center.divs.iter().map(|&(d, _)| self.nodes[d].ordinal as DivisorId).collect(),
            strict_multiplicity: center.reduced_multiplicity(),
            new_divisor: self.exceptional_count as DivisorId,
            mult,
            disc,
            valuation: (val[0], val[1]),
        });

        let old_u = center.divs.iter().find(|d| d.1 == Axis::U).map(|d| d.0);
        let old_v = center.divs.iter().find(|d| d.1 == Axis::V).map(|d| d.0);

        // u-chart: (u, v) -> (u, uv), new curve {u = 0}
        let chart_u: Vec<(usize, Poly2)> = center.comps.iter().map(|(i, g)| (*i, g.chart_u())).collect();
        let aux_u: Vec<Option<Poly2>> = center.aux.iter().map(|a| a.as_ref().map(Poly2::chart_u)).collect();
        let mut roots: BTreeSet<BigRational> = BTreeSet::new();
        let mut clusters: Vec<(usize, UPoly)> = Vec::new();
        for (i, g) in &chart_u {
            let (rs, cofactor) = g.restrict_u0().rational_roots()?;
            roots.extend(rs.into_iter().map(|(r, _)| r));
            if !cofactor.is_constant() {
                clusters.push((*i, cofactor));
            }
        }
        self.check_clusters(&clusters, &label)?;
        for (i, cofactor) in &clusters {
            let count = cofactor.degree().unwrap_or(0) as u64;
            self.add_branch(*i, new, count);
        }
        if old_v.is_some() {
            roots.insert(BigRational::zero());
        }
        for c in roots {
            let comps: Vec<(usize, Poly2)> =
                chart_u.iter().map(|(i, g)| (*i, g.translate_v(&c))).filter(|(_, g)| g.vanishes_at_origin()).collect();
            if comps.is_empty() {
                continue;
            }
            let mut divs = vec![(new, Axis::U)];
            if c.is_zero() {
                if let Some(v) = old_v {
                    divs.push((v, Axis::V));
                }
            }
            let aux = [0, 1].map(|s| aux_u[s].as_ref().map(|a| a.translate_v(&c)).filter(Poly2::vanishes_at_origin));
            self.queue.push_back(Center {
                comps,
                divs,
                aux,
                monomial: center.monomial && c.is_zero(),
                description: format!("{label} at v={c}"),
            });
        }

        // v-chart origin: (u, v) -> (uv, v), new curve {v = 0}
        let comps: Vec<(usize, Poly2)> =
            center.comps.iter().map(|(i, g)| (*i, g.chart_v())).filter(|(_, g)| g.vanishes_at_origin()).collect();
        if !comps.is_empty() {
            let mut divs = vec![(new, Axis::V)];
            if let Some(u) = old_u {
                divs.push((u, Axis::U));
            }
            let aux = center.aux.clone().map(|a| a.map(|p| p.chart_v()).filter(Poly2::vanishes_at_origin));
            self.queue.push_back(Center {
                comps,
                divs,
                aux,
                monomial: center.monomial,
                description: format!("{label} at infinity"),
            });
        }
        Ok(())
    }

    fn check_clusters(&self, clusters: &[(usize, UPoly)], label: &str) -> Result<()> {
        for (idx, (_, p)) in clusters.iter().enumerate() {
            if !p.gcd(&p.derivative()).is_constant() {
                return Err(Error::Domain(format!(
                    "strict transform meets {label} with multiplicity at a non-rational point"
                )));
            }
            for (_, q) in &clusters[idx + 1..] {
                if !p.gcd(q).is_constant() {
                    return Err(Error::Domain(format!("two branches meet {label} at the same non-rational point")));
                }
            }
        }
        Ok(())
    }

    pub fn run(mut self) -> Result<(SncConfiguration, ResolutionLog)> {
        while let Some(c) = self.next_center()? {
            self.blowup_step(c)?;
        }
        Ok(self.finish())
    }

    fn finish(self) -> (SncConfiguration, ResolutionLog) {
        // exceptional curves keep creation order; branches follow
        let mut ids = vec![0 as DivisorId; self.nodes.len()];
        let mut next_exc = 1;
        let mut next_branch = self.exceptional_count as DivisorId + 1;
        let mut divisors = Vec::new();
        let mut branch_divs = Vec::new();
        let mut valuations = BTreeMap::new();
        let mut monomial = BTreeSet::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if n.exceptional {
                ids[i] = next_exc;
                divisors.push(
                    Divisor::new(next_exc, exceptional_label(next_exc as usize), n.mult, n.disc, true, true)
                        .rational_curve(Some(n.self_int)),
                );
                valuations.insert(next_exc, n.valuation);
                if n.monomial {
                    monomial.insert(next_exc);
                }
                next_exc += 1;
            } else {
                ids[i] = next_branch;
                let label = format!("D{}", next_branch as usize - self.exceptional_count);
                branch_divs.push(Divisor::new(next_branch, label, n.mult, n.disc, false, false).rational_curve(None));
                next_branch += 1;
            }
        }
        divisors.extend(branch_divs);
        let mut cells: Vec<IntersectionCell> = self
            .edges
            .iter()
            .map(|(&(a, b), &count)| {
                let (x, y) = (ids[a].min(ids[b]), ids[a].max(ids[b]));
                IntersectionCell::pair(x, y, count, true)
            })
            .collect();
        cells.sort_by_key(|c| (c.ids[0], c.ids[1]));
        let cfg = SncConfiguration { ambient_dim: 2, sigma: "origin".into(), divisors, cells, weights: None };
        (cfg, ResolutionLog { steps: self.log, valuations, monomial })
    }
}

fn order_at_zero(p: &UPoly) -> Option<usize> {
    p.coeffs().iter().position(|c| !c.is_zero())
}

/// Resolves the germ at the origin of a polynomial in `x` (and optionally `y`).
pub fn resolve_plane_curve(f: &Polynomial) -> Result<(SncConfiguration, ResolutionLog)> {
    resolve_plane_curve_with_cap(f, DEFAULT_BLOWUP_CAP)
}

pub fn resolve_plane_curve_with_cap(f: &Polynomial, cap: usize) -> Result<(SncConfiguration, ResolutionLog)> {
    ResolutionState::with_cap(&f.to_poly2()?, cap)?.run()
}
