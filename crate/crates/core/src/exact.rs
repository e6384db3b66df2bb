//! Exhaustive enumeration of legal fill-ins, flip graphs and the uniformity oracle.

use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::config::{boundary_profile, BoundarySpec, Configuration};
use crate::dynamics::{face_orientation, sweep_once, Parallelism, SamplerState, Schedule};
use crate::error::{IceError, Result};
use crate::lattice::{FlipFamily, HexDomain};

pub const DEFAULT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub count: u128,
    /// All fill-ins in canonical order, present only when `count <= cap`.
    pub configs: Option<Vec<Configuration>>,
    pub truncated: bool,
}

impl EnumerationResult {
    fn empty() -> Self {
        EnumerationResult { count: 0, configs: Some(Vec::new()), truncated: false }
    }

    pub fn configs(&self) -> Result<&[Configuration]> {
        match (&self.configs, self.truncated) {
            (Some(c), false) => Ok(c),
            _ => Err(IceError::invalid(format!("enumeration truncated ({} fill-ins)", self.count))),
        }
    }

    pub fn index_of(&self, config: &Configuration) -> Option<usize> {
        self.configs.as_ref()?.binary_search(config).ok()
    }

    /// Count in decimal, then one bit string per line.
    pub fn export(&self) -> String {
        let mut s = format!("count {}\n", self.count);
        if let Some(cs) = &self.configs {
            for c in cs {
                s.push_str(&c.bit_string());
                s.push('\n');
            }
        }
        s
    }
}

struct Search<'a> {
    domain: &'a HexDomain,
    order: Vec<usize>,
    half: Vec<u8>,
    cap: usize,
}

#[derive(Clone)]
struct Partial {
    config: Configuration,
    out: Vec<u8>,
    inc: Vec<u8>,
}

impl Partial {
    /// Sets edge `e` to `bit` if the endpoint balances allow it.
    fn assign(&mut self, s: &Search, e: usize, bit: bool) -> bool {
        let edge = &s.domain.edges[e];
        let (from, to) = if bit { (edge.tail, edge.head) } else { (edge.head, edge.tail) };
        if self.out[from] >= s.half[from] || self.inc[to] >= s.half[to] {
            return false;
        }
        self.out[from] += 1;
        self.inc[to] += 1;
        self.config.set(e, bit);
        true
    }

    fn unassign(&mut self, s: &Search, e: usize, bit: bool) {
        let edge = &s.domain.edges[e];
        let (from, to) = if bit { (edge.tail, edge.head) } else { (edge.head, edge.tail) };
        self.out[from] -= 1;
        self.inc[to] -= 1;
    }
}

impl Search<'_> {
    fn dfs(&self, p: &mut Partial, depth: usize, count: &mut u128, store: &mut Option<Vec<Configuration>>) {
        if depth == self.order.len() {
            *count += 1;
            if let Some(v) = store {
                if v.len() < self.cap {
                    v.push(p.config.clone());
                } else {
                    *store = None;
                }
            }
            return;
        }
        let e = self.order[depth];
        for bit in [false, true] {
            if p.assign(self, e, bit) {
                self.dfs(p, depth + 1, count, store);
                p.unassign(self, e, bit);
            }
        }
    }
}

/// Interior edges sorted by the lower endpoint cell, then direction class.
fn assignment_order(domain: &HexDomain) -> Vec<usize> {
    let mut order: Vec<usize> = domain.interior_edges().map(|e| e.id).collect();
    order.sort_by_key(|&e| {
        let edge = &domain.edges[e];
        let (a, b) = (domain.vertices[edge.tail].cell, domain.vertices[edge.head].cell);
        let c = a.min(b);
        (c.1, c.0, edge.dirclass, e)
    });
    order
}

/// Counts (and stores up to `cap`) the legal fill-ins of `boundary`.
pub fn enumerate(domain: &HexDomain, boundary: &BoundarySpec, cap: usize) -> Result<EnumerationResult> {
    enumerate_with(domain, boundary, cap, Parallelism::Sequential)
}

pub fn enumerate_with(domain: &HexDomain, boundary: &BoundarySpec, cap: usize, par: Parallelism) -> Result<EnumerationResult> {
    boundary.check_domain(domain)?;
    match boundary_profile(domain, boundary) {
        Err(IceError::Infeasible(_)) => return Ok(EnumerationResult::empty()),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    let nv = domain.vertices.len();
    let mut half = vec![u8::MAX; nv];
    for &v in &domain.interior_vertices {
        half[v] = (domain.incidence[v].len() / 2) as u8;
    }
    let search = Search { domain, order: assignment_order(domain), half, cap };
    let mut root = Partial { config: Configuration::new(domain), out: vec![0; nv], inc: vec![0; nv] };
    for (e, bit) in boundary.pairs() {
        if !root.assign(&search, e, bit) {
            return Ok(EnumerationResult::empty());
        }
    }

    let split = match par {
        Parallelism::Sequential => 0,
        Parallelism::Rayon => search.order.len().min(12),
    };
    let mut prefixes = Vec::new();
    collect_prefixes(&search, &mut root, 0, split, &mut prefixes);
    let parts: Vec<(u128, Option<Vec<Configuration>>)> = prefixes
        .into_par_iter()
        .map(|(mut p, depth)| {
            let mut count = 0u128;
            let mut store = Some(Vec::new());
            search.dfs(&mut p, depth, &mut count, &mut store);
            (count, store)
        })
        .collect();

    let count: u128 = parts.iter().map(|(c, _)| c).sum();
    let truncated = count > cap as u128;
    let configs = if truncated {
        None
    } else {
        let mut all: Vec<Configuration> = parts.into_iter().flat_map(|(_, s)| s.unwrap_or_default()).collect();
        all.sort();
        Some(all)
    };
    Ok(EnumerationResult { count, configs, truncated })
}

fn collect_prefixes(s: &Search, p: &mut Partial, depth: usize, split: usize, out: &mut Vec<(Partial, usize)>) {
    if depth == split || depth == s.order.len() {
        out.push((p.clone(), depth));
        return;
    }
    let e = s.order[depth];
    for bit in [false, true] {
        if p.assign(s, e, bit) {
            collect_prefixes(s, p, depth + 1, split, out);
            p.unassign(s, e, bit);
        }
    }
}

/// Configurations joined by single 1-cycle reversals from the allowed families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipGraph {
    pub nodes: usize,
    pub adjacency: Vec<Vec<usize>>,
    pub allowed: Vec<FlipFamily>,
}

impl FlipGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Component label per node, labels numbered in order of first node.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.nodes];
        let mut next = 0;
        for s in 0..self.nodes {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }
}

pub fn flip_graph(result: &EnumerationResult, domain: &HexDomain, allowed: &[FlipFamily]) -> Result<FlipGraph> {
    let configs = result.configs()?;
    if let Some(f) = allowed.iter().find(|f| !domain.kind.supports(**f)) {
        return Err(IceError::invalid(format!("family {f} does not occur on the {} lattice", domain.kind)));
    }
    let faces: Vec<usize> = allowed
        .iter()
        .flat_map(|&fam| domain.family_face_ids(fam).iter().copied())
        .filter(|&f| domain.faces[f].off_boundary)
        .collect();
    let adjacency: Vec<Vec<usize>> = configs
        .par_iter()
        .map(|c| {
            let mut nb = Vec::new();
            for &f in &faces {
                if face_orientation(domain, c, f).is_some() {
                    let mut d = c.clone();
                    for &e in &domain.faces[f].edges {
                        d.toggle(e);
                    }
                    let j = configs.binary_search(&d).expect("a local move leaves the fill-in set");
                    nb.push(j);
                }
            }
            nb.sort_unstable();
            nb.dedup();
            nb
        })
        .collect();
    Ok(FlipGraph { nodes: configs.len(), adjacency, allowed: allowed.to_vec() })
}

/// Entropy per arrow, `ln(count) / arrows`.
pub fn entropy_of(count: u128, arrows: usize) -> Result<f64> {
    if count == 0 {
        return Err(IceError::Infeasible("entropy of an empty fill-in set is undefined".into()));
    }
    if arrows == 0 {
        return Err(IceError::invalid("arrow count must be positive"));
    }
    Ok((count as f64).ln() / arrows as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport {
    pub cells: usize,
    pub samples: usize,
    pub chi_square: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Samples that fell outside the enumerated set (always 0 for a correct sampler).
    pub strays: usize,
}

impl UniformityReport {
    pub fn passes(&self, alpha: f64) -> bool {
        self.strays == 0 && self.p_value > alpha
    }
}

/// Chi-square test of sampler visit frequencies against the uniform law on
/// the enumerated fill-ins. Sampling starts from the first fill-in in
/// canonical order, runs `burn_in` sweeps, then records one configuration
/// every `spacing` sweeps.
#[allow(clippy::too_many_arguments)]
pub fn uniformity_test(
    domain: &HexDomain,
    boundary: &BoundarySpec,
    schedule: &Schedule,
    sample_count: usize,
    spacing: u64,
    burn_in: u64,
    seed: u64,
) -> Result<UniformityReport> {
    let result = enumerate(domain, boundary, DEFAULT_CAP)?;
    let configs = result.configs()?;
    if configs.is_empty() {
        return Err(IceError::Infeasible("boundary has no legal fill-in".into()));
    }
    if spacing == 0 || sample_count == 0 {
        return Err(IceError::invalid("spacing and sample count must be positive"));
    }
    let mut counts = vec![0u64; configs.len()];
    let mut strays = 0;
    let mut state = SamplerState { config: configs[0].clone(), sweep: 0, seed };
    let step = |state: &mut SamplerState| {
        sweep_once(domain, state, schedule, None, Parallelism::Sequential);
        state.sweep += 1;
    };
    for _ in 0..burn_in {
        step(&mut state);
    }
    for _ in 0..sample_count {
        for _ in 0..spacing {
            step(&mut state);
        }
        match configs.binary_search(&state.config) {
            Ok(i) => counts[i] += 1,
            Err(_) => strays += 1,
        }
    }
    let k = configs.len();
    let expected = sample_count as f64 / k as f64;
    let chi_square: f64 = counts.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let dof = k - 1;
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64).map_err(|e| IceError::InvariantViolation(e.to_string()))?.sf(chi_square)
    };
    Ok(UniformityReport { cells: k, samples: sample_count, chi_square, dof, p_value, strays })
}
