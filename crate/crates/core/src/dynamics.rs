//! 1-cycle detection, local moves and the probabilistic cellular automaton sampler.

use rayon::prelude::*;

use crate::config::{validate, BoundarySpec, Configuration};
use crate::error::{IceError, Result};
use crate::lattice::{FlipFamily, HexDomain, LatticeKind};
use crate::rng::uniform01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Cw,
    Ccw,
}

impl Orientation {
    pub fn opposite(self) -> Self {
        match self {
            Orientation::Cw => Orientation::Ccw,
            Orientation::Ccw => Orientation::Cw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedFace {
    pub face: usize,
    pub orientation: Orientation,
}

/// Orientation of a face if all its edges point the same way around it.
#[inline]
pub fn face_orientation(domain: &HexDomain, config: &Configuration, face: usize) -> Option<Orientation> {
    let f = &domain.faces[face];
    let first = config.get(f.edges[0]) == f.sense[0];
    for (&e, &s) in f.edges.iter().zip(&f.sense).skip(1) {
        if (config.get(e) == s) != first {
            return None;
        }
    }
    Some(if first { Orientation::Ccw } else { Orientation::Cw })
}

/// Off-boundary 1-cycles of one family.
pub fn directed_faces(domain: &HexDomain, config: &Configuration, family: FlipFamily) -> Vec<DirectedFace> {
    domain
        .family_face_ids(family)
        .iter()
        .copied()
        .filter(|&f| domain.faces[f].off_boundary)
        .filter_map(|f| face_orientation(domain, config, f).map(|orientation| DirectedFace { face: f, orientation }))
        .collect()
}

/// All off-boundary 1-cycles across the lattice's families.
pub fn all_directed_faces(domain: &HexDomain, config: &Configuration) -> Vec<DirectedFace> {
    let mut out: Vec<DirectedFace> = domain.kind.families().iter().flat_map(|&fam| directed_faces(domain, config, fam)).collect();
    out.sort();
    out
}

/// Reverses a unidirectional face.
pub fn flip(domain: &HexDomain, config: &Configuration, face: DirectedFace) -> Result<Configuration> {
    config.check_domain(domain)?;
    if face.face >= domain.faces.len() || face_orientation(domain, config, face.face) != Some(face.orientation) {
        return Err(IceError::InvalidMove { face: face.face });
    }
    let mut c = config.clone();
    for &e in &domain.faces[face.face].edges {
        c.toggle(e);
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub passes: Vec<FlipFamily>,
    pub flip_probability: f64,
}

impl Schedule {
    pub fn new(kind: LatticeKind, passes: Vec<FlipFamily>, flip_probability: f64) -> Result<Self> {
        if passes.is_empty() {
            return Err(IceError::invalid("schedule has no passes"));
        }
        if let Some(f) = passes.iter().find(|f| !kind.supports(**f)) {
            return Err(IceError::invalid(format!("family {f} does not occur on the {kind} lattice")));
        }
        if !(flip_probability > 0.0 && flip_probability <= 1.0) {
            return Err(IceError::invalid(format!("flip probability {flip_probability} outside (0, 1]")));
        }
        Ok(Schedule { passes, flip_probability })
    }

    /// Triangular `fe,fo`; Kagome `fe,fo,fh`; 3.4.6.4 `fe,fo,fs,fl,fr,fh`.
    pub fn default_for(kind: LatticeKind) -> Self {
        use FlipFamily::*;
        let passes = match kind {
            LatticeKind::Triangular => vec![EvenTriangle, OddTriangle],
            LatticeKind::Kagome => vec![EvenTriangle, OddTriangle, Hexagon1],
            LatticeKind::T3464 => vec![EvenTriangle, OddTriangle, LozengeStraight, LozengeLeft, LozengeRight, Hexagon1],
        };
        Schedule { passes, flip_probability: 0.5 }
    }

    /// Kagome cycle visiting 1-hexagons twice per sweep: `fe,fh,fo,fh`.
    pub fn kagome_doubled_hexagons() -> Self {
        use FlipFamily::*;
        Schedule { passes: vec![EvenTriangle, Hexagon1, OddTriangle, Hexagon1], flip_probability: 0.5 }
    }

    /// Parses a comma list such as `fe,fo,fh`.
    pub fn parse(kind: LatticeKind, s: &str, flip_probability: f64) -> Result<Self> {
        let passes = s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<Vec<_>>>()?;
        Schedule::new(kind, passes, flip_probability)
    }

    pub fn codes(&self) -> String {
        self.passes.iter().map(|f| f.code()).collect::<Vec<_>>().join(",")
    }
}

/// Per-face flip counters over a window of sweeps `[window_start, window_end)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipStats {
    pub per_face: Vec<u64>,
    pub window_start: u64,
    pub window_end: u64,
    pub total_sweeps: u64,
    pub seed: u64,
}

impl FlipStats {
    pub fn new(faces: usize, window_start: u64, window_end: u64, seed: u64) -> Self {
        FlipStats { per_face: vec![0; faces], window_start, window_end, total_sweeps: 0, seed }
    }

    pub fn in_window(&self, sweep: u64) -> bool {
        (self.window_start..self.window_end).contains(&sweep)
    }

    pub fn total(&self) -> u64 {
        self.per_face.iter().sum()
    }

    /// Text table `<face id> <family> <cx> <cy> <count>` with a header line.
    pub fn export(&self, domain: &HexDomain) -> String {
        let mut s = format!(
            "# window {} {} seed {} sweeps {} lattice {} n {}\n",
            self.window_start, self.window_end, self.seed, self.total_sweeps, domain.kind, domain.n
        );
        for f in &domain.faces {
            s.push_str(&format!("{} {} {:.6} {:.6} {}\n", f.id, f.family, f.centroid[0], f.centroid[1], self.per_face[f.id]));
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct SamplerState {
    pub config: Configuration,
    pub sweep: u64,
    pub seed: u64,
}

/// Work split used by `family_pass`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// Decide flips on the rayon pool (results are identical to sequential).
    Rayon,
}

/// One pass of independent flips over a family. `pass` distinguishes
/// repeated occurrences of a family within one sweep.
pub fn family_pass(
    domain: &HexDomain,
    state: &mut SamplerState,
    family: FlipFamily,
    pass: usize,
    p: f64,
    stats: Option<&mut FlipStats>,
    par: Parallelism,
) {
    let (seed, sweep) = (state.seed, state.sweep);
    let config = &state.config;
    let decide = |&f: &usize| -> Option<usize> {
        let face = &domain.faces[f];
        if !face.off_boundary || face_orientation(domain, config, f).is_none() {
            return None;
        }
        (uniform01(seed, sweep, pass as u64, f as u64) < p).then_some(f)
    };
    let ids = domain.family_face_ids(family);
    let flips: Vec<usize> = match par {
        Parallelism::Sequential => ids.iter().filter_map(decide).collect(),
        Parallelism::Rayon => ids.par_iter().with_min_len(512).filter_map(decide).collect(),
    };
    for &f in &flips {
        for &e in &domain.faces[f].edges {
            state.config.toggle(e);
        }
    }
    if let Some(stats) = stats {
        if stats.in_window(sweep) {
            for &f in &flips {
                stats.per_face[f] += 1;
            }
        }
    }
}

/// Runs `burn_in + window` sweeps of the schedule from `initial`.
/// Statistics are gathered over the last `window` sweeps only.
#[allow(clippy::too_many_arguments)]
pub fn run(
    domain: &HexDomain,
    boundary: &BoundarySpec,
    initial: &Configuration,
    schedule: &Schedule,
    burn_in: u64,
    window: u64,
    seed: u64,
    par: Parallelism,
) -> Result<(Configuration, FlipStats)> {
    initial.check_domain(domain)?;
    if !initial.agrees_with(domain, boundary) {
        return Err(IceError::invalid("initial configuration does not match the boundary"));
    }
    let bad = validate(domain, initial)?;
    if !bad.is_empty() {
        return Err(IceError::invalid(format!("initial configuration violates the ice rule at {} vertices", bad.len())));
    }
    for f in &schedule.passes {
        if !domain.kind.supports(*f) {
            return Err(IceError::invalid(format!("family {f} does not occur on the {} lattice", domain.kind)));
        }
    }
    let mut state = SamplerState { config: initial.clone(), sweep: 0, seed };
    let mut stats = FlipStats::new(domain.faces.len(), burn_in, burn_in + window, seed);
    for sweep in 0..burn_in + window {
        state.sweep = sweep;
        sweep_once(domain, &mut state, schedule, Some(&mut stats), par);
    }
    stats.total_sweeps = burn_in + window;
    Ok((state.config, stats))
}

/// One full pass through the schedule at `state.sweep`.
pub fn sweep_once(domain: &HexDomain, state: &mut SamplerState, schedule: &Schedule, mut stats: Option<&mut FlipStats>, par: Parallelism) {
    for (i, &fam) in schedule.passes.iter().enumerate() {
        family_pass(domain, state, fam, i, schedule.flip_probability, stats.as_deref_mut(), par);
    }
}

/// A 1-cycle inside the region bounded by a closed unidirectional cycle.
///
/// `cycle` lists the edge ids of the cycle in order. Faces are taken to be
/// inside when their centroid has nonzero winding number with respect to the
/// cycle polygon.
pub fn find_enclosed_1cycle(domain: &HexDomain, config: &Configuration, cycle: &[usize]) -> Result<DirectedFace> {
    let poly = cycle_polygon(domain, config, cycle)?;
    let mut best: Option<(usize, DirectedFace)> = None;
    for f in &domain.faces {
        if winding_number(&poly, f.centroid) == 0 {
            continue;
        }
        if let Some(o) = face_orientation(domain, config, f.id) {
            // prefer the smallest enclosed 1-cycle (the cycle itself if minimal)
            let k = f.edges.len();
            if best.is_none_or(|(bk, _)| k < bk) {
                best = Some((k, DirectedFace { face: f.id, orientation: o }));
            }
        }
    }
    best.map(|(_, d)| d)
        .ok_or_else(|| IceError::InvariantViolation("unidirectional cycle encloses no 1-cycle".into()))
}

/// Vertex positions along a directed cycle, checking that it is closed and unidirectional.
fn cycle_polygon(domain: &HexDomain, config: &Configuration, cycle: &[usize]) -> Result<Vec<[f64; 2]>> {
    if cycle.len() < 3 {
        return Err(IceError::invalid("a cycle needs at least three edges"));
    }
    let arrow = |e: usize| {
        let edge = &domain.edges[e];
        if config.get(e) {
            (edge.tail, edge.head)
        } else {
            (edge.head, edge.tail)
        }
    };
    let mut pts = Vec::with_capacity(cycle.len());
    for (i, &e) in cycle.iter().enumerate() {
        let (from, to) = arrow(e);
        let (next_from, _) = arrow(cycle[(i + 1) % cycle.len()]);
        if to != next_from {
            return Err(IceError::invalid(format!("cycle is not unidirectional and closed at edge {e}")));
        }
        pts.push(domain.vertices[from].pos);
    }
    Ok(pts)
}

pub(crate) fn winding_number(poly: &[[f64; 2]], p: [f64; 2]) -> i32 {
    let mut wn = 0;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let cross = (b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1]);
        if a[1] <= p[1] {
            if b[1] > p[1] && cross > 0.0 {
                wn += 1;
            }
        } else if b[1] <= p[1] && cross < 0.0 {
            wn -= 1;
        }
    }
    wn
}

/// Follows arrows from `start` until a vertex repeats and returns the simple
/// directed cycle found, as edge ids. `choose` picks among outgoing arrows.
pub fn directed_cycle_from(
    domain: &HexDomain,
    config: &Configuration,
    start: usize,
    mut choose: impl FnMut(usize) -> usize,
) -> Option<Vec<usize>> {
    let mut seen = vec![usize::MAX; domain.vertices.len()];
    let mut path: Vec<usize> = Vec::new();
    let mut v = start;
    loop {
        if seen[v] != usize::MAX {
            return Some(path[seen[v]..].to_vec());
        }
        seen[v] = path.len();
        let outs: Vec<(usize, usize)> = domain.incidence[v]
            .iter()
            .filter(|&&(e, is_tail)| config.get(e) == is_tail)
            .map(|&(e, is_tail)| (e, if is_tail { domain.edges[e].head } else { domain.edges[e].tail }))
            .collect();
        if outs.is_empty() {
            return None;
        }
        let (e, w) = outs[choose(outs.len()) % outs.len()];
        path.push(e);
        v = w;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_validation() {
        assert!(Schedule::parse(LatticeKind::Triangular, "fe,fh", 0.5).is_err());
        assert!(Schedule::parse(LatticeKind::Triangular, "", 0.5).is_err());
        assert!(Schedule::parse(LatticeKind::Kagome, "fe,fo", 0.0).is_err());
        let s = Schedule::parse(LatticeKind::T3464, "fe,fo,fs,fl,fr,fh", 0.5).unwrap();
        assert_eq!(s, Schedule::default_for(LatticeKind::T3464));
        assert_eq!(s.codes(), "fe,fo,fs,fl,fr,fh");
    }

    #[test]
    fn winding_of_unit_square() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert_eq!(winding_number(&sq, [0.5, 0.5]), 1);
        assert_eq!(winding_number(&sq, [1.5, 0.5]), 0);
        let rev: Vec<_> = sq.iter().rev().copied().collect();
        assert_eq!(winding_number(&rev, [0.5, 0.5]), -1);
    }
}
