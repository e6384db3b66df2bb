//! Arrow configurations, the ice rule, and the height function.

use std::collections::VecDeque;
use std::fmt;

use num_rational::Rational64;

use crate::error::{IceError, Result};
use crate::lattice::{HexDomain, LatticeKind};

/// One orientation bit per edge; `true` means the arrow points tail -> head.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    kind: LatticeKind,
    n: usize,
    len: usize,
    words: Vec<u64>,
}

/// Lexicographic on the bit string (edge 0 most significant).
impl Ord for Configuration {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.kind, self.n, self.len)
            .cmp(&(other.kind, other.n, other.len))
            .then_with(|| self.words.iter().map(|w| w.reverse_bits()).cmp(other.words.iter().map(|w| w.reverse_bits())))
    }
}

impl PartialOrd for Configuration {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({} N={} {})", self.kind, self.n, self.bit_string())
    }
}

impl Configuration {
    /// All arrows along their canonical direction.
    pub fn new(domain: &HexDomain) -> Self {
        Self::from_fn(domain, |_| true)
    }

    pub fn from_fn(domain: &HexDomain, mut f: impl FnMut(usize) -> bool) -> Self {
        let len = domain.edge_count();
        let mut c = Configuration { kind: domain.kind, n: domain.n, len, words: vec![0; len.div_ceil(64)] };
        for e in 0..len {
            c.set(e, f(e));
        }
        c
    }

    pub fn from_bits(domain: &HexDomain, bits: &[bool]) -> Result<Self> {
        if bits.len() != domain.edge_count() {
            return Err(IceError::invalid(format!("{} bits given for {} edges", bits.len(), domain.edge_count())));
        }
        Ok(Self::from_fn(domain, |e| bits[e]))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, e: usize) -> bool {
        self.words[e >> 6] >> (e & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, e: usize, v: bool) {
        let m = 1u64 << (e & 63);
        if v {
            self.words[e >> 6] |= m;
        } else {
            self.words[e >> 6] &= !m;
        }
    }

    #[inline]
    pub fn toggle(&mut self, e: usize) {
        self.words[e >> 6] ^= 1u64 << (e & 63);
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.len).map(|e| self.get(e)).collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// `'0'`/`'1'` per edge id.
    pub fn bit_string(&self) -> String {
        (0..self.len).map(|e| if self.get(e) { '1' } else { '0' }).collect()
    }

    /// Every arrow reversed.
    pub fn reversed(&self) -> Self {
        let mut c = self.clone();
        for e in 0..self.len {
            c.toggle(e);
        }
        c
    }

    pub(crate) fn check_domain(&self, domain: &HexDomain) -> Result<()> {
        if self.kind != domain.kind || self.n != domain.n || self.len != domain.edge_count() {
            return Err(IceError::invalid(format!(
                "configuration for {} N={} ({} edges) used with {} N={} ({} edges)",
                self.kind,
                self.n,
                self.len,
                domain.kind,
                domain.n,
                domain.edge_count()
            )));
        }
        Ok(())
    }

    /// The boundary arrows of this configuration.
    pub fn boundary(&self, domain: &HexDomain) -> BoundarySpec {
        BoundarySpec::from_fn(domain, |e| self.get(e))
    }

    pub fn agrees_with(&self, domain: &HexDomain, spec: &BoundarySpec) -> bool {
        domain.dual.loop_edges.iter().all(|&e| spec.get(e) == Some(self.get(e)))
    }
}

/// Fixed orientations of all boundary arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundarySpec {
    kind: LatticeKind,
    n: usize,
    orient: Vec<Option<bool>>,
}

impl BoundarySpec {
    pub fn from_fn(domain: &HexDomain, mut f: impl FnMut(usize) -> bool) -> Self {
        let orient = domain.edges.iter().map(|e| if e.is_boundary { Some(f(e.id)) } else { None }).collect();
        BoundarySpec { kind: domain.kind, n: domain.n, orient }
    }

    /// Builds a spec from `(edge, bit)` pairs; the pairs must cover exactly the boundary arrows.
    pub fn from_pairs(domain: &HexDomain, pairs: &[(usize, bool)]) -> Result<Self> {
        let mut orient = vec![None; domain.edge_count()];
        for &(e, b) in pairs {
            let edge = domain.edges.get(e).ok_or_else(|| IceError::invalid(format!("edge {e} out of range")))?;
            if !edge.is_boundary {
                return Err(IceError::invalid(format!("edge {e} is not a boundary arrow")));
            }
            orient[e] = Some(b);
        }
        if let Some(e) = domain.dual.loop_edges.iter().find(|&&e| orient[e].is_none()) {
            return Err(IceError::invalid(format!("boundary arrow {e} has no orientation")));
        }
        Ok(BoundarySpec { kind: domain.kind, n: domain.n, orient })
    }

    pub fn get(&self, e: usize) -> Option<bool> {
        self.orient.get(e).copied().flatten()
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> Vec<(usize, bool)> {
        self.orient.iter().enumerate().filter_map(|(e, b)| b.map(|b| (e, b))).collect()
    }

    pub fn reversed(&self) -> Self {
        BoundarySpec { kind: self.kind, n: self.n, orient: self.orient.iter().map(|b| b.map(|b| !b)).collect() }
    }

    pub(crate) fn check_domain(&self, domain: &HexDomain) -> Result<()> {
        if self.kind != domain.kind || self.n != domain.n || self.orient.len() != domain.edge_count() {
            return Err(IceError::invalid("boundary spec belongs to a different domain"));
        }
        Ok(())
    }

    /// Sum of height increments once around the boundary loop.
    pub fn flux(&self, domain: &HexDomain) -> i64 {
        loop_increments(domain, |e| self.get(e).unwrap_or(true)).sum()
    }

    /// Interior vertices whose fixed boundary arrows alone already break the
    /// ice rule (more than half of the star pointing in, or out).
    pub fn local_conflicts(&self, domain: &HexDomain) -> Vec<usize> {
        let half = domain.kind.degree() as i32 / 2;
        domain
            .interior_vertices
            .iter()
            .copied()
            .filter(|&v| {
                let (mut inc, mut out) = (0, 0);
                for &(e, is_tail) in &domain.incidence[v] {
                    if let Some(b) = self.get(e) {
                        if b == is_tail {
                            out += 1;
                        } else {
                            inc += 1;
                        }
                    }
                }
                inc > half || out > half
            })
            .collect()
    }
}

/// Height change when stepping from dual vertex `from` across edge `e`.
#[inline]
pub(crate) fn crossing(domain: &HexDomain, e: usize, from: usize, bit: bool) -> i64 {
    let edge = &domain.edges[e];
    let right_to_left = from == edge.right;
    // an arrow along the edge points from the right side of a left-to-right
    // step to its left side
    match (right_to_left, bit) {
        (true, true) | (false, false) => -1,
        _ => 1,
    }
}

fn loop_increments<'a>(domain: &'a HexDomain, bit: impl Fn(usize) -> bool + 'a) -> impl Iterator<Item = i64> + 'a {
    domain
        .dual
        .loop_edges
        .iter()
        .zip(&domain.dual.loop_faces)
        .map(move |(&e, &f)| crossing(domain, e, f, bit(e)))
}

/// Interior vertices violating the ice rule.
pub fn validate(domain: &HexDomain, config: &Configuration) -> Result<Vec<usize>> {
    config.check_domain(domain)?;
    Ok(domain
        .interior_vertices
        .iter()
        .copied()
        .filter(|&v| {
            let out = domain.incidence[v].iter().filter(|&&(e, is_tail)| config.get(e) == is_tail).count();
            2 * out != domain.incidence[v].len()
        })
        .collect())
}

pub fn is_legal(domain: &HexDomain, config: &Configuration) -> bool {
    validate(domain, config).map(|v| v.is_empty()).unwrap_or(false)
}

/// Integer height per dual vertex, zero at the base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightField {
    pub values: Vec<i64>,
}

impl HeightField {
    pub fn get(&self, dual_vertex: usize) -> i64 {
        self.values[dual_vertex]
    }
}

/// Dual adjacency: `(edge, neighbour)` per dual vertex.
pub fn dual_adjacency(domain: &HexDomain) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); domain.dual.vertices.len()];
    for e in &domain.edges {
        adj[e.left].push((e.id, e.right));
        adj[e.right].push((e.id, e.left));
    }
    adj
}

/// Height via the crossing rule along a BFS tree of the dual cover; every
/// non-tree dual edge is checked for consistency.
pub fn height(domain: &HexDomain, config: &Configuration) -> Result<HeightField> {
    config.check_domain(domain)?;
    let adj = dual_adjacency(domain);
    let mut values = vec![i64::MIN; adj.len()];
    let base = domain.dual.base_point;
    values[base] = 0;
    let mut queue = VecDeque::from([base]);
    while let Some(f) = queue.pop_front() {
        for &(e, g) in &adj[f] {
            let h = values[f] + crossing(domain, e, f, config.get(e));
            if values[g] == i64::MIN {
                values[g] = h;
                queue.push_back(g);
            } else if values[g] != h {
                return Err(IceError::Inconsistent { dual_edge: e, circulation: h - values[g] });
            }
        }
    }
    if values.contains(&i64::MIN) {
        return Err(IceError::InvariantViolation("dual cover is disconnected".into()));
    }
    Ok(HeightField { values })
}

/// Heights along the boundary loop, computed from boundary arrows only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryProfile {
    pub heights: Vec<i64>,
}

pub fn boundary_profile(domain: &HexDomain, spec: &BoundarySpec) -> Result<BoundaryProfile> {
    spec.check_domain(domain)?;
    let mut heights = Vec::with_capacity(domain.boundary_count() + 1);
    heights.push(0);
    let mut h = 0;
    for d in loop_increments(domain, |e| spec.get(e).unwrap_or(true)) {
        h += d;
        heights.push(h);
    }
    if h != 0 {
        return Err(IceError::Infeasible(format!("boundary flux is {h}, no legal fill-in exists")));
    }
    Ok(BoundaryProfile { heights })
}

/// Per-side tilts of a boundary profile, counterclockwise from the base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub tilts: [Rational64; 6],
}

impl Signature {
    pub fn from_ints(t: [i32; 6]) -> Self {
        Signature { tilts: t.map(|x| Rational64::from_integer(x as i64)) }
    }

    /// Each tilt rounded to the nearest of -1, 0, +1. Zero-tilt sides with an
    /// odd number of steps carry a residual of one step.
    pub fn nominal(&self) -> [i32; 6] {
        self.tilts.map(|t| {
            let x = *t.numer() as f64 / *t.denom() as f64;
            x.round().clamp(-1.0, 1.0) as i32
        })
    }

    pub fn weighted_sum(&self, side_len: usize) -> Rational64 {
        self.tilts.iter().fold(Rational64::from_integer(0), |acc, t| acc + *t * Rational64::from_integer(side_len as i64))
    }
}

pub fn signature_of(profile: &BoundaryProfile, domain: &HexDomain) -> Signature {
    let l = domain.side_len();
    let mut tilts = [Rational64::from_integer(0); 6];
    for (i, t) in tilts.iter_mut().enumerate() {
        let dh = profile.heights[(i + 1) * l] - profile.heights[i * l];
        *t = Rational64::new(dh, l as i64);
    }
    Signature { tilts }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightOrder {
    Equal,
    FirstMajors,
    SecondMajors,
    Incomparable,
}

/// Pointwise comparison of the height fields of two fill-ins of one boundary.
pub fn compare(domain: &HexDomain, c1: &Configuration, c2: &Configuration) -> Result<HeightOrder> {
    if !c1.agrees_with(domain, &c2.boundary(domain)) {
        return Err(IceError::invalid("configurations have different boundary arrows"));
    }
    let (h1, h2) = (height(domain, c1)?, height(domain, c2)?);
    let ge = h1.values.iter().zip(&h2.values).all(|(a, b)| a >= b);
    let le = h1.values.iter().zip(&h2.values).all(|(a, b)| a <= b);
    Ok(match (ge, le) {
        (true, true) => HeightOrder::Equal,
        (true, false) => HeightOrder::FirstMajors,
        (false, true) => HeightOrder::SecondMajors,
        (false, false) => HeightOrder::Incomparable,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Max,
    Min,
}

/// The greatest (or least) fill-in of `config`'s boundary in the height order.
///
/// Reverses off-boundary counterclockwise 1-cycles (clockwise for `Min`) until
/// none are left. Each reversal moves one face center by 2 in the chosen
/// direction and the height is bounded, so this terminates.
pub fn extremal(domain: &HexDomain, config: &Configuration, dir: Extremum) -> Result<Configuration> {
    config.check_domain(domain)?;
    let want = match dir {
        Extremum::Max => crate::dynamics::Orientation::Ccw,
        Extremum::Min => crate::dynamics::Orientation::Cw,
    };
    let mut c = config.clone();
    let mut queue: VecDeque<usize> = (0..domain.faces.len()).filter(|&f| domain.faces[f].off_boundary).collect();
    let mut queued = vec![false; domain.faces.len()];
    for &f in &queue {
        queued[f] = true;
    }
    // faces sharing a vertex with a flipped face may change status
    let mut vertex_faces = vec![Vec::new(); domain.vertices.len()];
    for f in &domain.faces {
        for &e in &f.edges {
            vertex_faces[domain.edges[e].tail].push(f.id);
            vertex_faces[domain.edges[e].head].push(f.id);
        }
    }
    for l in &mut vertex_faces {
        l.sort_unstable();
        l.dedup();
    }
    while let Some(f) = queue.pop_front() {
        queued[f] = false;
        if crate::dynamics::face_orientation(domain, &c, f) != Some(want) {
            continue;
        }
        for &e in &domain.faces[f].edges {
            c.toggle(e);
        }
        for &e in &domain.faces[f].edges {
            for v in [domain.edges[e].tail, domain.edges[e].head] {
                for &g in &vertex_faces[v] {
                    if domain.faces[g].off_boundary && !queued[g] {
                        queued[g] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
    }
    Ok(c)
}
