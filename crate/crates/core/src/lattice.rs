//! Hexagonal domains on the triangular, Kagome and 3.4.6.4 lattices.
//!
//! All three lattices are realized as subgraphs of the triangular lattice
//! with unit spacing. A lattice point is an integer pair `(a, b)` standing
//! for `a * (1, 0) + b * (1/2, sqrt(3)/2)`.
//!
//! * Kagome: drop every point with both coordinates even. The dropped points
//!   are the centers of the 1-hexagons.
//! * 3.4.6.4: drop the index-7 sublattice spanned by `(2, 1)` and `(-1, 3)`
//!   (1-hexagon centers), and from every remaining point `u` drop the edge
//!   towards `u + rot60(u - center(u))`. The dropped edges are the short
//!   diagonals of the 1-lozenges, so squares are drawn as 60 degree lozenges.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{IceError, Result};

/// The six unit steps of the triangular lattice, counterclockwise from angle 0.
pub const STEPS: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Upper bound on the number of domain vertices `build_domain` agrees to allocate.
pub const MAX_VERTICES: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeKind {
    Triangular,
    Kagome,
    T3464,
}

impl LatticeKind {
    pub const ALL: [LatticeKind; 3] = [LatticeKind::Triangular, LatticeKind::Kagome, LatticeKind::T3464];

    pub fn degree(self) -> usize {
        match self {
            LatticeKind::Triangular => 6,
            LatticeKind::Kagome | LatticeKind::T3464 => 4,
        }
    }

    pub fn families(self) -> &'static [FlipFamily] {
        use FlipFamily::*;
        match self {
            LatticeKind::Triangular => &[EvenTriangle, OddTriangle],
            LatticeKind::Kagome => &[EvenTriangle, OddTriangle, Hexagon1],
            LatticeKind::T3464 => &[EvenTriangle, OddTriangle, LozengeStraight, LozengeLeft, LozengeRight, Hexagon1],
        }
    }

    pub fn supports(self, family: FlipFamily) -> bool {
        self.families().contains(&family)
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Triangular => "tri",
            LatticeKind::Kagome => "kagome",
            LatticeKind::T3464 => "3464",
        }
    }

    /// Whether the lattice point is a vertex of this lattice.
    pub fn is_site(self, p: (i32, i32)) -> bool {
        match self {
            LatticeKind::Triangular => true,
            LatticeKind::Kagome => !(p.0.rem_euclid(2) == 0 && p.1.rem_euclid(2) == 0),
            LatticeKind::T3464 => !is_3464_center(p),
        }
    }

    /// Whether the lattice points `u` and `v` (unit distance apart, both sites)
    /// are joined by an edge of this lattice.
    pub fn has_edge(self, u: (i32, i32), v: (i32, i32)) -> bool {
        if !self.is_site(u) || !self.is_site(v) {
            return false;
        }
        match self {
            LatticeKind::Triangular | LatticeKind::Kagome => true,
            LatticeKind::T3464 => lozenge_diagonal_partner(u) != v,
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeKind {
    type Err = IceError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tri" | "triangular" => Ok(LatticeKind::Triangular),
            "kagome" | "kag" => Ok(LatticeKind::Kagome),
            "3464" | "t3464" | "3.4.6.4" => Ok(LatticeKind::T3464),
            other => Err(IceError::invalid(format!("unknown lattice `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlipFamily {
    EvenTriangle,
    OddTriangle,
    Hexagon1,
    LozengeLeft,
    LozengeRight,
    LozengeStraight,
}

impl FlipFamily {
    pub const ALL: [FlipFamily; 6] = [
        FlipFamily::EvenTriangle,
        FlipFamily::OddTriangle,
        FlipFamily::Hexagon1,
        FlipFamily::LozengeLeft,
        FlipFamily::LozengeRight,
        FlipFamily::LozengeStraight,
    ];

    /// Short code used in schedules and text formats (`fe`, `fo`, `fh`, `fl`, `fr`, `fs`).
    pub fn code(self) -> &'static str {
        match self {
            FlipFamily::EvenTriangle => "fe",
            FlipFamily::OddTriangle => "fo",
            FlipFamily::Hexagon1 => "fh",
            FlipFamily::LozengeLeft => "fl",
            FlipFamily::LozengeRight => "fr",
            FlipFamily::LozengeStraight => "fs",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_triangle(self) -> bool {
        matches!(self, FlipFamily::EvenTriangle | FlipFamily::OddTriangle)
    }

    pub fn is_lozenge(self) -> bool {
        matches!(self, FlipFamily::LozengeLeft | FlipFamily::LozengeRight | FlipFamily::LozengeStraight)
    }
}

impl fmt::Display for FlipFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for FlipFamily {
    type Err = IceError;

    fn from_str(s: &str) -> Result<Self> {
        FlipFamily::ALL
            .iter()
            .copied()
            .find(|f| f.code() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| IceError::invalid(format!("unknown flip family `{s}`")))
    }
}

pub fn position(p: (i32, i32)) -> [f64; 2] {
    [p.0 as f64 + 0.5 * p.1 as f64, SQRT3_2 * p.1 as f64]
}

/// Hexagonal (graph) distance on the triangular lattice.
pub fn hex_dist(p: (i32, i32)) -> i32 {
    p.0.abs().max(p.1.abs()).max((p.0 + p.1).abs())
}

/// 60 degree counterclockwise rotation about the origin.
pub fn rot60(p: (i32, i32)) -> (i32, i32) {
    (-p.1, p.0 + p.1)
}

fn add(p: (i32, i32), q: (i32, i32)) -> (i32, i32) {
    (p.0 + q.0, p.1 + q.1)
}

fn sub(p: (i32, i32), q: (i32, i32)) -> (i32, i32) {
    (p.0 - q.0, p.1 - q.1)
}

pub(crate) fn is_3464_center(p: (i32, i32)) -> bool {
    (3 * p.0 + p.1).rem_euclid(7) == 0
}

/// The 1-hexagon center adjacent to a 3.4.6.4 site.
pub(crate) fn center_3464(p: (i32, i32)) -> (i32, i32) {
    STEPS
        .iter()
        .map(|&s| add(p, s))
        .find(|&q| is_3464_center(q))
        .expect("every 3.4.6.4 site touches exactly one hexagon center")
}

fn lozenge_diagonal_partner(u: (i32, i32)) -> (i32, i32) {
    let d = sub(u, center_3464(u));
    add(u, rot60(d))
}

/// Direction class (0, 1, 2 for angles 0, 60, 120 degrees) and canonical
/// orientation of the unit step `v - u`. Returns `(class, u_is_tail)`.
pub(crate) fn dir_class(u: (i32, i32), v: (i32, i32)) -> (u8, bool) {
    let d = sub(v, u);
    let k = STEPS.iter().position(|&s| s == d).expect("points are not neighbours");
    if k < 3 {
        (k as u8, true)
    } else {
        ((k - 3) as u8, false)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: usize,
    pub point: (i32, i32),
    pub cell: (i32, i32),
    pub basis: u8,
    pub pos: [f64; 2],
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    pub dirclass: u8,
    pub is_boundary: bool,
    /// Dual vertex (lattice face) on the left of tail -> head.
    pub left: usize,
    /// Dual vertex on the right of tail -> head.
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    pub id: usize,
    pub family: FlipFamily,
    /// Edges in counterclockwise order.
    pub edges: Vec<usize>,
    /// `sense[i]` is true when counterclockwise traversal follows the canonical
    /// direction of `edges[i]`.
    pub sense: Vec<bool>,
    pub centroid: [f64; 2],
    /// True when the face contains no boundary arrow.
    pub off_boundary: bool,
    /// The dual vertex sitting at the center of this face.
    pub dual: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualVertex {
    pub id: usize,
    pub centroid: [f64; 2],
    pub family: FlipFamily,
    /// The complete face of the domain this dual vertex is the center of, if any.
    pub face: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualCover {
    pub vertices: Vec<DualVertex>,
    pub base_point: usize,
    /// Boundary arrows in the order the boundary loop crosses them.
    pub loop_edges: Vec<usize>,
    /// `loop_faces[i]` is the dual vertex before crossing `loop_edges[i]`;
    /// the loop is closed so `loop_faces[0]` is also reached at the end.
    pub loop_faces: Vec<usize>,
    /// For each loop step: true when the step goes from the right face of
    /// the crossed edge to its left face.
    pub loop_right_to_left: Vec<bool>,
}

/// One entry of the counterclockwise boundary listing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryEntry {
    pub edge: usize,
    pub side: usize,
    pub position: usize,
}

#[derive(Debug, Clone)]
pub struct HexDomain {
    pub kind: LatticeKind,
    pub n: usize,
    /// Hex distance radius of the interior vertex set.
    pub radius: i32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub dual: DualCover,
    pub interior_vertices: Vec<usize>,
    /// Incident `(edge, vertex_is_tail)` pairs per vertex.
    pub incidence: Vec<Vec<(usize, bool)>>,
    family_faces: Vec<Vec<usize>>,
    point_index: HashMap<(i32, i32), usize>,
}

/// A lattice face as a counterclockwise cycle of lattice points.
#[derive(Debug, Clone)]
struct RawFace {
    family: FlipFamily,
    points: Vec<(i32, i32)>,
}

impl RawFace {
    fn centroid(&self) -> [f64; 2] {
        let k = self.points.len() as f64;
        let (sx, sy) = self.points.iter().map(|&p| position(p)).fold((0.0, 0.0), |acc, q| (acc.0 + q[0], acc.1 + q[1]));
        [sx / k, sy / k]
    }

    fn key(&self) -> (i32, i32) {
        // lowest point in row-major order; unique per face within a family
        self.points.iter().map(|p| (p.1, p.0)).min().unwrap()
    }
}

fn lattice_faces(kind: LatticeKind, window: i32) -> Vec<RawFace> {
    let mut out = Vec::new();
    let w = window;
    for b in -w..=w {
        for a in -w..=w {
            let p = (a, b);
            if hex_dist(p) > w {
                continue;
            }
            let up = vec![p, add(p, (1, 0)), add(p, (0, 1))];
            let down = vec![add(p, (1, 0)), add(p, (1, 1)), add(p, (0, 1))];
            for (tri, fam) in [(up, FlipFamily::EvenTriangle), (down, FlipFamily::OddTriangle)] {
                let ok = tri.iter().all(|&q| kind.is_site(q))
                    && (0..3).all(|i| kind.has_edge(tri[i], tri[(i + 1) % 3]));
                if ok {
                    out.push(RawFace { family: fam, points: tri });
                }
            }
            match kind {
                LatticeKind::Triangular => {}
                LatticeKind::Kagome => {
                    if !kind.is_site(p) {
                        out.push(RawFace { family: FlipFamily::Hexagon1, points: STEPS.iter().map(|&s| add(p, s)).collect() });
                    }
                }
                LatticeKind::T3464 => {
                    if is_3464_center(p) {
                        out.push(RawFace { family: FlipFamily::Hexagon1, points: STEPS.iter().map(|&s| add(p, s)).collect() });
                    } else {
                        let q = lozenge_diagonal_partner(p);
                        let (class, p_is_tail) = dir_class(p, q);
                        if p_is_tail {
                            // the two common neighbours of p and q close the lozenge
                            let k = class as usize;
                            let right = add(p, STEPS[(k + 5) % 6]);
                            let left = add(p, STEPS[(k + 1) % 6]);
                            let family = match class {
                                0 => FlipFamily::LozengeStraight,
                                1 => FlipFamily::LozengeLeft,
                                _ => FlipFamily::LozengeRight,
                            };
                            out.push(RawFace { family, points: vec![p, right, q, left] });
                        }
                    }
                }
            }
        }
    }
    out
}

fn interior_radius(kind: LatticeKind, n: usize) -> i32 {
    match kind {
        LatticeKind::Triangular => n as i32 / 2 - 1,
        LatticeKind::Kagome | LatticeKind::T3464 => n as i32 - 1,
    }
}

fn cell_and_basis(kind: LatticeKind, p: (i32, i32)) -> ((i32, i32), u8) {
    match kind {
        LatticeKind::Triangular => (p, 0),
        LatticeKind::Kagome => {
            let cell = (p.0.div_euclid(2), p.1.div_euclid(2));
            let basis = match (p.0.rem_euclid(2), p.1.rem_euclid(2)) {
                (1, 0) => 0,
                (0, 1) => 1,
                _ => 2,
            };
            (cell, basis)
        }
        LatticeKind::T3464 => {
            let c = center_3464(p);
            let cell = ((3 * c.0 + c.1).div_euclid(7), (2 * c.1 - c.0).div_euclid(7));
            let d = sub(p, c);
            let basis = STEPS.iter().position(|&s| s == d).unwrap() as u8;
            (cell, basis)
        }
    }
}

/// Builds the N-hexagon of the given lattice. `n` must be even and positive.
pub fn build_domain(kind: LatticeKind, n: usize) -> Result<HexDomain> {
    if n < 2 || n % 2 != 0 {
        return Err(IceError::invalid(format!("N must be an even integer >= 2, got {n}")));
    }
    let r = interior_radius(kind, n);
    let approx_vertices = 3 * (r as usize + 2) * (r as usize + 2);
    if approx_vertices > MAX_VERTICES {
        return Err(IceError::Capacity(format!("N = {n} needs about {approx_vertices} vertices (limit {MAX_VERTICES})")));
    }

    // vertices: interior sites plus their lattice neighbours
    let mut points: Vec<((i32, i32), bool)> = Vec::new();
    for b in -(r + 1)..=(r + 1) {
        for a in -(r + 1)..=(r + 1) {
            let p = (a, b);
            if !kind.is_site(p) {
                continue;
            }
            let d = hex_dist(p);
            if d <= r {
                points.push((p, true));
            } else if d == r + 1 {
                let touches = STEPS.iter().any(|&s| {
                    let q = add(p, s);
                    hex_dist(q) <= r && kind.has_edge(p, q)
                });
                if touches {
                    points.push((p, false));
                }
            }
        }
    }
    points.sort_by_key(|&(p, _)| (p.1, p.0));
    let point_index: HashMap<(i32, i32), usize> = points.iter().enumerate().map(|(i, &(p, _))| (p, i)).collect();
    let vertices: Vec<Vertex> = points
        .iter()
        .enumerate()
        .map(|(id, &(p, interior))| {
            let (cell, basis) = cell_and_basis(kind, p);
            Vertex { id, point: p, cell, basis, pos: position(p), interior }
        })
        .collect();

    // edges with at least one interior endpoint, keyed by canonical (tail, head)
    let mut raw_edges: Vec<(usize, usize, u8)> = Vec::new();
    for v in &vertices {
        for k in 0..3 {
            let q = add(v.point, STEPS[k]);
            let Some(&h) = point_index.get(&q) else { continue };
            if !(v.interior || vertices[h].interior) || !kind.has_edge(v.point, q) {
                continue;
            }
            raw_edges.push((v.id, h, k as u8));
        }
    }
    raw_edges.sort_by_key(|&(t, _, c)| (t, c));
    let edge_index: HashMap<(usize, usize), usize> = raw_edges.iter().enumerate().map(|(i, &(t, h, _))| ((t, h), i)).collect();

    // lattice faces touching any domain edge make up the dual cover
    let raw_faces = lattice_faces(kind, r + 3);
    let mut dual_raw: Vec<(RawFace, Vec<Option<(usize, bool)>>)> = Vec::new();
    for f in raw_faces {
        let k = f.points.len();
        let mut cyc = Vec::with_capacity(k);
        let mut touches = false;
        for i in 0..k {
            let (u, v) = (f.points[i], f.points[(i + 1) % k]);
            let hit = match (point_index.get(&u), point_index.get(&v)) {
                (Some(&iu), Some(&iv)) => {
                    if let Some(&e) = edge_index.get(&(iu, iv)) {
                        Some((e, true))
                    } else {
                        edge_index.get(&(iv, iu)).map(|&e| (e, false))
                    }
                }
                _ => None,
            };
            touches |= hit.is_some();
            cyc.push(hit);
        }
        if touches {
            dual_raw.push((f, cyc));
        }
    }
    dual_raw.sort_by_key(|(f, _)| (f.family, f.key()));

    let mut left = vec![usize::MAX; raw_edges.len()];
    let mut right = vec![usize::MAX; raw_edges.len()];
    let mut faces = Vec::new();
    let mut dual_vertices = Vec::with_capacity(dual_raw.len());
    let mut family_faces = vec![Vec::new(); FlipFamily::ALL.len()];
    for (did, (f, cyc)) in dual_raw.iter().enumerate() {
        for &(e, sense) in cyc.iter().flatten() {
            // counterclockwise traversal keeps the face on its left
            if sense {
                left[e] = did;
            } else {
                right[e] = did;
            }
        }
        let complete = cyc.iter().all(Option::is_some);
        let face = if complete {
            let id = faces.len();
            let edges: Vec<usize> = cyc.iter().map(|c| c.unwrap().0).collect();
            let sense: Vec<bool> = cyc.iter().map(|c| c.unwrap().1).collect();
            family_faces[f.family.index()].push(id);
            faces.push(Face { id, family: f.family, edges, sense, centroid: f.centroid(), off_boundary: true, dual: did });
            Some(id)
        } else {
            None
        };
        dual_vertices.push(DualVertex { id: did, centroid: f.centroid(), family: f.family, face });
    }

    let mut edges: Vec<Edge> = raw_edges
        .iter()
        .enumerate()
        .map(|(id, &(tail, head, dirclass))| Edge {
            id,
            tail,
            head,
            dirclass,
            is_boundary: vertices[tail].interior != vertices[head].interior,
            left: left[id],
            right: right[id],
        })
        .collect();
    if let Some(e) = edges.iter().find(|e| e.left == usize::MAX || e.right == usize::MAX) {
        return Err(IceError::InvariantViolation(format!("edge {} lacks an adjacent lattice face", e.id)));
    }
    for f in &mut faces {
        f.off_boundary = f.edges.iter().all(|&e| !edges[e].is_boundary);
    }

    let mut incidence = vec![Vec::new(); vertices.len()];
    for e in &edges {
        incidence[e.tail].push((e.id, true));
        incidence[e.head].push((e.id, false));
    }
    let interior_vertices: Vec<usize> = vertices.iter().filter(|v| v.interior).map(|v| v.id).collect();

    let dual = build_boundary_loop(&vertices, &mut edges, dual_vertices)?;

    Ok(HexDomain { kind, n, radius: r, vertices, edges, faces, dual, interior_vertices, incidence, family_faces, point_index })
}

fn build_boundary_loop(vertices: &[Vertex], edges: &mut [Edge], dual_vertices: Vec<DualVertex>) -> Result<DualCover> {
    // a loop step crosses a boundary arrow from the face on the right of the
    // outward direction to the face on its left
    let mut succ: BTreeMap<usize, (usize, usize, bool)> = BTreeMap::new();
    for e in edges.iter().filter(|e| e.is_boundary) {
        let tail_inside = vertices[e.tail].interior;
        let (from, to, r2l) = if tail_inside { (e.right, e.left, true) } else { (e.left, e.right, false) };
        if succ.insert(from, (e.id, to, r2l)).is_some() {
            return Err(IceError::InvariantViolation(format!("boundary loop visits dual vertex {from} twice")));
        }
    }
    let eps = 1e-9;
    let base = *succ
        .keys()
        .min_by(|&&a, &&b| {
            let (pa, pb) = (dual_vertices[a].centroid, dual_vertices[b].centroid);
            if (pa[0] - pb[0]).abs() > eps {
                pa[0].partial_cmp(&pb[0]).unwrap()
            } else {
                pb[1].partial_cmp(&pa[1]).unwrap()
            }
        })
        .ok_or_else(|| IceError::InvariantViolation("domain has no boundary".into()))?;

    let mut loop_edges = Vec::with_capacity(succ.len());
    let mut loop_faces = Vec::with_capacity(succ.len());
    let mut loop_r2l = Vec::with_capacity(succ.len());
    let mut cur = base;
    loop {
        let &(e, next, r2l) = succ
            .get(&cur)
            .ok_or_else(|| IceError::InvariantViolation(format!("boundary loop is open at dual vertex {cur}")))?;
        loop_faces.push(cur);
        loop_edges.push(e);
        loop_r2l.push(r2l);
        cur = next;
        if cur == base {
            break;
        }
        if loop_edges.len() > succ.len() {
            return Err(IceError::InvariantViolation("boundary loop does not close".into()));
        }
    }
    if loop_edges.len() != succ.len() {
        return Err(IceError::InvariantViolation(format!(
            "boundary loop crosses {} of {} boundary arrows",
            loop_edges.len(),
            succ.len()
        )));
    }
    Ok(DualCover { vertices: dual_vertices, base_point: base, loop_edges, loop_faces, loop_right_to_left: loop_r2l })
}

impl HexDomain {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn boundary_count(&self) -> usize {
        self.dual.loop_edges.len()
    }

    /// Number of dual steps on each of the six sides of the boundary loop.
    pub fn side_len(&self) -> usize {
        self.boundary_count() / 6
    }

    pub fn vertex_at(&self, p: (i32, i32)) -> Option<usize> {
        self.point_index.get(&p).copied()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.incidence[u]
            .iter()
            .map(|&(e, _)| e)
            .find(|&e| self.edges[e].tail == v || self.edges[e].head == v)
    }

    /// Faces of one flip family, ordered by id.
    pub fn faces_by_family(&self, family: FlipFamily) -> Result<Vec<&Face>> {
        if !self.kind.supports(family) {
            return Err(IceError::invalid(format!("family {family} does not occur on the {} lattice", self.kind)));
        }
        Ok(self.family_face_ids(family).iter().map(|&i| &self.faces[i]).collect())
    }

    pub fn family_face_ids(&self, family: FlipFamily) -> &[usize] {
        &self.family_faces[family.index()]
    }

    /// Boundary arrows counterclockwise from the base point, split into six
    /// sides of equal length.
    pub fn boundary_edges(&self) -> Vec<BoundaryEntry> {
        let l = self.side_len().max(1);
        self.dual
            .loop_edges
            .iter()
            .enumerate()
            .map(|(i, &edge)| BoundaryEntry { edge, side: i / l, position: i % l })
            .collect()
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| !e.is_boundary)
    }

    /// Center of the hexagon in the embedding (the origin).
    pub fn center(&self) -> [f64; 2] {
        [0.0, 0.0]
    }

    /// Corner points of the hexagon formed by the outermost vertex ring,
    /// counterclockwise from the leftmost one.
    pub fn corners(&self) -> [[f64; 2]; 6] {
        let r = self.radius + 1;
        let mut out = [[0.0; 2]; 6];
        for (i, k) in [3usize, 4, 5, 0, 1, 2].iter().enumerate() {
            let s = STEPS[*k];
            out[i] = position((s.0 * r, s.1 * r));
        }
        out
    }

    /// Text export: one `V`, `E` or `F` record per element.
    pub fn export(&self) -> String {
        let mut s = format!("ICEDOM {} {}\n", self.kind, self.n);
        for v in &self.vertices {
            s.push_str(&format!("V {} {} {} {} {:.6} {:.6}\n", v.id, v.cell.0, v.cell.1, v.basis, v.pos[0], v.pos[1]));
        }
        for e in &self.edges {
            s.push_str(&format!("E {} {} {} {} {}\n", e.id, e.tail, e.head, e.dirclass, if e.is_boundary { 'B' } else { 'I' }));
        }
        for f in &self.faces {
            s.push_str(&format!("F {} {}", f.id, f.family));
            for e in &f.edges {
                s.push_str(&format!(" {e}"));
            }
            s.push('\n');
        }
        s
    }
}
