//! Post-processing: heatmaps, frozen/temperate demarcation, flip ratios,
//! 3.4.6.4 bounds and entropy estimates.

use std::collections::BTreeSet;
use std::f64::consts::LN_2;
use std::io::{self, Write};

use crate::boundary::{from_signature, quadrant_of, quadrant_range, seed_config, SeedRecipe};
use crate::config::{boundary_profile, BoundarySpec, Configuration};
use crate::dynamics::{face_orientation, winding_number, FlipStats};
use crate::error::{IceError, Result};
use crate::exact::{entropy_of, enumerate};
use crate::lattice::{build_domain, FlipFamily, HexDomain, LatticeKind, STEPS};

/// Grey level of the hexagon background and of pixels outside it.
pub const BACKGROUND: u8 = 210;
pub const OUTSIDE: u8 = 255;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Heatmap {
    pub width: usize,
    pub height: usize,
    /// Row-major grey levels, row 0 at the top.
    pub values: Vec<u8>,
}

impl Heatmap {
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.values[y * self.width + x]
    }

    /// Binary (`P5`) or plain (`P2`) portable graymap.
    pub fn write_pgm(&self, w: &mut impl Write, binary: bool) -> io::Result<()> {
        if binary {
            write!(w, "P5\n{} {}\n255\n", self.width, self.height)?;
            w.write_all(&self.values)
        } else {
            write!(w, "P2\n{} {}\n255\n", self.width, self.height)?;
            for row in self.values.chunks(self.width) {
                let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(w, "{}", line.join(" "))?;
            }
            Ok(())
        }
    }

    pub fn to_pgm(&self, binary: bool) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_pgm(&mut out, binary).expect("writing to a Vec cannot fail");
        out
    }
}

/// Renders per-face flip counts: each face adds its count to the pixel under
/// its centroid and the totals are scaled linearly so the largest is black.
/// Only faces of `families` are drawn (all when `None`).
pub fn heatmap(stats: &FlipStats, domain: &HexDomain, pixels_per_unit: f64, families: Option<&[FlipFamily]>) -> Result<Heatmap> {
    if stats.window_end <= stats.window_start {
        return Err(IceError::invalid("flip statistics have an empty window"));
    }
    if !(pixels_per_unit > 0.0) {
        return Err(IceError::invalid("pixels per unit must be positive"));
    }
    let corners = domain.corners();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for c in &corners {
        x0 = x0.min(c[0]);
        x1 = x1.max(c[0]);
        y0 = y0.min(c[1]);
        y1 = y1.max(c[1]);
    }
    let width = ((x1 - x0) * pixels_per_unit).ceil() as usize + 1;
    let height = ((y1 - y0) * pixels_per_unit).ceil() as usize + 1;
    let to_px = |p: [f64; 2]| -> (usize, usize) {
        let x = ((p[0] - x0) * pixels_per_unit).round().clamp(0.0, (width - 1) as f64) as usize;
        let y = ((y1 - p[1]) * pixels_per_unit).round().clamp(0.0, (height - 1) as f64) as usize;
        (x, y)
    };
    let mut acc = vec![0u64; width * height];
    for f in &domain.faces {
        if families.is_some_and(|fs| !fs.contains(&f.family)) {
            continue;
        }
        let (x, y) = to_px(f.centroid);
        acc[y * width + x] += stats.per_face[f.id];
    }
    let max = acc.iter().copied().max().unwrap_or(0);
    let poly: Vec<[f64; 2]> = corners.to_vec();
    let mut values = vec![OUTSIDE; width * height];
    for y in 0..height {
        for x in 0..width {
            let i = y * width + x;
            let p = [x0 + x as f64 / pixels_per_unit, y1 - y as f64 / pixels_per_unit];
            values[i] = if acc[i] > 0 {
                // integer arithmetic keeps the scaling exact under count doubling
                (BACKGROUND as u64 - (BACKGROUND as u64 * acc[i] + max / 2) / max) as u8
            } else if winding_number(&poly, p) != 0 {
                BACKGROUND
            } else {
                OUTSIDE
            };
        }
    }
    Ok(Heatmap { width, height, values })
}

/// Off-boundary faces that share an edge, per face.
fn face_adjacency(domain: &HexDomain) -> Vec<Vec<usize>> {
    let mut by_edge = vec![Vec::new(); domain.edge_count()];
    for f in domain.faces.iter().filter(|f| f.off_boundary) {
        for &e in &f.edges {
            by_edge[e].push(f.id);
        }
    }
    let mut adj = vec![Vec::new(); domain.faces.len()];
    for fs in &by_edge {
        for &a in fs {
            for &b in fs {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    adj
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemarcationReport {
    pub frozen: Vec<usize>,
    pub temperate: Vec<usize>,
    /// Size of the frozen component touching each hexagon corner (0 when the
    /// face nearest the corner is active), counterclockwise from the leftmost corner.
    pub corner_frozen: [usize; 6],
    pub frozen_fraction: f64,
}

/// Splits off-boundary faces into frozen (no flip in the window) and temperate.
pub fn demarcation(stats: &FlipStats, domain: &HexDomain) -> Result<DemarcationReport> {
    if stats.window_end <= stats.window_start {
        return Err(IceError::invalid("flip statistics have an empty window"));
    }
    let (frozen, temperate): (Vec<usize>, Vec<usize>) =
        domain.faces.iter().filter(|f| f.off_boundary).map(|f| f.id).partition(|&f| stats.per_face[f] == 0);
    let is_frozen: Vec<bool> = (0..domain.faces.len()).map(|f| domain.faces[f].off_boundary && stats.per_face[f] == 0).collect();
    let adj = face_adjacency(domain);
    let mut corner_frozen = [0; 6];
    for (k, c) in domain.corners().iter().enumerate() {
        let nearest = domain
            .faces
            .iter()
            .filter(|f| f.off_boundary)
            .min_by(|a, b| dist2(a.centroid, *c).total_cmp(&dist2(b.centroid, *c)))
            .map(|f| f.id);
        let Some(start) = nearest.filter(|&f| is_frozen[f]) else { continue };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if is_frozen[w] && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        corner_frozen[k] = seen.len();
    }
    let total = frozen.len() + temperate.len();
    let frozen_fraction = if total == 0 { 0.0 } else { frozen.len() as f64 / total as f64 };
    Ok(DemarcationReport { frozen, temperate, corner_frozen, frozen_fraction })
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)
}

/// Whether `p` lies in the triangle cut off at hexagon corner `k` whose two
/// legs run `side` lattice units along the adjacent hexagon sides.
pub fn in_corner_triangle(domain: &HexDomain, k: usize, side: f64, p: [f64; 2]) -> bool {
    let c = domain.corners();
    let (a, prev, next) = (c[k], c[(k + 5) % 6], c[(k + 1) % 6]);
    let len = dist2(a, next).sqrt();
    let t = side / len;
    let tri = [a, [a[0] + (next[0] - a[0]) * t, a[1] + (next[1] - a[1]) * t], [a[0] + (prev[0] - a[0]) * t, a[1] + (prev[1] - a[1]) * t]];
    winding_number(&tri, p) != 0
}

/// Off-boundary faces whose centroid lies within `radius` of the centre.
pub fn faces_within(domain: &HexDomain, radius: f64) -> Vec<usize> {
    let c = domain.center();
    domain.faces.iter().filter(|f| f.off_boundary && dist2(f.centroid, c) <= radius * radius).map(|f| f.id).collect()
}

/// Mean per-face triangle flips over mean per-face 1-hexagon flips, for
/// faces within `center_radius` of the centre.
pub fn flip_ratio(stats: &FlipStats, domain: &HexDomain, center_radius: f64) -> Result<f64> {
    let faces = faces_within(domain, center_radius);
    let mean = |pred: fn(FlipFamily) -> bool| -> (f64, usize) {
        let sel: Vec<u64> = faces.iter().filter(|&&f| pred(domain.faces[f].family)).map(|&f| stats.per_face[f]).collect();
        (sel.iter().sum::<u64>() as f64 / sel.len().max(1) as f64, sel.len())
    };
    let (tri, nt) = mean(FlipFamily::is_triangle);
    let (hex, nh) = mean(|f| f == FlipFamily::Hexagon1);
    if nt == 0 || nh == 0 || hex == 0.0 {
        return Err(IceError::invalid("no 1-hexagon activity in the centre region; the ratio is undefined"));
    }
    Ok(tri / hex)
}

/// Default centre radius for [`flip_ratio`]: N/6 lattice units.
pub fn default_center_radius(domain: &HexDomain) -> f64 {
    domain.n as f64 / 6.0
}

/// Triangle to 1-hexagon flip ratio if every arrow were an independent fair
/// coin: a triangle is directed with probability 2/2^3, a hexagon with 2/2^6.
pub fn bernoulli_flip_ratio(triangle_checks: usize, hexagon_checks: usize) -> f64 {
    (triangle_checks as f64 * 0.25) / (hexagon_checks as f64 / 32.0)
}

/// Mean, variance and coefficient of variation of per-face counts over off-boundary faces.
pub fn homogeneity(stats: &FlipStats, domain: &HexDomain) -> (f64, f64, f64) {
    let xs: Vec<f64> = domain.faces.iter().filter(|f| f.off_boundary).map(|f| stats.per_face[f.id] as f64).collect();
    let n = xs.len().max(1) as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let cv = if mean > 0.0 { var.sqrt() / mean } else { 0.0 };
    (mean, var, cv)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockViolation {
    pub side: usize,
    pub start: usize,
    pub len: usize,
    pub dh: i64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub blocks_checked: usize,
    pub periodic_blocks: usize,
    pub long_blocks: usize,
    /// Largest |Δh| / bound seen over checked blocks.
    pub worst_ratio: f64,
    pub violations: Vec<BlockViolation>,
    /// Unidirectional and total off-boundary 1-triangles plus 1-lozenges.
    pub density: Option<(usize, usize)>,
    /// Ceiling on the absolute boundary tilt in the scaling limit.
    pub tilt_ceiling: f64,
}

impl BoundsReport {
    pub fn density_fraction(&self) -> Option<f64> {
        self.density.map(|(d, t)| d as f64 / t.max(1) as f64)
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.density.is_none_or(|(d, t)| 7 * d >= t)
    }
}

fn block_is_periodic8(steps: &[i8]) -> bool {
    (8..steps.len()).all(|i| steps[i] == steps[i - 8])
}

/// Height-change bounds over n-blocks of boundary arrows along each side,
/// and (given a configuration) the density of unidirectional 1-triangles and
/// 1-lozenges.
pub fn check_3464_bounds(domain: &HexDomain, boundary: &BoundarySpec, config: Option<&Configuration>) -> Result<BoundsReport> {
    if domain.kind != LatticeKind::T3464 {
        return Err(IceError::invalid(format!("bounds apply to the 3.4.6.4 lattice, not {}", domain.kind)));
    }
    let profile = boundary_profile(domain, boundary)?;
    let steps: Vec<i8> = profile.heights.windows(2).map(|w| (w[1] - w[0]) as i8).collect();
    let l = domain.side_len();
    let mut report = BoundsReport {
        blocks_checked: 0,
        periodic_blocks: 0,
        long_blocks: 0,
        worst_ratio: 0.0,
        violations: Vec::new(),
        density: None,
        tilt_ceiling: 13.0 / 15.0,
    };
    for side in 0..6 {
        let s = &steps[side * l..(side + 1) * l];
        for start in 0..l {
            let mut dh = 0i64;
            for end in start..l {
                dh += s[end] as i64;
                let n = end - start + 1;
                let block = &s[start..=end];
                let mut bounds = Vec::new();
                if block_is_periodic8(block) {
                    report.periodic_blocks += 1;
                    bounds.push((3 * n + 7) as f64 / 4.0);
                }
                if n >= 15 {
                    report.long_blocks += 1;
                    bounds.push((13 * n + 28) as f64 / 15.0);
                }
                report.blocks_checked += 1;
                for bound in bounds {
                    report.worst_ratio = report.worst_ratio.max(dh.abs() as f64 / bound);
                    if dh.abs() as f64 > bound {
                        report.violations.push(BlockViolation { side, start, len: n, dh, bound });
                    }
                }
            }
        }
    }
    if let Some(c) = config {
        c.check_domain(domain)?;
        let faces: Vec<usize> =
            domain.faces.iter().filter(|f| f.off_boundary && (f.family.is_triangle() || f.family.is_lozenge())).map(|f| f.id).collect();
        let directed = faces.iter().filter(|&&f| face_orientation(domain, c, f).is_some()).count();
        report.density = Some((directed, faces.len()));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YPlaquetteReport {
    pub faces: Vec<usize>,
    pub arrows: usize,
    pub constrained_vertices: usize,
    pub legal_patterns: u64,
    pub patterns_without_cycle: u64,
}

/// The Y-shaped arrangement around a 1-triangle: the triangle, its three
/// lozenges and the three triangles across them.
pub fn y_plaquette(domain: &HexDomain, center: usize) -> Result<Vec<usize>> {
    let f = &domain.faces[center];
    if domain.kind != LatticeKind::T3464 || !f.family.is_triangle() {
        return Err(IceError::invalid("a Y-plaquette is centred on a 3.4.6.4 1-triangle"));
    }
    let mut by_edge = vec![Vec::new(); domain.edge_count()];
    for g in &domain.faces {
        for &e in &g.edges {
            by_edge[e].push(g.id);
        }
    }
    let across = |face: usize, e: usize| by_edge[e].iter().copied().find(|&g| g != face);
    let mut out = vec![center];
    for &e in &f.edges {
        let loz = across(center, e).ok_or_else(|| IceError::invalid("plaquette leaves the domain"))?;
        // the lozenge edge opposite `e` shares no vertex with it
        let le = &domain.faces[loz];
        let (a, b) = (domain.edges[e].tail, domain.edges[e].head);
        let opp = le
            .edges
            .iter()
            .copied()
            .find(|&x| ![a, b].contains(&domain.edges[x].tail) && ![a, b].contains(&domain.edges[x].head))
            .ok_or_else(|| IceError::InvariantViolation("lozenge without an opposite edge".into()))?;
        let outer = across(loz, opp).ok_or_else(|| IceError::invalid("plaquette leaves the domain"))?;
        out.push(loz);
        out.push(outer);
    }
    Ok(out)
}

/// Enumerates every arrow pattern on the plaquette's edges plus the remaining
/// arrows at its lozenge vertices, under the ice rule at the central and
/// lozenge vertices, and counts patterns in which no face of the plaquette is
/// unidirectional.
pub fn y_plaquette_check(domain: &HexDomain, center: usize) -> Result<YPlaquetteReport> {
    let faces = y_plaquette(domain, center)?;
    let mut verts: BTreeSet<usize> = BTreeSet::new();
    // centre triangle and lozenge vertices carry the ice rule
    for &f in &faces[..1].iter().chain(faces.iter().skip(1).step_by(2)).copied().collect::<Vec<_>>() {
        for &e in &domain.faces[f].edges {
            verts.insert(domain.edges[e].tail);
            verts.insert(domain.edges[e].head);
        }
    }
    if verts.iter().any(|&v| !domain.vertices[v].interior) {
        return Err(IceError::invalid("plaquette touches the boundary"));
    }
    let mut edges: BTreeSet<usize> = faces.iter().flat_map(|&f| domain.faces[f].edges.iter().copied()).collect();
    for &v in &verts {
        edges.extend(domain.incidence[v].iter().map(|&(e, _)| e));
    }
    let edges: Vec<usize> = edges.into_iter().collect();
    let verts: Vec<usize> = verts.into_iter().collect();
    if edges.len() > 26 {
        return Err(IceError::InvariantViolation(format!("plaquette has {} arrows", edges.len())));
    }
    let bit = |e: usize| 1u32 << edges.binary_search(&e).expect("edge collected above");
    // out-arrow masks: bits set when the arrow leaves v, and when a cleared bit leaves v
    let stars: Vec<(u32, u32, u32)> = verts
        .iter()
        .map(|&v| {
            let (mut tail, mut head) = (0, 0);
            for &(e, t) in &domain.incidence[v] {
                if t {
                    tail |= bit(e);
                } else {
                    head |= bit(e);
                }
            }
            (tail, head, domain.incidence[v].len() as u32 / 2)
        })
        .collect();
    let cycles: Vec<(u32, u32)> = faces
        .iter()
        .map(|&f| {
            let face = &domain.faces[f];
            let all = face.edges.iter().fold(0, |m, &e| m | bit(e));
            let ccw = face.edges.iter().zip(&face.sense).filter(|(_, &s)| s).fold(0, |m, (&e, _)| m | bit(e));
            (all, ccw)
        })
        .collect();
    let mut legal = 0u64;
    let mut bad = 0u64;
    for mask in 0u32..(1u32 << edges.len()) {
        if !stars.iter().all(|&(t, h, half)| (mask & t).count_ones() + (!mask & h).count_ones() == half) {
            continue;
        }
        legal += 1;
        if cycles.iter().all(|&(all, ccw)| mask & all != ccw && mask & all != all ^ ccw) {
            bad += 1;
        }
    }
    Ok(YPlaquetteReport { faces, arrows: edges.len(), constrained_vertices: verts.len(), legal_patterns: legal, patterns_without_cycle: bad })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropySource {
    Configured,
    Fitted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEntropyEstimate {
    pub value: f64,
    pub source: EntropySource,
}

impl FreeEntropyEstimate {
    pub fn configured(value: f64) -> Result<Self> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(IceError::invalid(format!("free entropy estimate {value} must be positive")));
        }
        Ok(FreeEntropyEstimate { value, source: EntropySource::Configured })
    }
}

/// Exact entropy per arrow of the all-zero-signature boundary at each N.
pub fn zero_signature_entropies(kind: LatticeKind, ns: &[usize]) -> Result<Vec<(usize, f64)>> {
    ns.iter()
        .map(|&n| {
            let d = build_domain(kind, n)?;
            let b = from_signature(&d, [0; 6])?;
            let r = enumerate(&d, &b, 0)?;
            Ok((n, entropy_of(r.count, d.edge_count())?))
        })
        .collect()
}

/// Least-squares fit of `h_N = h - c/N` through exact entropies; returns `h`.
pub fn fit_free_entropy(points: &[(usize, f64)]) -> Result<FreeEntropyEstimate> {
    if points.len() < 2 {
        return Err(IceError::invalid("fitting needs at least two sizes"));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| 1.0 / n as f64).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, h)| h).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let value = my - slope * mx;
    if !(value > 0.0) {
        return Err(IceError::InvariantViolation(format!("fitted free entropy {value} is not positive")));
    }
    Ok(FreeEntropyEstimate { value, source: EntropySource::Fitted })
}

/// Sizes whose all-zero-signature fill-ins can be enumerated in seconds.
pub fn default_fit_sizes(kind: LatticeKind) -> &'static [usize] {
    match kind {
        LatticeKind::Triangular => &[4, 6],
        LatticeKind::Kagome => &[2, 4],
        LatticeKind::T3464 => &[2, 4],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyBracket {
    pub lower: f64,
    pub upper: f64,
    /// Arrows in the domain.
    pub arrows: usize,
    /// Off-boundary 1-triangles in the right part directed in the seed.
    pub right_triangles: usize,
    /// Larger of the even and odd counts among them.
    pub right_parity_max: usize,
    /// Arrows outside the frozen left part.
    pub off_frozen_arrows: usize,
}

/// Lower and upper entropy bounds for the quadrant seed with cross point `x`:
/// `(A_R / 2A) log 2` where `A_R / 2` is the larger parity class of directed
/// right-part triangles (they flip independently), and `(A_F^c / A) h`.
pub fn entropy_bracket(domain: &HexDomain, x: i32, free: FreeEntropyEstimate) -> Result<EntropyBracket> {
    if domain.kind == LatticeKind::T3464 {
        return Err(IceError::invalid("the quadrant construction applies to triangular and Kagome lattices"));
    }
    let r = quadrant_range(domain);
    if x.abs() > r {
        return Err(IceError::invalid(format!("cross point {x} lies outside the hexagon (|x| <= {r})")));
    }
    let seed = seed_config(domain, &SeedRecipe::QuadrantCross(x))?;
    let arrows = domain.edge_count();
    let (mut even, mut odd) = (0, 0);
    for f in domain.faces.iter().filter(|f| f.off_boundary && f.family.is_triangle()) {
        let right = f.edges.iter().all(|&e| quadrant_of(domain, e, x) == 2);
        if right && face_orientation(domain, &seed, f.id).is_some() {
            if f.family == FlipFamily::EvenTriangle {
                even += 1;
            } else {
                odd += 1;
            }
        }
    }
    let off_frozen = (0..arrows).filter(|&e| quadrant_of(domain, e, x) != 0).count();
    let parity = even.max(odd);
    Ok(EntropyBracket {
        lower: parity as f64 * LN_2 / arrows as f64,
        upper: off_frozen as f64 / arrows as f64 * free.value,
        arrows,
        right_triangles: even + odd,
        right_parity_max: parity,
        off_frozen_arrows: off_frozen,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCensus {
    /// Legal arrow patterns at one vertex.
    pub per_vertex: usize,
    /// Distinct vertex orientations in the lattice.
    pub orientations: usize,
    /// Legal patterns counted with orientation.
    pub total: usize,
}

/// Exhaustive local census of balanced arrow stars.
pub fn vertex_census(kind: LatticeKind) -> Result<VertexCensus> {
    let d = build_domain(kind, if kind == LatticeKind::Triangular { 6 } else { 8 })?;
    let mut stars: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &v in &d.interior_vertices {
        let p = d.vertices[v].point;
        let mut dirs: Vec<usize> = d.incidence[v]
            .iter()
            .map(|&(e, _)| {
                let q = d.vertices[if d.edges[e].tail == v { d.edges[e].head } else { d.edges[e].tail }].point;
                STEPS.iter().position(|&s| s == (q.0 - p.0, q.1 - p.1)).expect("neighbours are lattice steps")
            })
            .collect();
        dirs.sort_unstable();
        stars.insert(dirs);
    }
    let mut per_vertex = BTreeSet::new();
    let mut total = 0;
    for star in &stars {
        let k = star.len();
        let legal = (0u32..1 << k).filter(|m| 2 * m.count_ones() as usize == k).count();
        per_vertex.insert(legal);
        total += legal;
    }
    if per_vertex.len() != 1 {
        return Err(IceError::InvariantViolation("vertices of one lattice differ in degree".into()));
    }
    Ok(VertexCensus { per_vertex: *per_vertex.iter().next().unwrap(), orientations: stars.len(), total })
}
