//! Boundary conditions and seed configurations.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::config::{boundary_profile, validate, BoundarySpec, Configuration};
use crate::error::{IceError, Result};
use crate::lattice::{FlipFamily, HexDomain, LatticeKind};

/// Boundary arrows realizing a sequence of ±1 height steps along the boundary loop.
pub fn boundary_from_steps(domain: &HexDomain, steps: &[i8]) -> Result<BoundarySpec> {
    if steps.len() != domain.boundary_count() {
        return Err(IceError::invalid(format!("{} steps given for a loop of {}", steps.len(), domain.boundary_count())));
    }
    let mut bits = vec![false; domain.edge_count()];
    for (i, &e) in domain.dual.loop_edges.iter().enumerate() {
        let r2l = domain.dual.loop_right_to_left[i];
        bits[e] = match steps[i] {
            1 => !r2l,
            -1 => r2l,
            s => return Err(IceError::invalid(format!("height step {s} is not ±1"))),
        };
    }
    Ok(BoundarySpec::from_fn(domain, |e| bits[e]))
}

/// Parses `+1,+1,0,-1,-1,0`.
pub fn parse_signature(s: &str) -> Result<[i32; 6]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(IceError::invalid(format!("signature needs six tilts, got `{s}`")));
    }
    let mut out = [0; 6];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.trim_start_matches('+').parse().map_err(|_| IceError::invalid(format!("bad tilt `{p}`")))?;
    }
    Ok(out)
}

/// Height steps of a signature, side by side.
///
/// Tilt ±1 sides are monotone. A tilt 0 side alternates and its first step
/// follows the side before it: after an alternating side the alternation
/// continues; after a monotone side, triangular sides repeat that side's step
/// while Kagome sides switch to the opposite one (these are the phases whose
/// frozen signatures have a fill-in). With no monotone side the loop starts
/// with +1.
fn signature_steps(kind: LatticeKind, l: usize, tilts: [i32; 6]) -> Vec<i8> {
    // build from the first monotone side so every alternating side has a predecessor
    let k = tilts.iter().position(|&t| t != 0).unwrap_or(0);
    let mut steps: Vec<i8> = Vec::with_capacity(6 * l);
    for j in 0..6 {
        let side = (k + j) % 6;
        let t = tilts[side];
        if t != 0 {
            steps.extend(std::iter::repeat_n(t as i8, l));
            continue;
        }
        let prev_last = steps.last().copied().unwrap_or(-1);
        let after_monotone = tilts[(side + 5) % 6] != 0;
        let first = if after_monotone && kind == LatticeKind::Triangular { prev_last } else { -prev_last };
        steps.extend((0..l).map(|i| if i % 2 == 0 { first } else { -first }));
    }
    steps.rotate_right(k * l);
    steps
}

/// Boundary arrows of per-side tilts in {-1, 0, +1}.
pub fn from_signature(domain: &HexDomain, tilts: [i32; 6]) -> Result<BoundarySpec> {
    if let Some((side, &t)) = tilts.iter().enumerate().find(|(_, t)| t.abs() > 1) {
        return Err(IceError::invalid(format!("tilt {t} on side {side} is outside -1..=1")));
    }
    if domain.kind == LatticeKind::T3464 {
        if let Some((side, &tilt)) = tilts.iter().enumerate().find(|(_, t)| **t != 0) {
            return Err(IceError::NoMaximalTilt { side, tilt });
        }
    }
    let steps = signature_steps(domain.kind, domain.side_len(), tilts);
    let total: i64 = steps.iter().map(|&s| s as i64).sum();
    if total != 0 {
        return Err(IceError::Infeasible(format!("signature {tilts:?} leaves a height change of {total} around the loop")));
    }
    boundary_from_steps(domain, &steps)
}

/// Each side climbs for its first half and descends for its second half.
/// On sides of odd length the middle step goes up on even sides and down on odd ones.
pub fn alternating_edge_split(domain: &HexDomain) -> Result<BoundarySpec> {
    if domain.kind == LatticeKind::T3464 {
        return Err(IceError::NoMaximalTilt { side: 0, tilt: 1 });
    }
    let l = domain.side_len();
    let mut steps = Vec::with_capacity(6 * l);
    for side in 0..6 {
        for i in 0..l {
            let s = if 2 * i + 1 < l {
                1
            } else if 2 * i + 1 > l {
                -1
            } else if side % 2 == 0 {
                1
            } else {
                -1
            };
            steps.push(s);
        }
    }
    boundary_from_steps(domain, &steps)
}

/// Outer perimeter of the region covered by off-boundary faces, walked
/// counterclockwise: `(edge, bit)` pairs where `bit` is the orientation bit
/// that points the edge along the walk.
pub fn outer_cycle(domain: &HexDomain) -> Result<Vec<(usize, bool)>> {
    let mut uses = vec![0u8; domain.edge_count()];
    for f in domain.faces.iter().filter(|f| f.off_boundary) {
        for &e in &f.edges {
            uses[e] += 1;
        }
    }
    // a perimeter edge has its region face on the left when walked counterclockwise
    let mut next = vec![usize::MAX; domain.vertices.len()];
    let mut via = vec![(usize::MAX, false); domain.vertices.len()];
    let mut count = 0;
    for f in domain.faces.iter().filter(|f| f.off_boundary) {
        for (&e, &s) in f.edges.iter().zip(&f.sense) {
            if uses[e] != 1 {
                continue;
            }
            let edge = &domain.edges[e];
            let (from, to) = if s { (edge.tail, edge.head) } else { (edge.head, edge.tail) };
            if next[from] != usize::MAX {
                return Err(IceError::InvariantViolation("off-boundary region is not bounded by a simple cycle".into()));
            }
            next[from] = to;
            via[from] = (e, s);
            count += 1;
        }
    }
    let start = (0..domain.vertices.len()).find(|&v| next[v] != usize::MAX).ok_or_else(|| IceError::invalid("domain has no off-boundary face"))?;
    let mut cycle = Vec::with_capacity(count);
    let mut v = start;
    loop {
        cycle.push(via[v]);
        v = next[v];
        if v == start || cycle.len() > count {
            break;
        }
    }
    if cycle.len() != count || v != start {
        return Err(IceError::InvariantViolation("off-boundary region has more than one perimeter".into()));
    }
    Ok(cycle)
}

/// A legal configuration with the all-zero signature whose outer perimeter
/// is a counterclockwise directed cycle.
pub fn cycle_config(domain: &HexDomain) -> Result<Configuration> {
    let boundary = from_signature(domain, [0; 6])?;
    let mut c = Configuration::new(domain);
    let mut fixed = vec![false; domain.edge_count()];
    for (e, b) in boundary.pairs() {
        c.set(e, b);
        fixed[e] = true;
    }
    for (e, bit) in outer_cycle(domain)? {
        c.set(e, bit);
        fixed[e] = true;
    }
    balance(domain, &mut c, &fixed)?;
    Ok(c)
}

/// Boundary of [`cycle_config`].
pub fn cycle_boundary(domain: &HexDomain) -> Result<BoundarySpec> {
    Ok(cycle_config(domain)?.boundary(domain))
}

/// Orients the interior edges so that every interior vertex is balanced,
/// keeping the boundary arrows of `boundary`. Starts from `start` (or all
/// bits false) and reverses directed paths from vertices with surplus
/// out-arrows to vertices with surplus in-arrows.
pub fn fill_in(domain: &HexDomain, boundary: &BoundarySpec, start: Option<&Configuration>) -> Result<Configuration> {
    boundary.check_domain(domain)?;
    boundary_profile(domain, boundary)?;
    let mut c = match start {
        Some(s) => {
            s.check_domain(domain)?;
            s.clone()
        }
        None => Configuration::new(domain),
    };
    let mut fixed = vec![false; domain.edge_count()];
    for (e, b) in boundary.pairs() {
        c.set(e, b);
        fixed[e] = true;
    }
    balance(domain, &mut c, &fixed)?;
    Ok(c)
}

/// Balances every interior vertex by reversing directed paths of free edges.
fn balance(domain: &HexDomain, c: &mut Configuration, fixed: &[bool]) -> Result<()> {
    let nv = domain.vertices.len();
    let excess = |c: &Configuration, v: usize| -> i32 {
        domain.incidence[v].iter().map(|&(e, is_tail)| if c.get(e) == is_tail { 1 } else { -1 }).sum()
    };
    let mut surplus: Vec<i32> = (0..nv).map(|v| if domain.vertices[v].interior { excess(c, v) } else { 0 }).collect();
    let mut parent = vec![usize::MAX; nv];
    for s in 0..nv {
        while surplus[s] > 0 {
            // BFS along free arrows to a vertex with negative surplus
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            let mut q = VecDeque::from([s]);
            parent[s] = s;
            let mut target = None;
            while let Some(u) = q.pop_front() {
                if surplus[u] < 0 {
                    target = Some(u);
                    break;
                }
                for &(e, is_tail) in &domain.incidence[u] {
                    let edge = &domain.edges[e];
                    if fixed[e] || c.get(e) != is_tail || !domain.vertices[edge.tail].interior || !domain.vertices[edge.head].interior {
                        continue;
                    }
                    let w = if is_tail { edge.head } else { edge.tail };
                    if parent[w] == usize::MAX {
                        parent[w] = e;
                        q.push_back(w);
                    }
                }
            }
            let t = target.ok_or_else(|| IceError::Infeasible(format!("no legal fill-in: vertex {s} cannot be balanced")))?;
            let mut v = t;
            while v != s {
                let e = parent[v];
                c.toggle(e);
                let edge = &domain.edges[e];
                v = if edge.tail == v { edge.head } else { edge.tail };
            }
            surplus[s] -= 2;
            surplus[t] += 2;
        }
    }
    debug_assert!(validate(domain, c).map(|b| b.is_empty()).unwrap_or(false));
    Ok(())
}

/// Direction classes by clock bearing: class 0 points to 3 o'clock, class 1
/// to 1 o'clock and class 2 to 11 o'clock; the reversed arrows point to 9, 7
/// and 5 o'clock.
pub fn clock_to_class(hour: u8) -> Result<(u8, bool)> {
    match hour {
        3 => Ok((0, true)),
        9 => Ok((0, false)),
        1 => Ok((1, true)),
        7 => Ok((1, false)),
        11 => Ok((2, true)),
        5 => Ok((2, false)),
        h => Err(IceError::invalid(format!("no lattice direction points to {h} o'clock"))),
    }
}

/// Lattice line index of an edge: lines of class 0 are indexed by b, class 1
/// by a, class 2 by a + b (axial coordinates of the tail).
pub fn line_index(domain: &HexDomain, e: usize) -> i32 {
    let edge = &domain.edges[e];
    let p = domain.vertices[edge.tail].point;
    match edge.dirclass {
        0 => p.1,
        1 => p.0,
        _ => p.0 + p.1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedRecipe {
    /// Every arrow of class c set to `bits[c]`, then the listed `(class, line)` lines reversed.
    LatticeLines { bits: [bool; 3], reversed: Vec<(u8, i32)> },
    /// Parallel lines alternate orientation.
    AlternatingLines,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig4d,
    QuadrantCross(i32),
    AllOneCycles,
}

impl FromStr for SeedRecipe {
    type Err = IceError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "fig4a" => Ok(SeedRecipe::Fig4a),
            "fig4b" => Ok(SeedRecipe::Fig4b),
            "fig4c" => Ok(SeedRecipe::Fig4c),
            "fig4d" | "periodic" => Ok(SeedRecipe::Fig4d),
            "allcycles" => Ok(SeedRecipe::AllOneCycles),
            "alternating" => Ok(SeedRecipe::AlternatingLines),
            _ => {
                if let Some(x) = s.strip_prefix("quadrant:") {
                    let x = x.parse().map_err(|_| IceError::invalid(format!("bad cross point `{x}`")))?;
                    return Ok(SeedRecipe::QuadrantCross(x));
                }
                if let Some(h) = s.strip_prefix("lines:") {
                    let mut bits = [true; 3];
                    let mut seen = [false; 3];
                    for t in h.split(',') {
                        let hour: u8 = t.trim().parse().map_err(|_| IceError::invalid(format!("bad clock hour `{t}`")))?;
                        let (c, b) = clock_to_class(hour)?;
                        if seen[c as usize] {
                            return Err(IceError::invalid(format!("two hours given for the same lattice direction in `{s}`")));
                        }
                        seen[c as usize] = true;
                        bits[c as usize] = b;
                    }
                    if seen.iter().any(|s| !s) {
                        return Err(IceError::invalid(format!("`{s}` must name one hour per lattice direction")));
                    }
                    return Ok(SeedRecipe::LatticeLines { bits, reversed: Vec::new() });
                }
                Err(IceError::invalid(format!("unknown seed recipe `{s}`")))
            }
        }
    }
}

impl fmt::Display for SeedRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedRecipe::LatticeLines { bits, reversed } => {
                let hours = [(3, 9), (1, 7), (11, 5)];
                let h: Vec<String> = (0..3).map(|c| if bits[c] { hours[c].0 } else { hours[c].1 }.to_string()).collect();
                write!(f, "lines:{}", h.join(","))?;
                for (c, l) in reversed {
                    write!(f, ";rev{c}@{l}")?;
                }
                Ok(())
            }
            SeedRecipe::AlternatingLines => f.write_str("alternating"),
            SeedRecipe::Fig4a => f.write_str("fig4a"),
            SeedRecipe::Fig4b => f.write_str("fig4b"),
            SeedRecipe::Fig4c => f.write_str("fig4c"),
            SeedRecipe::Fig4d => f.write_str("fig4d"),
            SeedRecipe::QuadrantCross(x) => write!(f, "quadrant:{x}"),
            SeedRecipe::AllOneCycles => f.write_str("allcycles"),
        }
    }
}

fn lines_config(domain: &HexDomain, bits: [bool; 3], reversed: &[(u8, i32)]) -> Configuration {
    Configuration::from_fn(domain, |e| {
        let c = domain.edges[e].dirclass;
        let flip = reversed.iter().any(|&(rc, l)| rc == c && line_index(domain, e) == l);
        bits[c as usize] ^ flip
    })
}

/// Whether faces of this family are oriented counterclockwise in the
/// all-1-cycles configuration (a proper 2-colouring of the faces).
fn ccw_colour(kind: LatticeKind, family: FlipFamily) -> bool {
    match kind {
        LatticeKind::Triangular => family == FlipFamily::EvenTriangle,
        LatticeKind::Kagome => family.is_triangle(),
        LatticeKind::T3464 => !family.is_lozenge(),
    }
}

pub fn seed_config(domain: &HexDomain, recipe: &SeedRecipe) -> Result<Configuration> {
    let kind = domain.kind;
    let need = |ok: bool| {
        if ok {
            Ok(())
        } else {
            Err(IceError::invalid(format!("seed `{recipe}` is not defined on the {kind} lattice")))
        }
    };
    let c = match recipe {
        SeedRecipe::LatticeLines { bits, reversed } => {
            need(kind != LatticeKind::T3464)?;
            lines_config(domain, *bits, reversed)
        }
        SeedRecipe::AlternatingLines => {
            need(kind != LatticeKind::T3464)?;
            Configuration::from_fn(domain, |e| {
                let l = line_index(domain, e);
                // Kagome lines sit on odd indices only
                let k = if kind == LatticeKind::Kagome { (l - 1).div_euclid(2) } else { l };
                k.rem_euclid(2) == 0
            })
        }
        SeedRecipe::Fig4a => {
            need(kind == LatticeKind::Triangular)?;
            lines_config(domain, [true, true, false], &[(1, 0), (2, 0)])
        }
        SeedRecipe::Fig4b => {
            need(kind == LatticeKind::Kagome)?;
            lines_config(domain, [true, false, true], &[])
        }
        SeedRecipe::Fig4c => {
            need(kind == LatticeKind::Kagome)?;
            seed_config(domain, &SeedRecipe::AlternatingLines)?
        }
        SeedRecipe::Fig4d => {
            need(kind == LatticeKind::T3464)?;
            periodic_3464(domain, FIG4D_PATTERN)
        }
        SeedRecipe::QuadrantCross(x) => {
            need(kind != LatticeKind::T3464)?;
            quadrant_cross(domain, *x)?
        }
        SeedRecipe::AllOneCycles => Configuration::from_fn(domain, |e| {
            let left = &domain.dual.vertices[domain.edges[e].left];
            ccw_colour(kind, left.family)
        }),
    };
    let bad = validate(domain, &c)?;
    if !bad.is_empty() {
        return Err(IceError::InvariantViolation(format!("seed `{recipe}` breaks the ice rule at {} vertices", bad.len())));
    }
    Ok(c)
}

/// Periodic 3.4.6.4 configuration: bit `3 * basis + dirclass` of `pattern`
/// orients every edge whose tail has that basis index and direction class.
pub fn periodic_3464(domain: &HexDomain, pattern: u32) -> Configuration {
    Configuration::from_fn(domain, |e| {
        let edge = &domain.edges[e];
        let slot = 3 * domain.vertices[edge.tail].basis as u32 + edge.dirclass as u32;
        (pattern >> slot) & 1 == 1
    })
}

/// Minimal-period legal pattern with all even triangles directed and nothing
/// else; banning either even-triangle or left-lozenge moves disconnects its
/// flip graph.
pub const FIG4D_PATTERN: u32 = 0x00114;

/// Part of the hexagon an edge belongs to, split by the lattice lines `a = x`
/// (class 1) and `a + b = x` (class 2): 0 left, 1 top, 2 right, 3 bottom.
/// Edges lying on a line count as being on its left.
pub fn quadrant_of(domain: &HexDomain, e: usize, x: i32) -> usize {
    let edge = &domain.edges[e];
    let (p, q) = (domain.vertices[edge.tail].point, domain.vertices[edge.head].point);
    let a2 = p.0 + q.0;
    let s2 = p.0 + p.1 + q.0 + q.1;
    match (a2 > 2 * x, s2 > 2 * x) {
        (false, false) => 0,
        (false, true) => 1,
        (true, true) => 2,
        (true, false) => 3,
    }
}

/// Cross point at axial `(x, 0)`. The left part is frozen (arrows to 3, 1
/// and 5 o'clock), the right part has every 1-cycle directed (3, 7, 11), the
/// top part points to 3, 1, 11 and the bottom part to 3, 7, 5.
fn quadrant_cross(domain: &HexDomain, x: i32) -> Result<Configuration> {
    let r = quadrant_range(domain);
    if x.abs() > r {
        return Err(IceError::invalid(format!("cross point {x} lies outside the hexagon (|x| <= {r})")));
    }
    const PARTS: [[bool; 3]; 4] = [[true, true, false], [true, true, true], [true, false, true], [true, false, false]];
    Ok(Configuration::from_fn(domain, |e| PARTS[quadrant_of(domain, e, x)][domain.edges[e].dirclass as usize]))
}

/// Cross points run over `-r..=r`; `r` is the leftmost/rightmost boundary point.
pub fn quadrant_range(domain: &HexDomain) -> i32 {
    domain.radius + 1
}
