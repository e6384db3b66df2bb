//! Text formats for configurations (`ICECFG`) and boundary specs (`ICEBND`).

use std::fmt::Write as _;

use crate::config::{BoundarySpec, Configuration};
use crate::dynamics::FlipStats;
use crate::error::{IceError, Result};
use crate::lattice::{HexDomain, LatticeKind};

pub const CONFIG_HEADER: &str = "ICECFG";
pub const BOUNDARY_HEADER: &str = "ICEBND";

/// A parsed file before it is tied to a domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeFile {
    pub header: String,
    pub kind: LatticeKind,
    pub n: usize,
    pub bits: Vec<(usize, bool)>,
}

fn write_pairs(header: &str, kind: LatticeKind, n: usize, pairs: impl Iterator<Item = (usize, bool)>) -> String {
    let mut s = format!("{header} {kind} {n}\n");
    for (e, b) in pairs {
        writeln!(s, "{e} {}", b as u8).expect("writing to a String cannot fail");
    }
    s
}

pub fn write_config(config: &Configuration) -> String {
    write_pairs(CONFIG_HEADER, config.kind(), config.n(), config.bits().into_iter().enumerate())
}

pub fn write_boundary(spec: &BoundarySpec) -> String {
    write_pairs(BOUNDARY_HEADER, spec.kind(), spec.n(), spec.pairs().into_iter())
}

pub fn parse_edge_file(text: &str) -> Result<EdgeFile> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let err = |line: usize, msg: &str| IceError::Parse { line: line + 1, msg: msg.to_string() };
    let (hl, head) = lines.next().ok_or_else(|| err(0, "empty file"))?;
    let parts: Vec<&str> = head.split_whitespace().collect();
    if parts.len() != 3 || (parts[0] != CONFIG_HEADER && parts[0] != BOUNDARY_HEADER) {
        return Err(err(hl, "expected `ICECFG <lattice> <N>` or `ICEBND <lattice> <N>`"));
    }
    let kind: LatticeKind = parts[1].parse().map_err(|e: IceError| err(hl, &e.to_string()))?;
    let n: usize = parts[2].parse().map_err(|_| err(hl, "N must be a non-negative integer"))?;
    let mut bits = Vec::new();
    for (i, l) in lines {
        let mut it = l.split_whitespace();
        let (Some(e), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(err(i, "expected `<edge id> <0|1>`"));
        };
        let e: usize = e.parse().map_err(|_| err(i, "edge id must be a non-negative integer"))?;
        let b = match b {
            "0" => false,
            "1" => true,
            _ => return Err(err(i, "arrow bit must be 0 or 1")),
        };
        bits.push((e, b));
    }
    Ok(EdgeFile { header: parts[0].to_string(), kind, n, bits })
}

impl EdgeFile {
    fn check(&self, domain: &HexDomain, header: &str) -> Result<()> {
        if self.header != header {
            return Err(IceError::invalid(format!("expected a {header} file, found {}", self.header)));
        }
        if self.kind != domain.kind || self.n != domain.n {
            return Err(IceError::invalid(format!(
                "file is for {} N={}, domain is {} N={}",
                self.kind, self.n, domain.kind, domain.n
            )));
        }
        Ok(())
    }

    /// Every edge must appear exactly once, in any order.
    pub fn to_config(&self, domain: &HexDomain) -> Result<Configuration> {
        self.check(domain, CONFIG_HEADER)?;
        let m = domain.edge_count();
        let mut seen = vec![None; m];
        for &(e, b) in &self.bits {
            if e >= m {
                return Err(IceError::invalid(format!("edge {e} out of range (domain has {m} edges)")));
            }
            if seen[e].replace(b).is_some() {
                return Err(IceError::invalid(format!("edge {e} listed twice")));
            }
        }
        if let Some(e) = seen.iter().position(Option::is_none) {
            return Err(IceError::invalid(format!("edge {e} missing")));
        }
        Configuration::from_bits(domain, &seen.into_iter().map(Option::unwrap).collect::<Vec<_>>())
    }

    pub fn to_boundary(&self, domain: &HexDomain) -> Result<BoundarySpec> {
        self.check(domain, BOUNDARY_HEADER)?;
        BoundarySpec::from_pairs(domain, &self.bits)
    }
}

pub fn read_config(text: &str, domain: &HexDomain) -> Result<Configuration> {
    parse_edge_file(text)?.to_config(domain)
}

pub fn read_boundary(text: &str, domain: &HexDomain) -> Result<BoundarySpec> {
    parse_edge_file(text)?.to_boundary(domain)
}

/// Reads the table written by [`FlipStats::export`], returning the stats
/// together with the lattice and N named in its header.
pub fn read_stats(text: &str) -> Result<(LatticeKind, usize, FlipStats)> {
    let err = |line: usize, msg: &str| IceError::Parse { line: line + 1, msg: msg.to_string() };
    let mut lines = text.lines().enumerate();
    let (hl, head) = lines.next().ok_or_else(|| err(0, "empty file"))?;
    let t: Vec<&str> = head.split_whitespace().collect();
    let shape = ["#", "window", "", "", "seed", "", "sweeps", "", "lattice", "", "n", ""];
    if t.len() != shape.len() || shape.iter().zip(&t).any(|(a, b)| !a.is_empty() && a != b) {
        return Err(err(hl, "expected `# window <s> <e> seed <S> sweeps <T> lattice <K> n <N>`"));
    }
    let num = |i: usize| t[i].parse::<u64>().map_err(|_| err(hl, &format!("`{}` is not an integer", t[i])));
    let kind: LatticeKind = t[9].parse().map_err(|e: IceError| err(hl, &e.to_string()))?;
    let mut stats = FlipStats::new(0, num(2)?, num(3)?, num(5)?);
    stats.total_sweeps = num(7)?;
    for (i, l) in lines.filter(|(_, l)| !l.trim().is_empty()) {
        let cols: Vec<&str> = l.split_whitespace().collect();
        if cols.len() != 5 {
            return Err(err(i, "expected `<face> <family> <x> <y> <count>`"));
        }
        let id: usize = cols[0].parse().map_err(|_| err(i, "bad face id"))?;
        if id != stats.per_face.len() {
            return Err(err(i, "face ids must be listed in order from 0"));
        }
        stats.per_face.push(cols[4].parse().map_err(|_| err(i, "bad count"))?);
    }
    Ok((kind, num(11)? as usize, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{from_signature, seed_config, SeedRecipe};
    use crate::lattice::build_domain;

    #[test]
    fn config_round_trip() {
        let d = build_domain(LatticeKind::Kagome, 4).unwrap();
        let c = seed_config(&d, &SeedRecipe::Fig4c).unwrap();
        let text = write_config(&c);
        assert!(text.starts_with("ICECFG kagome 4\n"));
        assert_eq!(read_config(&text, &d).unwrap(), c);
    }

    #[test]
    fn boundary_round_trip() {
        let d = build_domain(LatticeKind::Triangular, 6).unwrap();
        let b = from_signature(&d, [1, 1, 0, -1, -1, 0]).unwrap();
        let text = write_boundary(&b);
        assert_eq!(text.lines().count(), 1 + d.boundary_count());
        assert_eq!(read_boundary(&text, &d).unwrap(), b);
    }

    #[test]
    fn stats_round_trip() {
        let d = build_domain(LatticeKind::Triangular, 4).unwrap();
        let mut st = FlipStats::new(d.faces.len(), 3, 9, 11);
        st.total_sweeps = 9;
        st.per_face[2] = 5;
        let (k, n, back) = read_stats(&st.export(&d)).unwrap();
        assert_eq!((k, n), (d.kind, 4));
        assert_eq!(back, st);
    }

    #[test]
    fn rejects_malformed() {
        let d = build_domain(LatticeKind::Triangular, 2).unwrap();
        assert!(matches!(parse_edge_file("ICECFG tri"), Err(IceError::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_file("ICECFG tri 2\n0 2\n"), Err(IceError::Parse { line: 2, .. })));
        assert!(read_config("ICECFG tri 2\n0 1\n", &d).is_err());
        assert!(read_config("ICECFG kagome 2\n", &d).is_err());
        assert!(read_boundary(&write_config(&Configuration::new(&d)), &d).is_err());
    }
}
