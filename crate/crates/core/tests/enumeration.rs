use icelat::boundary::*;
use icelat::config::is_legal;
use icelat::dynamics::Parallelism;
use icelat::exact::*;
use icelat::*;

/// Tries every assignment of the interior arrows.
fn brute_force(d: &HexDomain, b: &BoundarySpec) -> u128 {
    let free: Vec<usize> = d.interior_edges().map(|e| e.id).collect();
    assert!(free.len() <= 24, "{} free arrows", free.len());
    let mut c = Configuration::from_fn(d, |e| b.get(e).unwrap_or(true));
    let mut count = 0;
    for mask in 0u32..1 << free.len() {
        for (i, &e) in free.iter().enumerate() {
            c.set(e, mask >> i & 1 == 1);
        }
        count += is_legal(d, &c) as u128;
    }
    count
}

fn count(kind: LatticeKind, n: usize, sig: [i32; 6]) -> u128 {
    let d = build_domain(kind, n).unwrap();
    enumerate(&d, &from_signature(&d, sig).unwrap(), 0).unwrap().count
}

#[test]
fn matches_brute_force_on_small_domains() {
    let sigs = [[0; 6], [1, -1, 1, -1, 1, -1], [1, 1, 0, -1, -1, 0], [0, 1, 1, 0, -1, -1]];
    for (kind, n) in [(LatticeKind::Triangular, 2), (LatticeKind::Triangular, 4), (LatticeKind::Kagome, 2), (LatticeKind::T3464, 2)] {
        let d = build_domain(kind, n).unwrap();
        for sig in sigs {
            let Ok(b) = from_signature(&d, sig) else { continue };
            let r = enumerate(&d, &b, DEFAULT_CAP).unwrap();
            assert_eq!(r.count, brute_force(&d, &b), "{kind} N={n} {sig:?}");
            assert!(r.configs().unwrap().iter().all(|c| is_legal(&d, c) && c.agrees_with(&d, &b)));
        }
    }
}

#[test]
fn frozen_signature_has_one_fill_in() {
    for (kind, n) in [(LatticeKind::Triangular, 4), (LatticeKind::Triangular, 6), (LatticeKind::Triangular, 20), (LatticeKind::Kagome, 2), (LatticeKind::Kagome, 4), (LatticeKind::Kagome, 10)] {
        assert_eq!(count(kind, n, [1, 1, 0, -1, -1, 0]), 1, "{kind} N={n}");
    }
}

#[test]
fn golden_counts() {
    assert_eq!(count(LatticeKind::Triangular, 4, [0; 6]), 18);
    assert_eq!(count(LatticeKind::Triangular, 6, [0; 6]), 94677);
    assert_eq!(count(LatticeKind::Kagome, 4, [0; 6]), 7141);
    assert_eq!(count(LatticeKind::T3464, 4, [0; 6]), 17084);
    assert_eq!(count(LatticeKind::Triangular, 4, [1, -1, 1, -1, 1, -1]), 18);
    assert_eq!(count(LatticeKind::Triangular, 6, [1, -1, 1, -1, 1, -1]), 14419);
    assert_eq!(count(LatticeKind::Kagome, 4, [1, -1, 1, -1, 1, -1]), 6028);
    let d = build_domain(LatticeKind::Triangular, 6).unwrap();
    assert_eq!(enumerate(&d, &alternating_edge_split(&d).unwrap(), 0).unwrap().count, 56960);
}

#[test]
fn quadrant_counts_fall_to_one() {
    let d = build_domain(LatticeKind::Triangular, 6).unwrap();
    let r = quadrant_range(&d);
    let counts: Vec<u128> = (-r..=r)
        .map(|x| enumerate(&d, &seed_config(&d, &SeedRecipe::QuadrantCross(x)).unwrap().boundary(&d), 0).unwrap().count)
        .collect();
    assert_eq!(counts, [94677, 28710, 720, 8, 1, 1, 1]);
}

#[test]
fn infeasible_and_truncated() {
    let d = build_domain(LatticeKind::Triangular, 4).unwrap();
    assert!(from_signature(&d, [1, 1, 1, 0, 0, 0]).is_err());
    let b = BoundarySpec::from_fn(&d, |e| d.vertices[d.edges[e].head].interior);
    assert_eq!(enumerate(&d, &b, DEFAULT_CAP).unwrap().count, 0);
    let b = from_signature(&d, [0; 6]).unwrap();
    let r = enumerate(&d, &b, 5).unwrap();
    assert_eq!(r.count, 18);
    assert!(r.truncated && r.configs().is_err());
}

#[test]
fn parallel_enumeration_agrees() {
    let d = build_domain(LatticeKind::Kagome, 4).unwrap();
    let b = from_signature(&d, [0; 6]).unwrap();
    let seq = enumerate_with(&d, &b, DEFAULT_CAP, Parallelism::Sequential).unwrap();
    let par = enumerate_with(&d, &b, DEFAULT_CAP, Parallelism::Rayon).unwrap();
    assert_eq!(seq, par);
    assert!(seq.export().starts_with("count 7141\n"));
}

#[test]
fn flip_graph_components() {
    let d = build_domain(LatticeKind::Triangular, 6).unwrap();
    let b = seed_config(&d, &SeedRecipe::Fig4a).unwrap().boundary(&d);
    let r = enumerate(&d, &b, DEFAULT_CAP).unwrap();
    assert!(flip_graph(&r, &d, &[FlipFamily::EvenTriangle, FlipFamily::OddTriangle]).unwrap().is_connected());
    assert_eq!(flip_graph(&r, &d, &[FlipFamily::OddTriangle]).unwrap().component_count(), 10);
    assert_eq!(flip_graph(&r, &d, &[FlipFamily::EvenTriangle]).unwrap().component_count(), 10);
    assert!(flip_graph(&r, &d, &[FlipFamily::Hexagon1]).is_err());
}

#[test]
fn entropy_per_arrow() {
    assert!(entropy_of(0, 10).is_err());
    assert_eq!(entropy_of(1, 10).unwrap(), 0.0);
    assert!((entropy_of(94677, 72).unwrap() - (94677f64).ln() / 72.0).abs() < 1e-15);
}
