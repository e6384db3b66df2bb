use icelat::analysis::*;
use icelat::boundary::*;
use icelat::dynamics::*;
use icelat::*;

fn sample(kind: LatticeKind, n: usize, sig: [i32; 6], window: u64) -> (HexDomain, FlipStats) {
    let d = build_domain(kind, n).unwrap();
    let b = from_signature(&d, sig).unwrap();
    let c = fill_in(&d, &b, None).unwrap();
    let (_, st) = run(&d, &b, &c, &Schedule::default_for(kind), 20, window, 4, Parallelism::Sequential).unwrap();
    (d, st)
}

#[test]
fn heatmap_scale_and_format() {
    let (d, st) = sample(LatticeKind::Triangular, 10, [0; 6], 100);
    let img = heatmap(&st, &d, 4.0, None).unwrap();
    assert_eq!(img.values.len(), img.width * img.height);
    assert_eq!(*img.values.iter().min().unwrap(), 0);
    assert!(img.values.contains(&BACKGROUND) && img.values.contains(&OUTSIDE));
    let p5 = img.to_pgm(true);
    assert!(p5.starts_with(format!("P5\n{} {}\n255\n", img.width, img.height).as_bytes()));
    let p2 = String::from_utf8(img.to_pgm(false)).unwrap();
    assert_eq!(p2.lines().count(), 3 + img.height);
    let evens = heatmap(&st, &d, 4.0, Some(&[FlipFamily::EvenTriangle])).unwrap();
    assert_ne!(evens, img);
    let empty = FlipStats::new(d.faces.len(), 5, 5, 0);
    assert!(heatmap(&empty, &d, 4.0, None).is_err());
}

#[test]
fn frozen_boundary_is_all_frozen() {
    let (d, st) = sample(LatticeKind::Kagome, 6, [1, 1, 0, -1, -1, 0], 50);
    let rep = demarcation(&st, &d).unwrap();
    assert!(rep.temperate.is_empty());
    assert_eq!(rep.frozen_fraction, 1.0);
    assert!(rep.corner_frozen.iter().all(|&c| c == rep.frozen.len()));
    let img = heatmap(&st, &d, 2.0, None).unwrap();
    assert!(img.values.iter().all(|&v| v == BACKGROUND || v == OUTSIDE));
}

#[test]
fn zero_signature_centre_is_temperate() {
    let (d, st) = sample(LatticeKind::Triangular, 20, [0; 6], 300);
    let rep = demarcation(&st, &d).unwrap();
    assert!(rep.frozen_fraction < 0.05, "{}", rep.frozen_fraction);
    assert!(faces_within(&d, 4.0).iter().all(|&f| st.per_face[f] > 0));
    let (mean, _, cv) = homogeneity(&st, &d);
    assert!(mean > 0.0 && cv < 1.0);
}

#[test]
fn corner_triangles() {
    let d = build_domain(LatticeKind::Triangular, 20).unwrap();
    let c = d.corners();
    let inward = |k: usize, t: f64| [c[k][0] + (d.center()[0] - c[k][0]) * t, c[k][1] + (d.center()[1] - c[k][1]) * t];
    for k in 0..6 {
        assert!(in_corner_triangle(&d, k, 3.0, inward(k, 0.05)));
        assert!(!in_corner_triangle(&d, k, 3.0, inward(k, 0.5)));
        assert!(!in_corner_triangle(&d, (k + 1) % 6, 3.0, inward(k, 0.05)));
    }
}

#[test]
fn flip_ratio_needs_hexagons() {
    let (d, st) = sample(LatticeKind::Triangular, 10, [0; 6], 20);
    assert!(flip_ratio(&st, &d, 5.0).is_err());
    let (d, st) = sample(LatticeKind::Kagome, 12, [0; 6], 200);
    let r = flip_ratio(&st, &d, default_center_radius(&d)).unwrap();
    assert!(r > 1.0 && r < 30.0, "{r}");
    let zero = FlipStats::new(d.faces.len(), 0, 10, 0);
    assert!(flip_ratio(&zero, &d, 3.0).is_err());
    assert_eq!(bernoulli_flip_ratio(1, 1), 8.0);
    assert_eq!(bernoulli_flip_ratio(1, 2), 4.0);
}

#[test]
fn t3464_bounds_hold_on_generated_boundaries() {
    let d = build_domain(LatticeKind::T3464, 16).unwrap();
    for c in [cycle_config(&d).unwrap(), seed_config(&d, &SeedRecipe::Fig4d).unwrap(), seed_config(&d, &SeedRecipe::AllOneCycles).unwrap()] {
        let r = check_3464_bounds(&d, &c.boundary(&d), Some(&c)).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
        assert!(r.long_blocks > 0 && r.periodic_blocks > 0);
        assert!(r.density_fraction().unwrap() >= 1.0 / 7.0);
    }
    let t = build_domain(LatticeKind::Triangular, 6).unwrap();
    assert!(check_3464_bounds(&t, &from_signature(&t, [0; 6]).unwrap(), None).is_err());
}

#[test]
fn y_plaquette_always_holds_a_cycle() {
    let d = build_domain(LatticeKind::T3464, 8).unwrap();
    let c = d.center();
    let dist = |f: &&icelat::lattice::Face| (f.centroid[0] - c[0]).hypot(f.centroid[1] - c[1]);
    let tri = d.faces.iter().filter(|f| f.family.is_triangle()).min_by(|a, b| dist(a).total_cmp(&dist(b))).unwrap();
    let r = y_plaquette_check(&d, tri.id).unwrap();
    assert_eq!((r.faces.len(), r.arrows, r.constrained_vertices), (7, 24, 9));
    assert_eq!(r.legal_patterns, 2690);
    assert_eq!(r.patterns_without_cycle, 0);
    let hex = d.faces.iter().find(|f| f.family == FlipFamily::Hexagon1).unwrap();
    assert!(y_plaquette_check(&d, hex.id).is_err());
}

#[test]
fn entropy_bracket_endpoints() {
    let d = build_domain(LatticeKind::Triangular, 6).unwrap();
    let free = FreeEntropyEstimate::configured(0.3).unwrap();
    let r = quadrant_range(&d);
    let right = entropy_bracket(&d, r, free).unwrap();
    assert_eq!((right.lower, right.upper), (0.0, 0.0));
    let left = entropy_bracket(&d, -r, free).unwrap();
    assert_eq!(left.upper, 0.3);
    assert!(left.lower > 0.0);
    assert!(entropy_bracket(&d, r + 1, free).is_err());
    assert!(FreeEntropyEstimate::configured(-1.0).is_err());
    let t = build_domain(LatticeKind::T3464, 4).unwrap();
    assert!(entropy_bracket(&t, 0, free).is_err());
}

#[test]
fn free_entropy_fit() {
    let est = fit_free_entropy(&[(4, 0.2), (8, 0.25)]).unwrap();
    assert!((est.value - 0.3).abs() < 1e-12);
    assert_eq!(est.source, EntropySource::Fitted);
    assert!(fit_free_entropy(&[(4, 0.2)]).is_err());
    let pts = zero_signature_entropies(LatticeKind::Triangular, &[4, 6]).unwrap();
    let arrows = build_domain(LatticeKind::Triangular, 4).unwrap().edge_count();
    assert_eq!(pts[0], (4, 18f64.ln() / arrows as f64));
    assert!(pts[1].1 > pts[0].1);
}

#[test]
fn vertex_census_counts() {
    let t = vertex_census(LatticeKind::Triangular).unwrap();
    assert_eq!((t.per_vertex, t.orientations, t.total), (20, 1, 20));
    let k = vertex_census(LatticeKind::Kagome).unwrap();
    assert_eq!((k.per_vertex, k.orientations, k.total), (6, 3, 18));
    let s = vertex_census(LatticeKind::T3464).unwrap();
    assert_eq!((s.per_vertex, s.orientations, s.total), (6, 6, 36));
}
