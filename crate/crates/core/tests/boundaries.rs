use icelat::boundary::*;
use icelat::config::{boundary_profile, compare, extremal, height, is_legal, signature_of, Extremum, HeightOrder};
use icelat::*;
use num_rational::Rational64;

#[test]
fn frozen_signature_is_exact_rational() {
    let d = build_domain(LatticeKind::Triangular, 6).unwrap();
    let b = from_signature(&d, [1, 1, 0, -1, -1, 0]).unwrap();
    let s = signature_of(&boundary_profile(&d, &b).unwrap(), &d);
    let r = |a, b| Rational64::new(a, b);
    assert_eq!(s.tilts, [r(1, 1), r(1, 1), r(1, 5), r(-1, 1), r(-1, 1), r(-1, 5)]);
    assert_eq!(s.nominal(), [1, 1, 0, -1, -1, 0]);
}

#[test]
fn signature_errors() {
    let d = build_domain(LatticeKind::Kagome, 4).unwrap();
    assert!(matches!(from_signature(&d, [2, 0, 0, -2, 0, 0]), Err(IceError::InvalidArgument(_))));
    assert!(matches!(from_signature(&d, [1, 1, 0, 0, 0, 0]), Err(IceError::Infeasible(_))));
    let t = build_domain(LatticeKind::T3464, 4).unwrap();
    assert!(matches!(from_signature(&t, [0, 0, 1, 0, 0, -1]), Err(IceError::NoMaximalTilt { side: 2, tilt: 1 })));
    assert_eq!(parse_signature("+1,+1,0,-1,-1,0").unwrap(), [1, 1, 0, -1, -1, 0]);
    assert!(parse_signature("1,1,0").is_err());
}

#[test]
fn generated_seeds_are_legal() {
    let cases: &[(LatticeKind, usize, &str)] = &[
        (LatticeKind::Triangular, 8, "fig4a"),
        (LatticeKind::Triangular, 8, "allcycles"),
        (LatticeKind::Triangular, 8, "quadrant:-2"),
        (LatticeKind::Triangular, 8, "lines:3,1,5"),
        (LatticeKind::Kagome, 6, "fig4b"),
        (LatticeKind::Kagome, 6, "fig4c"),
        (LatticeKind::Kagome, 6, "quadrant:3"),
        (LatticeKind::T3464, 8, "fig4d"),
        (LatticeKind::T3464, 8, "allcycles"),
    ];
    for &(kind, n, recipe) in cases {
        let d = build_domain(kind, n).unwrap();
        let r: SeedRecipe = recipe.parse().unwrap();
        assert_eq!(r.to_string(), recipe);
        let c = seed_config(&d, &r).unwrap();
        assert!(is_legal(&d, &c), "{kind} {recipe}");
    }
    let t = build_domain(LatticeKind::T3464, 4).unwrap();
    assert!(seed_config(&t, &SeedRecipe::Fig4a).is_err());
    let k = build_domain(LatticeKind::Kagome, 4).unwrap();
    assert!(seed_config(&k, &SeedRecipe::QuadrantCross(quadrant_range(&k) + 1)).is_err());
    assert!("lines:3,9,1".parse::<SeedRecipe>().is_err());
}

#[test]
fn all_one_cycles_seed_is_all_directed() {
    for (kind, n) in [(LatticeKind::Triangular, 6), (LatticeKind::Kagome, 4), (LatticeKind::T3464, 4)] {
        let d = build_domain(kind, n).unwrap();
        let c = seed_config(&d, &SeedRecipe::AllOneCycles).unwrap();
        assert!(d.faces.iter().all(|f| dynamics::face_orientation(&d, &c, f.id).is_some()), "{kind}");
    }
}

#[test]
fn cycle_and_split_boundaries() {
    for (kind, n) in [(LatticeKind::Triangular, 10), (LatticeKind::Kagome, 6), (LatticeKind::T3464, 6)] {
        let d = build_domain(kind, n).unwrap();
        let c = cycle_config(&d).unwrap();
        assert!(is_legal(&d, &c));
        let perimeter = outer_cycle(&d).unwrap();
        assert!(perimeter.iter().all(|&(e, bit)| c.get(e) == bit));
        assert_eq!(c.boundary(&d), cycle_boundary(&d).unwrap());
    }
    let d = build_domain(LatticeKind::Triangular, 10).unwrap();
    let split = alternating_edge_split(&d).unwrap();
    let steps = boundary_profile(&d, &split).unwrap().heights;
    let l = d.side_len();
    for side in 0..6 {
        let h = &steps[side * l..=(side + 1) * l];
        assert!(h[..=l / 2].windows(2).all(|w| w[1] > w[0]));
        assert!(h[l / 2 + 1..].windows(2).all(|w| w[1] < w[0]));
    }
}

#[test]
fn fill_in_matches_any_boundary() {
    for (kind, n, sig) in [(LatticeKind::Triangular, 30, [1, -1, 1, -1, 1, -1]), (LatticeKind::Kagome, 10, [0, 1, 1, 0, -1, -1]), (LatticeKind::T3464, 10, [0; 6])] {
        let d = build_domain(kind, n).unwrap();
        let b = from_signature(&d, sig).unwrap();
        let c = fill_in(&d, &b, None).unwrap();
        assert!(is_legal(&d, &c) && c.agrees_with(&d, &b));
    }
}

#[test]
fn extremal_fill_ins_bound_all_others() {
    let d = build_domain(LatticeKind::Triangular, 6).unwrap();
    let b = from_signature(&d, [1, -1, 1, -1, 1, -1]).unwrap();
    let c = fill_in(&d, &b, None).unwrap();
    let hi = extremal(&d, &c, Extremum::Max).unwrap();
    let lo = extremal(&d, &c, Extremum::Min).unwrap();
    assert!(matches!(compare(&d, &c, &lo).unwrap(), HeightOrder::FirstMajors | HeightOrder::Equal));
    assert!(matches!(compare(&d, &hi, &c).unwrap(), HeightOrder::FirstMajors | HeightOrder::Equal));
    assert_eq!(compare(&d, &hi, &lo).unwrap(), HeightOrder::FirstMajors);
    let (hh, hl) = (height(&d, &hi).unwrap(), height(&d, &lo).unwrap());
    assert!(hh.values.iter().zip(&hl.values).all(|(a, b)| a >= b));
}
