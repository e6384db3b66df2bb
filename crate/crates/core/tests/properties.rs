use icelat::analysis::heatmap;
use icelat::boundary::*;
use icelat::config::{boundary_profile, height, is_legal, signature_of};
use icelat::dynamics::*;
use icelat::io::{read_config, write_config};
use icelat::*;
use proptest::prelude::*;

fn kind_and_n() -> impl Strategy<Value = (LatticeKind, usize)> {
    prop_oneof![
        (Just(LatticeKind::Triangular), prop::sample::select(vec![4usize, 6, 8, 10])),
        (Just(LatticeKind::Kagome), prop::sample::select(vec![2usize, 4, 6])),
        (Just(LatticeKind::T3464), prop::sample::select(vec![2usize, 4, 6])),
    ]
}

fn start(d: &HexDomain) -> (BoundarySpec, Configuration) {
    let b = from_signature(d, [0; 6]).unwrap();
    let c = fill_in(d, &b, None).unwrap();
    (b, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sampler_keeps_ice_rule_and_boundary((kind, n) in kind_and_n(), seed in any::<u64>(), sweeps in 1u64..30) {
        let d = build_domain(kind, n).unwrap();
        let (b, c) = start(&d);
        let (out, stats) = run(&d, &b, &c, &Schedule::default_for(kind), 0, sweeps, seed, Parallelism::Sequential).unwrap();
        prop_assert!(is_legal(&d, &out));
        prop_assert!(out.agrees_with(&d, &b));
        prop_assert!(d.faces.iter().filter(|f| !f.off_boundary).all(|f| stats.per_face[f.id] == 0));
    }

    #[test]
    fn parallel_sweeps_match_sequential((kind, n) in kind_and_n(), seed in any::<u64>()) {
        let d = build_domain(kind, n).unwrap();
        let (b, c) = start(&d);
        let s = Schedule::default_for(kind);
        prop_assert_eq!(
            run(&d, &b, &c, &s, 3, 7, seed, Parallelism::Sequential).unwrap(),
            run(&d, &b, &c, &s, 3, 7, seed, Parallelism::Rayon).unwrap()
        );
    }

    #[test]
    fn flip_moves_one_height_by_two((kind, n) in kind_and_n(), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let d = build_domain(kind, n).unwrap();
        let (b, c) = start(&d);
        let c = run(&d, &b, &c, &Schedule::default_for(kind), 5, 0, seed, Parallelism::Sequential).unwrap().0;
        let faces = all_directed_faces(&d, &c);
        prop_assume!(!faces.is_empty());
        let df = faces[pick.index(faces.len())];
        let flipped = flip(&d, &c, df).unwrap();
        prop_assert!(is_legal(&d, &flipped));
        let back = flip(&d, &flipped, DirectedFace { face: df.face, orientation: df.orientation.opposite() }).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert!(flip(&d, &flipped, df).is_err());
        let (h0, h1) = (height(&d, &c).unwrap(), height(&d, &flipped).unwrap());
        let dual = d.faces[df.face].dual;
        let step = if df.orientation == Orientation::Ccw { 2 } else { -2 };
        for v in 0..h0.values.len() {
            prop_assert_eq!(h1.get(v) - h0.get(v), if v == dual { step } else { 0 });
        }
    }

    #[test]
    fn signature_round_trip((kind, n) in kind_and_n(), tilts in prop::array::uniform6(-1i32..=1)) {
        let d = build_domain(kind, n).unwrap();
        match from_signature(&d, tilts) {
            Ok(b) => {
                let p = boundary_profile(&d, &b).unwrap();
                prop_assert_eq!(signature_of(&p, &d).nominal(), tilts);
            }
            Err(IceError::Infeasible(_)) => prop_assert!(tilts.iter().sum::<i32>() != 0 || kind == LatticeKind::T3464),
            Err(IceError::NoMaximalTilt { .. }) => prop_assert!(kind == LatticeKind::T3464 && tilts.iter().any(|&t| t != 0)),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn config_file_round_trip((kind, n) in kind_and_n(), bits in prop::collection::vec(any::<bool>(), 2000)) {
        let d = build_domain(kind, n).unwrap();
        let c = Configuration::from_fn(&d, |e| bits[e % bits.len()]);
        prop_assert_eq!(read_config(&write_config(&c), &d).unwrap(), c);
    }

    #[test]
    fn heatmap_ignores_count_scale((kind, n) in kind_and_n(), counts in prop::collection::vec(0u64..50, 1..400), k in 2u64..5) {
        let d = build_domain(kind, n).unwrap();
        let mut st = FlipStats::new(d.faces.len(), 0, 1, 0);
        for (i, c) in st.per_face.iter_mut().enumerate() {
            *c = counts[i % counts.len()];
        }
        let mut scaled = st.clone();
        scaled.per_face.iter_mut().for_each(|c| *c *= k);
        prop_assert_eq!(heatmap(&st, &d, 3.0, None).unwrap(), heatmap(&scaled, &d, 3.0, None).unwrap());
    }
}
