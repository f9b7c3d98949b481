use approx::assert_relative_eq;
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use recoupling::geometry::{
    butterfly, classically_allowed, embed_tetrahedron, exterior_dihedrals, solve_j4,
    triple_product, EdgeSet, Orientation, PairLengths, Vec3, EDGE_PAIRS,
};
use recoupling::harness::validate::{check_flat, check_geometry, flat_edge_set, random_edge_set};
use recoupling::{Error, Spin, Symbol12Args};

fn with_j5(twice_j5: u32) -> Symbol12Args {
    let tw = [70, 2, 68, 78, 72, 56, 76, 62, 54, 58, twice_j5, 72];
    Symbol12Args::from_array(tw.map(Spin::from_twice))
}

/// Interior dihedral from face normals built out of explicit vertex
/// coordinates, independently of the embedding code.
fn dihedral_oracle(p: &[Vec3; 4], i: usize, j: usize) -> f64 {
    let (k, l) = {
        let r: Vec<usize> = (0..4).filter(|&m| m != i && m != j).collect();
        (r[0], r[1])
    };
    let e = (p[j] - p[i]).normalize();
    // components of the other two vertices perpendicular to the edge
    let u = p[k] - p[i] - e * e.dot(&(p[k] - p[i]));
    let v = p[l] - p[i] - e * e.dot(&(p[l] - p[i]));
    (u.dot(&v) / (u.norm() * v.norm())).acos()
}

#[test]
fn dihedrals_match_perpendicular_foot_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    use rand::Rng;
    for _ in 0..200 {
        let p: [Vec3; 4] = [(); 4].map(|_| {
            Vec3::new(
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
            )
        });
        let lengths = PairLengths::from_array(EDGE_PAIRS.map(|(i, j)| (p[i] - p[j]).norm()));
        let Ok(t) = embed_tetrahedron(lengths) else {
            continue;
        };
        if t.margin < 1e-3 {
            continue;
        }
        let psi = exterior_dihedrals(&t).unwrap();
        for (k, &(i, j)) in EDGE_PAIRS.iter().enumerate() {
            let interior = dihedral_oracle(&p, i, j);
            assert_relative_eq!(psi[k], std::f64::consts::PI - interior, epsilon = 1e-9);
        }
        let vol = triple_product(&(p[1] - p[0]), &(p[2] - p[0]), &(p[3] - p[0])).abs();
        assert_relative_eq!(t.triple, vol, max_relative = 1e-10);
    }
}

#[test]
fn interior_configuration() {
    let a = with_j5(60);
    let edges = EdgeSet::from_args(&a);
    let (allowed, m1, m2) = classically_allowed(&edges);
    assert!(allowed && m1 > 0.0 && m2 > 0.0);
    let b = butterfly(&edges).unwrap();
    for cfg in [b.opposite, b.same] {
        assert!(cfg.residual(&edges) < 1e-12);
        assert!(cfg.coplanarity().abs() < 1e-10);
    }
    assert_eq!(b.opposite.orientation, Orientation::Opposite);
    assert_eq!(b.same.orientation, Orientation::Same);
    // the classes differ only in the J4 branch
    assert_eq!(b.opposite.j1, b.same.j1);
    assert_eq!(b.opposite.j5, b.same.j5);
    assert_ne!(b.opposite.j4, b.same.j4);
    // J135 as the vector J4 + J6 = −(J1 + J3 + J5)
    let k = -b.opposite.j135();
    let [p, m] = solve_j4(
        &b.opposite.j3,
        &k,
        edges.j4.get(),
        edges.j34.get(),
        edges.j6.get(),
    )
    .unwrap();
    let t = |v: Vec3| v.dot(&b.opposite.j3.cross(&k));
    assert!(t(p) > 0.0 && t(m) < 0.0);
    assert!(b.tetra1.triple.abs() > 1.0 && b.tetra2.triple.abs() > 1.0);
}

#[test]
fn allowed_window_is_contiguous() {
    let flags: Vec<bool> = (0..=146)
        .step_by(2)
        .map(|t| classically_allowed(&EdgeSet::from_args(&with_j5(t))).0)
        .collect();
    let first = flags.iter().position(|&f| f).unwrap();
    let last = flags.iter().rposition(|&f| f).unwrap();
    assert!(flags[first..=last].iter().all(|&f| f));
    assert!(first > 0);
}

#[test]
fn solve_j4_degenerate_inputs() {
    let j3 = Vec3::new(0.0, 0.0, 2.0);
    assert!(matches!(
        solve_j4(&j3, &(j3 * 2.0), 1.0, 2.5, 2.0),
        Err(Error::UndefinedAngle(_))
    ));
    // |J4| too short to reach both spheres
    let k = Vec3::new(3.0, 0.0, 0.0);
    assert!(matches!(
        solve_j4(&j3, &k, 0.1, 3.0, 5.0),
        Err(Error::Forbidden { .. })
    ));
}

#[test]
fn flat_inputs_are_flagged_not_nan() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let e = flat_edge_set(&mut rng);
        check_flat(&e).unwrap();
        match butterfly(&e) {
            Err(Error::Caustic { margin }) => assert!(margin.is_finite()),
            Err(Error::Forbidden { determinant }) => assert!(determinant.is_finite()),
            Err(other) => panic!("unexpected error {other}"),
            Ok(_) => panic!("flat configuration accepted"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_edge_sets_satisfy_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_edge_set(&mut rng);
        prop_assert!(check_geometry(&mut rng, &e).is_ok(), "{:?}", check_geometry(&mut rng, &e));
    }

    #[test]
    fn margin_is_scale_free(seed in any::<u64>(), f in 0.01f64..100.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_edge_set(&mut rng);
        let (_, a1, a2) = classically_allowed(&e);
        let (_, b1, b2) = classically_allowed(&e.scaled(f));
        prop_assert!((a1 - b1).abs() <= 1e-10 * a1.abs().max(1.0));
        prop_assert!((a2 - b2).abs() <= 1e-10 * a2.abs().max(1.0));
    }

    #[test]
    fn embedding_reproduces_lengths(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_edge_set(&mut rng);
        for l in [e.tetra1(), e.tetra2()] {
            let t = embed_tetrahedron(l).unwrap();
            for &(i, j) in &EDGE_PAIRS {
                let (d, want) = (t.distance(i, j), l.get(i, j));
                prop_assert!((d - want).abs() <= 1e-12 * want.max(1.0));
            }
        }
    }
}
