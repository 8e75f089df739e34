use flagproj::grassmann::{sample_grassmannian, sample_rotation, sample_sphere, Subspace};
use flagproj::linalg::{dot, mat_vec};
use flagproj::polytope::{
    boundary_lemma_check, build_polytope, external_angle, fixtures, intrinsic_volume, io, project_and_volume,
    surface_area_measure_atoms, ConeSampler,
};
use flagproj::{Error, RandomStream};

fn choose(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[test]
fn cube_face_counts() {
    let p = fixtures::cube(3).unwrap();
    assert_eq!(p.f_vector(), vec![8, 12, 6]);
    // f_j(cube_d) = 2^{d−j} C(d, j)
    let p = fixtures::cube(5).unwrap();
    let want: Vec<usize> = (0..5).map(|j| (1 << (5 - j)) * choose(5, j) as usize).collect();
    assert_eq!(p.f_vector(), want);
}

#[test]
fn simplex_and_cross_polytope() {
    let s = fixtures::simplex(3).unwrap();
    assert_eq!(s.f_vector(), vec![4, 6, 4]);
    assert!((s.volume() - 1.0 / 6.0).abs() < 1e-15);
    let c = fixtures::cross_polytope(4).unwrap();
    assert_eq!(c.facets().len(), 16);
    assert_eq!(c.f_vector(), vec![8, 24, 32, 16]);
    // vol = 2^d / d!
    assert!((c.volume() - 16.0 / 24.0).abs() < 1e-12);
}

#[test]
fn face_invariants() {
    for p in [fixtures::cube(4).unwrap(), fixtures::simplex(5).unwrap(), fixtures::cross_polytope(3).unwrap()] {
        let d = p.dim();
        for k in 0..d {
            for f in p.faces(k) {
                assert_eq!(f.tangent.dim(), k);
                assert_eq!(f.normal_span.dim(), d - k);
                assert!(f.volume > 0.0);
                for t in f.tangent.basis() {
                    assert!(f.normal_span.projection_norm(t) < 1e-12);
                }
                for &i in &f.incident_facet_ids {
                    let n = &p.facets()[i].normal;
                    assert!(f.normal_span.contains(n, 1e-9));
                    for &v in &f.vertex_ids {
                        assert!((dot(n, &p.vertices()[v]) - p.facets()[i].offset).abs() < 1e-9);
                    }
                }
            }
        }
        for facet in p.facets() {
            assert!(p.vertices().iter().all(|v| dot(&facet.normal, v) <= facet.offset + 1e-9));
        }
    }
}

#[test]
fn interior_points_are_rejected() {
    let mut v = fixtures::cube(3).unwrap().vertices().to_vec();
    v.push(vec![0.5, 0.5, 0.5]);
    assert!(matches!(build_polytope(v), Err(Error::NotVerticesOfHull(8))));
    let mut v = fixtures::cube(3).unwrap().vertices().to_vec();
    v.push(vec![0.5, 0.0, 0.0]);
    assert!(matches!(build_polytope(v), Err(Error::NotVerticesOfHull(8))));
}

#[test]
fn degenerate_and_oversized_inputs() {
    let flat = vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![1.0, 1.0, 0.0]];
    assert!(matches!(build_polytope(flat), Err(Error::NotFullDimensional)));
    assert!(matches!(fixtures::cube(7), Err(Error::TooLarge(_))));
}

#[test]
fn surface_area_atoms_close_up() {
    let mut rng = RandomStream::new(11, 0);
    let mut bodies = vec![fixtures::cube(3).unwrap(), fixtures::simplex(4).unwrap()];
    bodies.extend((0..5).map(|_| fixtures::random_gaussian(3, 18, &mut rng).unwrap()));
    for p in bodies {
        let mut s = vec![0.0; p.dim()];
        for (n, a) in surface_area_measure_atoms(&p) {
            for (si, ni) in s.iter_mut().zip(&n) {
                *si += a * ni;
            }
        }
        assert!(s.iter().all(|x| x.abs() < 1e-9), "{s:?}");
    }
    let area: f64 = surface_area_measure_atoms(&fixtures::cube(3).unwrap()).iter().map(|a| a.1).sum();
    assert!((area - 6.0).abs() < 1e-12);
}

#[test]
fn cube_intrinsic_volumes_exact_part() {
    let rng = RandomStream::new(1, 0);
    for d in 3..=5 {
        for a in [1.0, 0.7] {
            let p = fixtures::scaled_cube(d, a).unwrap();
            for k in d - 2..=d {
                let v = intrinsic_volume(&p, k, 0, &rng).unwrap();
                let want = choose(d, k) * a.powi(k as i32);
                assert_eq!(v.stderr, 0.0);
                assert!((v.mean - want).abs() < 1e-12, "d={d} k={k}: {} vs {want}", v.mean);
            }
        }
    }
}

#[test]
fn cube_intrinsic_volumes_monte_carlo_part() {
    let rng = RandomStream::new(2, 0);
    let p = fixtures::cube(4).unwrap();
    for k in 0..=1 {
        let v = intrinsic_volume(&p, k, 20_000, &rng).unwrap();
        assert!(v.z_score_against(choose(4, k)) < 3.5, "k={k}: {v:?}");
    }
}

#[test]
fn gauss_map_partition() {
    let rng = RandomStream::new(3, 0);
    let mut g = RandomStream::new(4, 0);
    for p in [fixtures::simplex(3).unwrap(), fixtures::random_gaussian(4, 20, &mut g).unwrap()] {
        let v0 = intrinsic_volume(&p, 0, 20_000, &rng).unwrap();
        assert!(v0.z_score_against(1.0) < 3.5, "{v0:?}");
    }
}

#[test]
fn cube_cone_accept_rates() {
    let p = fixtures::cube(3).unwrap();
    let mut rng = RandomStream::new(5, 0);
    let vertex = ConeSampler::new(&p, &p.faces(0)[0]).unwrap().accept_rate(200_000, &mut rng);
    assert!(vertex.z_score_against(0.125) < 3.5, "{vertex:?}");
    let edge = ConeSampler::new(&p, &p.faces(1)[0]).unwrap().accept_rate(200_000, &mut rng);
    assert!(edge.z_score_against(0.25) < 3.5, "{edge:?}");
    let exact = external_angle(&p, &p.faces(1)[0], 0, &mut rng).unwrap();
    assert!((exact.mean - 0.25).abs() < 1e-15);
    let facet = ConeSampler::new(&p, &p.faces(2)[3]).unwrap();
    assert_eq!(facet.accept_rate(10, &mut rng).mean, 0.5);
    let u = facet.sample(&mut rng).unwrap();
    assert_eq!(u, p.facets()[3].normal);
}

#[test]
fn cone_samples_are_outer_normals() {
    let mut rng = RandomStream::new(6, 0);
    let p = fixtures::random_gaussian(3, 15, &mut rng).unwrap();
    for f in p.faces(0).iter().chain(p.faces(1)) {
        let s = ConeSampler::new(&p, f).unwrap();
        for _ in 0..20 {
            let u = s.sample(&mut rng).unwrap();
            let top = dot(&u, &p.vertices()[f.vertex_ids[0]]);
            assert!(p.vertices().iter().all(|v| dot(&u, v) <= top + 1e-9));
            assert!(f.tangent.projection_norm(&u) < 1e-12);
        }
    }
}

#[test]
fn projection_examples() {
    let p = fixtures::cube(3).unwrap();
    let xy = Subspace::coordinate(3, &[0, 1]);
    assert!((project_and_volume(&p, &xy).unwrap() - 1.0).abs() < 1e-12);
    let x = Subspace::coordinate(3, &[0]);
    assert!((project_and_volume(&p, &x).unwrap() - 1.0).abs() < 1e-12);
    let n = [1.0 / 3f64.sqrt(); 3];
    let e = Subspace::line(&n).unwrap().complement();
    assert!((project_and_volume(&p, &e).unwrap() - 3f64.sqrt()).abs() < 1e-12);
    let full = Subspace::full(3);
    assert!((project_and_volume(&p, &full).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn projection_is_rotation_invariant() {
    let mut rng = RandomStream::new(7, 0);
    for d in 3..=5 {
        let p = fixtures::random_gaussian(d, 2 * d * d, &mut rng).unwrap();
        for k in 1..d {
            let e = sample_grassmannian::<f64, _>(d, k, &mut rng);
            let r = sample_rotation::<f64, _>(d, &mut rng);
            let q = build_polytope(p.vertices().iter().map(|v| mat_vec(&r, v)).collect()).unwrap();
            let re = e.transformed(&r).unwrap();
            let a = project_and_volume(&p, &e).unwrap();
            let b = project_and_volume(&q, &re).unwrap();
            assert!((a - b).abs() < 1e-9 * a.max(1.0), "d={d} k={k}: {a} vs {b}");
        }
    }
}

#[test]
fn projection_of_simplex_onto_axis_plane() {
    // The shadow of conv(0, e_1, …, e_d) on span(e_1, e_2) is the unit
    // right triangle.
    for d in 3..=6 {
        let p = fixtures::simplex(d).unwrap();
        let e = Subspace::coordinate(d, &[0, 1]);
        assert!((project_and_volume(&p, &e).unwrap() - 0.5).abs() < 1e-12);
    }
}

#[test]
fn boundary_lemma() {
    let mut rng = RandomStream::new(8, 0);
    let p = fixtures::cube(3).unwrap();
    let l = Subspace::coordinate(3, &[0, 1]);
    assert!(boundary_lemma_check(&p, &l, 0.05, 200, &mut rng).unwrap());
    for _ in 0..3 {
        let q = fixtures::random_gaussian(3, 20, &mut rng).unwrap();
        let l = sample_grassmannian::<f64, _>(3, 2, &mut rng);
        assert!(boundary_lemma_check(&q, &l, 0.3, 500, &mut rng).unwrap());
        assert!(boundary_lemma_check(&q, &l, 0.99, 100, &mut rng).unwrap());
    }
    assert!(boundary_lemma_check(&p, &l, 1.5, 1, &mut rng).is_err());
}

#[test]
fn json_round_trip() {
    let mut rng = RandomStream::new(9, 0);
    let p = fixtures::random_gaussian(4, 32, &mut rng).unwrap();
    let s = io::to_json(&p).unwrap();
    assert!(s.contains("\"derived\""));
    let q = io::from_json(&s).unwrap();
    assert_eq!(p.vertices(), q.vertices());
    assert_eq!(p.f_vector(), q.f_vector());
    assert!(io::from_json(r#"{"dim": 2, "vertices": [[0, 0, 0]]}"#).is_err());
    let u = sample_sphere::<f64, _>(4, &mut rng);
    assert_eq!(p.support(&u), q.support(&u));
}
