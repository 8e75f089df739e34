use proptest::prelude::*;

use flagproj::combinatorics::c_closed;
use flagproj::grassmann::{det_projection, products, sample_grassmannian, sample_rotation};
use flagproj::polytope::{fixtures, project_and_volume, Polytope};
use flagproj::{RandomStream, Rational};

fn dims() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=6).prop_flat_map(|d| (Just(d), 0..=d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn products_are_symmetric_and_sum_to_one((d, k) in dims(), seed in any::<u64>()) {
        let mut rng = RandomStream::new(seed, 0);
        let a = sample_grassmannian::<f64, _>(d, k, &mut rng);
        let b = sample_grassmannian::<f64, _>(d, k, &mut rng);
        let ab = products(&a, &b).unwrap();
        let ba = products(&b, &a).unwrap();
        for (x, y) in ab.iter().zip(&ba) {
            prop_assert!((x.abs() - y.abs()).abs() < 1e-12);
        }
        prop_assert!((ab.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn overlap_is_rotation_and_complement_invariant((d, k) in dims(), seed in any::<u64>()) {
        let mut rng = RandomStream::new(seed, 1);
        let a = sample_grassmannian::<f64, _>(d, k, &mut rng);
        let b = sample_grassmannian::<f64, _>(d, k, &mut rng);
        let c = det_projection(&a, &b).unwrap();
        let r = sample_rotation::<f64, _>(d, &mut rng);
        let rotated = det_projection(&a.transformed(&r).unwrap(), &b.transformed(&r).unwrap()).unwrap();
        prop_assert!((c - rotated).abs() < 1e-10);
        let perp = det_projection(&a.complement(), &b.complement()).unwrap();
        prop_assert!((c - perp).abs() < 1e-10);
    }

    #[test]
    fn c_constants_are_symmetric_in_k(d in 0usize..=12, k in 0usize..=12, i in 0usize..=6) {
        prop_assume!(k <= d && i <= k.min(d - k));
        prop_assert_eq!(c_closed::<Rational>(d, k, i).unwrap(), c_closed::<Rational>(d, d - k, i).unwrap());
    }

    #[test]
    fn projection_volume_is_homogeneous(d in 2usize..=4, seed in any::<u64>(), scale in 0.25f64..4.0) {
        let mut rng = RandomStream::new(seed, 2);
        let p = fixtures::random_gaussian(d, 2 * d * d, &mut rng).unwrap();
        let k = 1 + (seed as usize) % (d - 1).max(1);
        let e = sample_grassmannian::<f64, _>(d, k.min(d - 1), &mut rng);
        let scaled = Polytope::new(p.vertices().iter().map(|v| v.iter().map(|x| x * scale).collect()).collect()).unwrap();
        let base = project_and_volume(&p, &e).unwrap();
        let big = project_and_volume(&scaled, &e).unwrap();
        prop_assert!((big - scale.powi(e.dim() as i32) * base).abs() < 1e-9 * big.max(1.0));
    }
}
