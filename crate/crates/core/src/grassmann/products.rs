use itertools::Itertools;

use super::Subspace;
use crate::error::{Error, Result};
use crate::linalg::{det, dot, norm};
use crate::scalar::Real;

/// `‖proj_A(u)‖` at or below this counts as exactly zero.
pub const ZERO_BRANCH: f64 = 1e-10;
/// `‖proj_A(u)‖` in `(ZERO_BRANCH, AMBIGUOUS_BAND)` makes `A ∩ u^⊥` ill-posed.
pub const AMBIGUOUS_BAND: f64 = 1e-8;

fn check_same_dims<T: Real>(a: &Subspace<T>, b: &Subspace<T>) -> Result<()> {
    if a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim() {
        return Err(Error::DimMismatch(format!(
            "G({},{}) vs G({},{})",
            a.ambient_dim(),
            a.dim(),
            b.ambient_dim(),
            b.dim()
        )));
    }
    Ok(())
}

/// `|⟨A,B⟩| = |det(Aᵀ B)|`, the absolute determinant of the projection
/// between equal-dimensional subspaces.
pub fn det_projection<T: Real>(a: &Subspace<T>, b: &Subspace<T>) -> Result<T> {
    check_same_dims(a, b)?;
    let m: Vec<Vec<T>> = a
        .basis()
        .iter()
        .map(|ai| b.basis().iter().map(|bj| dot(ai, bj)).collect())
        .collect();
    Ok(det(&m).abs().min(T::one()))
}

/// All graded products `⟨A,B⟩_i`, `i = 0..=min(k, d-k)`.
///
/// B's basis is expressed in the frame `(a_1..a_k, a'_1..a'_{d-k})` made of
/// A's basis followed by a basis of `A^⊥`. `⟨A,B⟩_i²` is the sum of squared
/// `k×k` minors whose row set takes exactly `i` rows from the `A^⊥` block.
/// By Cauchy-Binet the squares sum to one.
pub fn products<T: Real>(a: &Subspace<T>, b: &Subspace<T>) -> Result<Vec<T>> {
    check_same_dims(a, b)?;
    let d = a.ambient_dim();
    let k = a.dim();
    let top = k.min(d - k);
    let complement = a.complement();
    let frame: Vec<&Vec<T>> = a.basis().iter().chain(complement.basis()).collect();
    // coords[r][c] = ⟨frame_r, b_c⟩
    let coords: Vec<Vec<T>> = frame
        .iter()
        .map(|f| b.basis().iter().map(|bc| dot(f, bc)).collect())
        .collect();
    let mut sums = vec![T::zero(); top + 1];
    for rows in (0..d).combinations(k) {
        let grade = rows.iter().filter(|&&r| r >= k).count();
        let minor: Vec<Vec<T>> = rows.iter().map(|&r| coords[r].clone()).collect();
        let m = det(&minor);
        sums[grade] = sums[grade] + m * m;
    }
    Ok(sums.into_iter().map(|s| s.sqrt().min(T::one())).collect())
}

/// `⟨A,B⟩_i`.
pub fn product_i<T: Real>(a: &Subspace<T>, b: &Subspace<T>, i: usize) -> Result<T> {
    check_same_dims(a, b)?;
    let max = a.dim().min(a.ambient_dim() - a.dim());
    if i > max {
        return Err(Error::IndexOutOfRange { index: i, max });
    }
    Ok(products(a, b)?[i])
}

/// `A ∩ u^⊥`, obtained by removing the direction of `u`'s projection onto A.
///
/// The dimension drops by one when u has a component in A and is unchanged
/// when `u ⊥ A`; projections in the ambiguous band are rejected.
pub fn intersect_with_hyperplane<T: Real>(a: &Subspace<T>, u: &[T]) -> Result<Subspace<T>> {
    let d = a.ambient_dim();
    if u.len() != d {
        return Err(Error::DimMismatch("hyperplane normal length".into()));
    }
    let c = a.coordinates(u);
    let n = norm(&c);
    if n <= T::tol(ZERO_BRANCH) {
        return Ok(a.clone());
    }
    if n < T::tol(AMBIGUOUS_BAND) {
        return Err(Error::DegenerateConfiguration(format!(
            "‖u|A‖ = {:e} between {ZERO_BRANCH:e} and {AMBIGUOUS_BAND:e}",
            n.as_f64()
        )));
    }
    Ok(section_along(a, &c))
}

/// `A ∩ u^⊥` without the ambiguity check: `A` itself when `‖u|A‖` is at
/// most [`ZERO_BRANCH`], the complement of `u`'s projection otherwise.
pub fn hyperplane_section<T: Real>(a: &Subspace<T>, u: &[T]) -> Subspace<T> {
    let c = a.coordinates(u);
    if norm(&c) <= T::tol(ZERO_BRANCH) {
        return a.clone();
    }
    section_along(a, &c)
}

/// Complement of the line through the coordinates `c`, taken inside A's own
/// coordinate space and mapped back.
fn section_along<T: Real>(a: &Subspace<T>, c: &[T]) -> Subspace<T> {
    let d = a.ambient_dim();
    let rest = Subspace::line(c).expect("nonzero coordinates").complement();
    let basis = rest
        .basis()
        .iter()
        .map(|z| {
            let mut v = vec![T::zero(); d];
            for (zj, bj) in z.iter().zip(a.basis()) {
                crate::linalg::axpy(&mut v, *zj, bj);
            }
            v
        })
        .collect();
    Subspace { ambient_dim: d, basis }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{sample_grassmannian, sample_sphere_in_subspace};
    use crate::rng::RandomStream;

    #[test]
    fn det_projection_examples() {
        let a = Subspace::<f64>::coordinate(3, &[0]);
        assert!((det_projection(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        let b = Subspace::<f64>::coordinate(3, &[1]);
        assert_eq!(det_projection(&a, &b).unwrap(), 0.0);
        let c = Subspace::line(&[1.0, 1.0, 0.0]).unwrap();
        assert!((det_projection(&a, &c).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        let p = Subspace::<f64>::coordinate(3, &[0, 1]);
        assert!(matches!(det_projection(&a, &p), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn product_i_examples() {
        let a = Subspace::<f64>::coordinate(4, &[0, 1]);
        assert!((product_i(&a, &a, 0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(product_i(&a, &a, 1).unwrap(), 0.0);
        assert_eq!(product_i(&a, &a, 2).unwrap(), 0.0);

        let b = Subspace::<f64>::coordinate(4, &[0, 2]);
        let p = products(&a, &b).unwrap();
        assert!(p[0].abs() < 1e-15);
        assert!((p[1] - 1.0).abs() < 1e-15);
        assert!(p[2].abs() < 1e-15);

        assert!(matches!(
            product_i(&a, &b, 3),
            Err(Error::IndexOutOfRange { index: 3, max: 2 })
        ));
    }

    #[test]
    fn zero_dimensional_products_are_one() {
        let z = Subspace::<f64>::trivial(3);
        assert_eq!(products(&z, &z).unwrap(), vec![1.0]);
        assert_eq!(det_projection(&z, &z).unwrap(), 1.0);
    }

    #[test]
    fn random_parseval_and_complement_orthogonality() {
        let mut rng = RandomStream::new(11, 0);
        for _ in 0..20 {
            let a = sample_grassmannian::<f64, _>(5, 2, &mut rng);
            let b = sample_grassmannian::<f64, _>(5, 2, &mut rng);
            let s: f64 = products(&a, &b).unwrap().iter().map(|x| x * x).sum();
            assert!((s - 1.0).abs() < 1e-10);
            let c = a.complement();
            for x in a.basis() {
                for y in c.basis() {
                    assert!(dot(x, y).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn intersect_examples() {
        let full = Subspace::<f64>::full(3);
        let r = intersect_with_hyperplane(&full, &[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(r.dim(), 2);
        assert!(r.basis().iter().all(|b| b[2].abs() < 1e-15));

        let plane = Subspace::<f64>::coordinate(3, &[0, 1]);
        let same = intersect_with_hyperplane(&plane, &[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(same, plane);

        let mut rng = RandomStream::new(5, 1);
        for _ in 0..20 {
            let a = sample_grassmannian::<f64, _>(5, 3, &mut rng);
            let u = sample_sphere_in_subspace(&a, &mut rng).unwrap();
            let r = intersect_with_hyperplane(&a, &u).unwrap();
            assert_eq!(r.dim(), 2);
            for b in r.basis() {
                assert!(dot(b, &u).abs() < 1e-10);
                assert!(a.contains(b, 1e-10));
            }
        }
    }

    #[test]
    fn intersect_rejects_ambiguous_band() {
        let plane = Subspace::<f64>::coordinate(3, &[0, 1]);
        let u = crate::linalg::normalized(&[1e-9, 0.0, 1.0]).unwrap();
        assert!(matches!(
            intersect_with_hyperplane(&plane, &u),
            Err(Error::DegenerateConfiguration(_))
        ));
    }
}
