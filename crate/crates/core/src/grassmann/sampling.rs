use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Subspace;
use crate::error::{Error, Result};
use crate::linalg::{axpy, norm};
use crate::scalar::Real;

/// A point `(u, U)` of the flag manifold: a unit vector inside a subspace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlagElement<T> {
    pub u: Vec<T>,
    pub subspace: Subspace<T>,
}

impl<T: Real> FlagElement<T> {
    pub fn new(u: Vec<T>, subspace: Subspace<T>) -> Result<Self> {
        if (norm(&u) - T::one()).abs() > T::tol(1e-12) {
            return Err(Error::Invalid("flag vector is not a unit vector".into()));
        }
        if !subspace.contains(&u, T::tol(1e-10)) {
            return Err(Error::Invalid("flag vector not contained in its subspace".into()));
        }
        Ok(Self { u, subspace })
    }
}

fn gaussian_vector<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<T> {
    (0..d).map(|_| T::standard_normal(rng)).collect()
}

/// Uniform (rotation invariant) random element of `G(d, k)`: a `d×k`
/// Gaussian matrix, orthonormalized.
pub fn sample_grassmannian<T: Real, R: Rng + ?Sized>(d: usize, k: usize, rng: &mut R) -> Subspace<T> {
    assert!(k <= d, "G({d},{k}) is empty");
    if k == 0 {
        return Subspace::trivial(d);
    }
    if k == d {
        return Subspace::full(d);
    }
    loop {
        let cols: Vec<Vec<T>> = (0..k).map(|_| gaussian_vector(d, rng)).collect();
        if let Ok(s) = Subspace::orthonormalize(d, &cols) {
            return s;
        }
    }
}

/// Uniform random `q`-subspace containing the unit vector `u`:
/// `⟨u⟩ + W` with W uniform on `G(u^⊥, q-1)`.
pub fn sample_grassmannian_containing_line<T: Real, R: Rng + ?Sized>(
    u: &[T],
    q: usize,
    rng: &mut R,
) -> Subspace<T> {
    let d = u.len();
    assert!((1..=d).contains(&q), "q = {q} outside 1..={d}");
    if q == d {
        return Subspace::full(d);
    }
    loop {
        let mut cols = vec![u.to_vec()];
        cols.extend((1..q).map(|_| gaussian_vector(d, rng)));
        if let Ok(s) = Subspace::orthonormalize(d, &cols) {
            return s;
        }
    }
}

/// Uniform point on the unit sphere of `L`.
pub fn sample_sphere_in_subspace<T: Real, R: Rng + ?Sized>(
    l: &Subspace<T>,
    rng: &mut R,
) -> Result<Vec<T>> {
    if l.dim() == 0 {
        return Err(Error::DimZero);
    }
    loop {
        let mut v = vec![T::zero(); l.ambient_dim()];
        for b in l.basis() {
            axpy(&mut v, T::standard_normal(rng), b);
        }
        let n = norm(&v);
        if n > T::zero() {
            return Ok(v.into_iter().map(|x| x / n).collect());
        }
    }
}

/// Uniform point on `S^{d-1}`.
pub fn sample_sphere<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<T> {
    loop {
        let v: Vec<T> = gaussian_vector(d, rng);
        let n = norm(&v);
        if n > T::zero() {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Invariant random flag in `F(d, q)`: uniform `u`, then `U` uniform
/// among `q`-subspaces through `u`.
pub fn sample_flag<T: Real, R: Rng + ?Sized>(d: usize, q: usize, rng: &mut R) -> FlagElement<T> {
    let u = sample_sphere(d, rng);
    let subspace = sample_grassmannian_containing_line(&u, q, rng);
    FlagElement { u, subspace }
}

/// Haar-distributed orthogonal matrix (rows).
pub fn sample_rotation<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Vec<T>> {
    loop {
        let cols: Vec<Vec<T>> = (0..d).map(|_| gaussian_vector(d, rng)).collect();
        if let Ok(s) = Subspace::orthonormalize(d, &cols) {
            return s.basis().to_vec();
        }
    }
}
