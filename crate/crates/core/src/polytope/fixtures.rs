use std::collections::BTreeSet;

use itertools::Itertools;

use super::hull;
use super::lattice::Polytope;
use crate::error::Result;
use crate::rng::RandomStream;
use crate::scalar::Real;

/// Unit cube `[0, 1]^d`.
pub fn cube(d: usize) -> Result<Polytope> {
    scaled_cube(d, 1.0)
}

/// Cube `[0, a]^d`.
pub fn scaled_cube(d: usize, a: f64) -> Result<Polytope> {
    Polytope::new((0..d).map(|_| [0.0, a]).multi_cartesian_product().collect())
}

/// Standard simplex `conv(0, e_1, …, e_d)`.
pub fn simplex(d: usize) -> Result<Polytope> {
    let mut v = vec![vec![0.0; d]];
    v.extend((0..d).map(|i| crate::linalg::unit(d, i)));
    Polytope::new(v)
}

/// Cross-polytope `conv(±e_i)`.
pub fn cross_polytope(d: usize) -> Result<Polytope> {
    let v = (0..d)
        .flat_map(|i| [1.0, -1.0].map(|s| crate::linalg::scale(&crate::linalg::unit(d, i), s)))
        .collect();
    Polytope::new(v)
}

/// Hull of `n` standard Gaussian points; only the hull vertices are kept,
/// in the order they were drawn.
pub fn random_gaussian(d: usize, n: usize, rng: &mut RandomStream) -> Result<Polytope> {
    let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| f64::standard_normal(rng)).collect()).collect();
    Polytope::new(hull_vertices(&pts)?)
}

/// Points of `pts` on the boundary of its hull, in input order.
pub fn hull_vertices(pts: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let tol = hull::tolerance(pts);
    let on: BTreeSet<usize> = hull::facets(pts, tol)?.into_iter().flat_map(|f| f.members).collect();
    Ok(on.into_iter().map(|i| pts[i].clone()).collect())
}
