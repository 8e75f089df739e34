use rand::Rng;
use rand_distr::{Distribution, Exp1};

use super::cone::external_angle;
use super::hull::{self, affine_rank};
use super::lattice::Polytope;
use crate::error::{Error, Result};
use crate::grassmann::Subspace;
use crate::linalg::dot;
use crate::mc::MCEstimate;
use crate::rng::RandomStream;

/// `V_k(P)`. Exact for `k ≥ d − 2`; for smaller `k` the external angles are
/// estimated with `n` cone proposals per face, face `i` using substream `i`.
pub fn intrinsic_volume(p: &Polytope, k: usize, n: u64, rng: &RandomStream) -> Result<MCEstimate> {
    let d = p.dim();
    if k > d {
        return Err(Error::OutOfRange(format!("V_{k} of a {d}-polytope")));
    }
    if k == d {
        return Ok(MCEstimate::exact(p.volume()));
    }
    let parts = p
        .faces(k)
        .iter()
        .enumerate()
        .map(|(i, f)| Ok(external_angle(p, f, n, &mut rng.substream(i as u64))?.scaled(f.volume)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MCEstimate::sum(parts, rng.seed()))
}

/// Atoms `(normal, area)` of the surface area measure, one per facet.
pub fn surface_area_measure_atoms(p: &Polytope) -> Vec<(Vec<f64>, f64)> {
    let d = p.dim();
    p.facets()
        .iter()
        .zip(p.faces(d - 1))
        .map(|(f, face)| (f.normal.clone(), face.volume))
        .collect()
}

/// Coordinates of the vertices of `p` in an orthonormal basis of `e`.
fn projected_vertices(p: &Polytope, e: &Subspace<f64>) -> Result<Vec<Vec<f64>>> {
    if e.ambient_dim() != p.dim() {
        return Err(Error::DimMismatch(format!(
            "subspace of R^{} against a polytope in R^{}",
            e.ambient_dim(),
            p.dim()
        )));
    }
    Ok(p.vertices().iter().map(|v| e.coordinates(v)).collect())
}

/// `V_k(P | E)` with `k = dim E`, computed directly from the projected hull.
/// Returns 0 when the projection is not `k`-dimensional.
pub fn project_and_volume(p: &Polytope, e: &Subspace<f64>) -> Result<f64> {
    if e.dim() == 0 {
        return Err(Error::OutOfRange("projection onto the zero subspace".into()));
    }
    let pts = projected_vertices(p, e)?;
    let tol = hull::tolerance(&pts);
    let refs: Vec<&[f64]> = pts.iter().map(Vec::as_slice).collect();
    if affine_rank(&refs, tol) < e.dim() {
        return Ok(0.0);
    }
    hull::volume(&pts, tol)
}

/// Checks that boundary points whose facet normal `u` satisfies
/// `‖u|L‖ ≥ √(1 − eps²)` project to within `eps · diam(P)` of the relative
/// boundary of `P | L`.
///
/// Facets are drawn with probability proportional to area and points inside
/// them as Dirichlet-weighted vertex combinations. Returns `true` when no
/// facet qualifies.
pub fn boundary_lemma_check(
    p: &Polytope,
    l: &Subspace<f64>,
    eps: f64,
    trials: u64,
    rng: &mut RandomStream,
) -> Result<bool> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::OutOfRange(format!("eps = {eps} outside (0, 1)")));
    }
    if l.dim() == 0 || l.dim() >= p.dim() {
        return Err(Error::OutOfRange(format!("dim L = {} in R^{}", l.dim(), p.dim())));
    }
    let pts = projected_vertices(p, l)?;
    let tol = hull::tolerance(&pts);
    let shadow = hull::facets(&pts, tol)?;
    let threshold = (1.0 - eps * eps).sqrt();
    let d = p.dim();
    let eligible: Vec<(usize, f64)> = p
        .facets()
        .iter()
        .zip(p.faces(d - 1))
        .enumerate()
        .filter(|(_, (f, _))| l.projection_norm(&f.normal) >= threshold)
        .map(|(i, (_, face))| (i, face.volume))
        .collect();
    let total: f64 = eligible.iter().map(|e| e.1).sum();
    if eligible.is_empty() {
        return Ok(true);
    }
    let bound = eps * p.diameter() + tol;
    for _ in 0..trials {
        let mut t = rng.random::<f64>() * total;
        let &(fi, _) = eligible
            .iter()
            .find(|e| {
                t -= e.1;
                t <= 0.0
            })
            .unwrap_or(eligible.last().expect("nonempty"));
        let face = &p.faces(d - 1)[fi];
        let weights: Vec<f64> = face.vertex_ids.iter().map(|_| Exp1.sample(rng)).collect();
        let sum: f64 = weights.iter().sum();
        let mut x = vec![0.0; d];
        for (&v, w) in face.vertex_ids.iter().zip(&weights) {
            crate::linalg::axpy(&mut x, w / sum, &p.vertices()[v]);
        }
        let y = l.coordinates(&x);
        let dist = shadow.iter().map(|h| h.offset - dot(&h.normal, &y)).fold(f64::INFINITY, f64::min);
        if dist > bound {
            return Ok(false);
        }
    }
    Ok(true)
}
