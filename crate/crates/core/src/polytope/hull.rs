//! Convex hulls by gift wrapping.
//!
//! Facets are found by rotating supporting hyperplanes about ridges; the
//! ridges of a facet come from a recursive hull of the facet's points in
//! local coordinates. Non-simplicial facets, repeated points and interior
//! points are all handled, which the projection oracle relies on.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::grassmann::Subspace;
use crate::linalg::{dot, norm, rank, residual, sub, unit};

/// Facet of a full-dimensional point set: `⟨normal, x⟩ ≤ offset` on all
/// points, with equality (within tolerance) exactly on `members`.
#[derive(Clone, Debug)]
pub struct HullFacet {
    pub normal: Vec<f64>,
    pub offset: f64,
    pub members: Vec<usize>,
}

/// Contact tolerance for a point set, `1e-9` at unit scale.
pub fn tolerance(points: &[Vec<f64>]) -> f64 {
    let scale = points.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
    1e-9 * scale
}

/// Affine rank of a point set.
pub fn affine_rank(points: &[&[f64]], tol: f64) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<Vec<f64>> = rest.iter().map(|p| sub(p, p0)).collect();
            rank(&diffs, tol)
        }
    }
}

/// All facets of the hull of `points` in `R^m`; the points must affinely
/// span `R^m`. Facets come out sorted by member list.
pub fn facets(points: &[Vec<f64>], tol: f64) -> Result<Vec<HullFacet>> {
    let m = dimension(points)?;
    if m == 1 {
        return Ok(interval_facets(points, tol));
    }
    let first = initial_facet(points, m, tol)?;
    let mut seen: HashSet<Vec<usize>> = HashSet::from([first.members.clone()]);
    let mut queue = VecDeque::from([first]);
    let mut out = Vec::new();
    while let Some(facet) = queue.pop_front() {
        let (origin, frame) = local_frame(points, &facet);
        let local: Vec<Vec<f64>> = facet
            .members
            .iter()
            .map(|&i| frame.coordinates(&sub(&points[i], origin)))
            .collect();
        for ridge in facets(&local, tol)? {
            let w = frame.basis().iter().zip(&ridge.normal).fold(vec![0.0; m], |mut acc, (b, &c)| {
                crate::linalg::axpy(&mut acc, c, b);
                acc
            });
            let pivot = facet.members[ridge.members[0]];
            let next = rotate(points, &facet.normal, &w, pivot, tol)?;
            if seen.insert(next.members.clone()) {
                queue.push_back(next);
            }
        }
        out.push(facet);
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

/// `m`-volume of the hull of `points`, which must affinely span `R^m`.
///
/// Fans from the first point: `vol = Σ_F h_F vol(F) / m` over facets `F`
/// not containing it, where `h_F` is its distance to `aff F`.
pub fn volume(points: &[Vec<f64>], tol: f64) -> Result<f64> {
    let m = dimension(points)?;
    if m == 1 {
        let (lo, hi) = extent(points.iter().map(|p| p[0]));
        return Ok(hi - lo);
    }
    let apex = &points[0];
    let mut total = 0.0;
    for facet in facets(points, tol)? {
        let h = facet.offset - dot(&facet.normal, apex);
        if h <= tol {
            continue;
        }
        let (origin, frame) = local_frame(points, &facet);
        let local: Vec<Vec<f64>> = facet
            .members
            .iter()
            .map(|&i| frame.coordinates(&sub(&points[i], origin)))
            .collect();
        total += h * volume(&local, tol)? / m as f64;
    }
    Ok(total)
}

fn dimension(points: &[Vec<f64>]) -> Result<usize> {
    let m = points.first().map(Vec::len).ok_or(Error::NotFullDimensional)?;
    if m == 0 || points.iter().any(|p| p.len() != m) {
        return Err(Error::DimMismatch("hull points must share a positive dimension".into()));
    }
    Ok(m)
}

fn extent(xs: impl Iterator<Item = f64>) -> (f64, f64) {
    xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

fn interval_facets(points: &[Vec<f64>], tol: f64) -> Vec<HullFacet> {
    let (lo, hi) = extent(points.iter().map(|p| p[0]));
    let near = |t: f64| (0..points.len()).filter(|&i| (points[i][0] - t).abs() <= tol).collect::<Vec<_>>();
    let mut out = vec![
        HullFacet { normal: vec![-1.0], offset: -lo, members: near(lo) },
        HullFacet { normal: vec![1.0], offset: hi, members: near(hi) },
    ];
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

/// Orthonormal frame of the facet hyperplane, anchored at its first member.
fn local_frame<'a>(points: &'a [Vec<f64>], facet: &HullFacet) -> (&'a [f64], Subspace<f64>) {
    let frame = Subspace::line(&facet.normal).expect("unit normal").complement();
    (&points[facet.members[0]], frame)
}

/// Supporting hyperplane with normal `n` through `points[pivot]`, re-derived
/// from the points it touches.
fn support(points: &[Vec<f64>], n: Vec<f64>, pivot: usize, tol: f64) -> Result<HullFacet> {
    let base = dot(&n, &points[pivot]);
    let mut members = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let s = dot(&n, p) - base;
        if s > tol {
            return Err(Error::Hull(format!("point {i} lies {s:e} beyond a supporting hyperplane")));
        }
        if s >= -tol {
            members.push(i);
        }
    }
    let offset = members.iter().map(|&i| dot(&n, &points[i])).sum::<f64>() / members.len() as f64;
    Ok(HullFacet { normal: n, offset, members })
}

/// Tilts the hyperplane with normal `n` towards `w` (unit, `w ⊥ n`) about
/// the points on it, stopping at the first point met.
fn rotate(points: &[Vec<f64>], n: &[f64], w: &[f64], pivot: usize, tol: f64) -> Result<HullFacet> {
    let p0 = &points[pivot];
    let mut best: Option<f64> = None;
    for q in points {
        let rel = sub(q, p0);
        let c = dot(&rel, n);
        if c < -tol {
            let phi = (-c).atan2(dot(&rel, w));
            best = Some(best.map_or(phi, |b: f64| b.min(phi)));
        }
    }
    let phi = best.ok_or_else(|| Error::Hull("no point below the hyperplane; set is flat".into()))?;
    let mut next: Vec<f64> = n.iter().zip(w).map(|(a, b)| phi.cos() * a + phi.sin() * b).collect();
    let len = norm(&next);
    next.iter_mut().for_each(|x| *x /= len);
    support(points, next, pivot, tol)
}

fn initial_facet(points: &[Vec<f64>], m: usize, tol: f64) -> Result<HullFacet> {
    let pivot = (0..points.len())
        .min_by(|&a, &b| points[a][0].total_cmp(&points[b][0]))
        .expect("nonempty");
    let mut facet = support(points, {
        let mut n = vec![0.0; m];
        n[0] = -1.0;
        n
    }, pivot, tol)?;
    loop {
        let on: Vec<&[f64]> = facet.members.iter().map(|&i| points[i].as_slice()).collect();
        if affine_rank(&on, tol) + 1 >= m {
            return Ok(facet);
        }
        // Tilt direction: orthogonal to the normal and to the face found so
        // far; the standard vector with the largest residual is used.
        let mut blockers = vec![facet.normal.clone()];
        for p in &on[1..] {
            let r = residual(&sub(p, on[0]), &blockers);
            let len = norm(&r);
            if len > tol {
                blockers.push(r.iter().map(|x| x / len).collect());
            }
        }
        let w = (0..m)
            .map(|i| residual(&unit(m, i), &blockers))
            .max_by(|a, b| norm(a).total_cmp(&norm(b)))
            .expect("m ≥ 1");
        let len = norm(&w);
        let w: Vec<f64> = w.iter().map(|x| x / len).collect();
        facet = rotate(points, &facet.normal, &w, pivot, tol)?;
    }
}
