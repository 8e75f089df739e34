use std::collections::BTreeSet;

use serde::Serialize;

use super::hull::{self, affine_rank};
use crate::error::{Error, Result};
use crate::grassmann::Subspace;
use crate::linalg::{dot, norm, sub};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 6;
/// Largest supported vertex count (vertex sets are stored as `u128` masks).
pub const MAX_VERTICES: usize = 100;
/// Vertex–facet contact tolerance at unit scale.
pub const INCIDENCE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Face {
    pub dim: usize,
    pub vertex_ids: Vec<usize>,
    pub incident_facet_ids: Vec<usize>,
    /// `dim`-dimensional volume; 1 for vertices.
    pub volume: f64,
    /// Direction space of the affine hull.
    pub tangent: Subspace<f64>,
    /// Orthogonal complement of `tangent`.
    pub normal_span: Subspace<f64>,
    #[serde(skip)]
    mask: u128,
}

impl Face {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.mask >> v & 1 == 1
    }
}

/// A full-dimensional convex polytope with its complete face lattice.
///
/// `faces[j]` lists the `j`-faces for `j < dim`, sorted by vertex ids;
/// `faces[dim - 1][i]` is the facet `facets[i]`.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    facets: Vec<Facet>,
    faces: Vec<Vec<Face>>,
    volume: f64,
    diameter: f64,
}

impl Polytope {
    /// Builds the polytope whose vertex set is exactly `vertices`.
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let d = vertices.first().map_or(0, Vec::len);
        if d == 0 {
            return Err(Error::NotFullDimensional);
        }
        if vertices.iter().any(|v| v.len() != d) {
            return Err(Error::DimMismatch("vertices of differing length".into()));
        }
        if d > MAX_DIM || vertices.len() > MAX_VERTICES {
            return Err(Error::TooLarge(format!(
                "{} vertices in dimension {d}; limits are {MAX_VERTICES} and {MAX_DIM}",
                vertices.len()
            )));
        }
        if vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Invalid("non-finite coordinate".into()));
        }
        let tol = hull::tolerance(&vertices);
        let refs: Vec<&[f64]> = vertices.iter().map(Vec::as_slice).collect();
        if vertices.len() <= d || affine_rank(&refs, tol) < d {
            return Err(Error::NotFullDimensional);
        }

        let hull_facets = hull::facets(&vertices, tol)?;
        let facet_masks: Vec<u128> = hull_facets.iter().map(|f| mask_of(&f.members)).collect();
        for v in 0..vertices.len() {
            // A vertex is the only point on every facet through it.
            let meet = facet_masks.iter().filter(|&&m| m >> v & 1 == 1).fold(u128::MAX, |a, &m| a & m);
            if meet != 1u128 << v {
                return Err(Error::NotVerticesOfHull(v));
            }
        }
        let facets: Vec<Facet> = hull_facets
            .iter()
            .map(|f| Facet { normal: f.normal.clone(), offset: f.offset })
            .collect();

        let centroid: Vec<f64> =
            (0..d).map(|i| vertices.iter().map(|v| v[i]).sum::<f64>() / vertices.len() as f64).collect();
        if facets.iter().any(|f| f.offset - dot(&f.normal, &centroid) <= tol) {
            return Err(Error::NotFullDimensional);
        }

        let masks = face_masks(&facet_masks);
        let mut faces: Vec<Vec<Face>> = vec![Vec::new(); d];
        for mask in masks {
            let face = make_face(&vertices, &facet_masks, mask, tol)?;
            if face.dim >= d {
                return Err(Error::Hull("face of full dimension".into()));
            }
            faces[face.dim].push(face);
        }
        for list in &mut faces {
            list.sort_by(|a, b| a.vertex_ids.cmp(&b.vertex_ids));
        }
        // Facets in the same order as `faces[d - 1]`.
        debug_assert!(faces[d - 1].iter().zip(&hull_facets).all(|(f, h)| f.vertex_ids == h.members));

        let volume = hull::volume(&vertices, tol)?;
        let diameter = vertices
            .iter()
            .enumerate()
            .flat_map(|(i, a)| vertices[i + 1..].iter().map(move |b| norm(&sub(a, b))))
            .fold(0.0, f64::max);
        Ok(Self { dim: d, vertices, facets, faces, volume, diameter })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// The `k`-faces, `0 ≤ k < dim`.
    pub fn faces(&self, k: usize) -> &[Face] {
        &self.faces[k]
    }

    /// Face counts `f_0, …, f_{d−1}`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// `max_v ⟨u, v⟩` over the vertices.
    pub fn support(&self, u: &[f64]) -> f64 {
        self.vertices.iter().map(|v| dot(u, v)).fold(f64::NEG_INFINITY, f64::max)
    }
}

fn mask_of(ids: &[usize]) -> u128 {
    ids.iter().fold(0, |m, &i| m | 1u128 << i)
}

fn ids_of(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Every nonempty intersection of facets, closed under intersection.
fn face_masks(facets: &[u128]) -> Vec<u128> {
    let mut all: BTreeSet<u128> = facets.iter().copied().collect();
    let mut frontier: Vec<u128> = facets.to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &g in &frontier {
            for &h in facets {
                let k = g & h;
                if k != 0 && k != g && all.insert(k) {
                    next.push(k);
                }
            }
        }
        frontier = next;
    }
    all.into_iter().collect()
}

fn make_face(vertices: &[Vec<f64>], facet_masks: &[u128], mask: u128, tol: f64) -> Result<Face> {
    let d = vertices[0].len();
    let vertex_ids = ids_of(mask);
    let incident_facet_ids: Vec<usize> = (0..facet_masks.len()).filter(|&i| facet_masks[i] & mask == mask).collect();
    let v0 = &vertices[vertex_ids[0]];
    let diffs: Vec<Vec<f64>> = vertex_ids[1..].iter().map(|&i| sub(&vertices[i], v0)).collect();
    let tangent = Subspace::span(d, &diffs, tol);
    let dim = tangent.dim();
    let volume = match dim {
        0 => 1.0,
        _ => {
            let local: Vec<Vec<f64>> = vertex_ids.iter().map(|&i| tangent.coordinates(&sub(&vertices[i], v0))).collect();
            hull::volume(&local, tol)?
        }
    };
    if volume <= 0.0 {
        return Err(Error::Hull(format!("face {vertex_ids:?} has volume {volume}")));
    }
    Ok(Face {
        dim,
        normal_span: tangent.complement(),
        tangent,
        vertex_ids,
        incident_facet_ids,
        volume,
        mask,
    })
}
