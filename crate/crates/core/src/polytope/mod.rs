//! Convex polytopes given by their vertices: hull, face lattice, normal
//! cones and external angles, intrinsic volumes, and the direct projection
//! oracle `V_k(P | E)`.

mod cone;
pub mod fixtures;
pub mod hull;
pub mod io;
mod lattice;
mod measures;

pub use cone::{external_angle, sample_normal_cone, ConeSampler, MAX_PROPOSALS};
pub use lattice::{Face, Facet, Polytope, INCIDENCE_TOL, MAX_DIM, MAX_VERTICES};
pub use measures::{boundary_lemma_check, intrinsic_volume, project_and_volume, surface_area_measure_atoms};

/// Builds a polytope from its vertices.
pub fn build_polytope(vertices: Vec<Vec<f64>>) -> crate::Result<Polytope> {
    Polytope::new(vertices)
}
