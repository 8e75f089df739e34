//! Subspaces of `R^d`, the products `⟨A,B⟩` and `⟨A,B⟩_i`, and invariant
//! sampling on Grassmannians and flag manifolds.

mod products;
mod sampling;
mod subspace;

pub use products::{
    det_projection, hyperplane_section, intersect_with_hyperplane, product_i, products, AMBIGUOUS_BAND, ZERO_BRANCH,
};
pub use sampling::{
    sample_flag, sample_grassmannian, sample_grassmannian_containing_line, sample_rotation,
    sample_sphere, sample_sphere_in_subspace, FlagElement,
};
pub use subspace::{Subspace, RANK_TOLERANCE};
