//! Exact combinatorial constants, their Monte Carlo counterparts, and the
//! Grassmannian kernel built from them.

mod binomial;
mod constants;
mod identity;
mod kernel;
mod montecarlo;
mod sphere;

pub use binomial::{binom, binomial};
pub use constants::{
    alpha_explicit, alpha_solve, alpha_times_d, c_closed, d_matrix, f_term, recursion_factors, AlphaVector,
    Matrix, RationalMatrix,
};
pub use identity::{identity_lhs, identity_rhs, verify_identity};
pub use kernel::GrassmannKernel;
pub use montecarlo::{c_montecarlo, graded_moment_montecarlo, kernel_equation_montecarlo, sphere_moment_montecarlo};
pub use sphere::{
    gamma_half, omega, omega_exact, sphere_moment, sphere_moment2, sphere_moment2_exact, sphere_moment_exact,
    SqrtPiMonomial,
};
