//! Monte Carlo counterparts of the exact constants, used as independent
//! statistical oracles.

use super::kernel::GrassmannKernel;
use super::sphere::omega;
use crate::error::{Error, Result};
use crate::grassmann::{det_projection, products, sample_grassmannian, sample_sphere, Subspace};
use crate::mc::{Accumulator, MCEstimate};
use crate::rng::RandomStream;

/// MC estimate of `c^d_{k,i} = ∫ ⟨E,V⟩² ⟨F,V⟩² dν(V)` with
/// `E = span(e_1..e_k)` and `F = span(e_1..e_{k−i}, e_{k+1}..e_{k+i})`.
pub fn c_montecarlo(d: usize, k: usize, i: usize, n: u64, rng: &mut RandomStream) -> Result<MCEstimate> {
    if k > d || i > k.min(d - k) {
        return Err(Error::OutOfRange(format!("(d,k,i) = ({d},{k},{i})")));
    }
    let e = Subspace::<f64>::coordinate(d, &(0..k).collect::<Vec<_>>());
    let f_idx: Vec<usize> = (0..k - i).chain(k..k + i).collect();
    let f = Subspace::<f64>::coordinate(d, &f_idx);
    let mut acc = Accumulator::default();
    for _ in 0..n {
        let v = sample_grassmannian(d, k, rng);
        let a = det_projection(&e, &v)?;
        let b = det_projection(&f, &v)?;
        acc.push(a * a * b * b);
    }
    Ok(acc.estimate(rng.seed()))
}

/// MC estimate of `∫_{S^{d−1}} |v_1|^p |v_2|^q dv`.
pub fn sphere_moment_montecarlo(d: usize, p: f64, q: f64, n: u64, rng: &mut RandomStream) -> MCEstimate {
    let mut acc = Accumulator::default();
    for _ in 0..n {
        let v: Vec<f64> = sample_sphere(d, rng);
        acc.push(v[0].abs().powf(p) * v[1].abs().powf(q));
    }
    acc.estimate(rng.seed()).scaled(omega(d))
}

/// MC estimates of `∫ ⟨A,U⟩_p² ⟨U,B⟩² dν(U)` for every `p`.
pub fn graded_moment_montecarlo(
    a: &Subspace<f64>,
    b: &Subspace<f64>,
    n: u64,
    rng: &mut RandomStream,
) -> Result<Vec<MCEstimate>> {
    let (d, k) = (a.ambient_dim(), a.dim());
    let mut accs = vec![Accumulator::default(); k.min(d - k) + 1];
    for _ in 0..n {
        let u = sample_grassmannian(d, k, rng);
        let w = det_projection(&u, b)?.powi(2);
        for (acc, x) in accs.iter_mut().zip(products(a, &u)?) {
            acc.push(x * x * w);
        }
    }
    Ok(accs.iter().map(|acc| acc.estimate(rng.seed())).collect())
}

/// MC estimate of `∫ φ_A(U) ⟨U,B⟩² dν(U)`; the target is `⟨A,B⟩²`.
pub fn kernel_equation_montecarlo(
    a: &Subspace<f64>,
    b: &Subspace<f64>,
    n: u64,
    rng: &mut RandomStream,
) -> Result<MCEstimate> {
    let (d, k) = (a.ambient_dim(), a.dim());
    let kernel = GrassmannKernel::<f64>::new(d, k)?;
    let mut acc = Accumulator::default();
    for _ in 0..n {
        let u = sample_grassmannian(d, k, rng);
        acc.push(kernel.eval(a, &u)? * det_projection(&u, b)?.powi(2));
    }
    Ok(acc.estimate(rng.seed()))
}
