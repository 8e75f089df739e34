use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, norm, residual, unit};
use crate::scalar::Real;

/// Relative residual below which a vector counts as dependent.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// A linear subspace of `R^d` held as an orthonormal basis (columns).
///
/// Bases carry no orientation: every quantity derived from a subspace is a
/// square or an absolute value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subspace<T> {
    pub(super) ambient_dim: usize,
    pub(super) basis: Vec<Vec<T>>,
}

impl<T: Real> Subspace<T> {
    /// Modified Gram-Schmidt with a re-orthogonalization pass, in input order.
    pub fn orthonormalize(ambient_dim: usize, vectors: &[Vec<T>]) -> Result<Self> {
        let mut basis: Vec<Vec<T>> = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimMismatch(format!(
                    "vector of length {} in R^{ambient_dim}",
                    v.len()
                )));
            }
            let scale = norm(v);
            let w = residual(v, &basis);
            let n = norm(&w);
            if scale == T::zero() || n <= T::tol(RANK_TOLERANCE) * scale {
                return Err(Error::RankDeficient {
                    rank: basis.len(),
                    expected: vectors.len(),
                });
            }
            basis.push(w.into_iter().map(|x| x / n).collect());
        }
        Ok(Self { ambient_dim, basis })
    }

    /// Orthonormal basis of `span(vectors)`, silently dropping vectors whose
    /// residual falls below `tol` (absolute, inputs assumed unit scale).
    pub fn span(ambient_dim: usize, vectors: &[Vec<T>], tol: T) -> Self {
        let mut basis: Vec<Vec<T>> = Vec::new();
        for v in vectors {
            let w = residual(v, &basis);
            let n = norm(&w);
            if n > tol && basis.len() < ambient_dim {
                basis.push(w.into_iter().map(|x| x / n).collect());
            }
        }
        Self { ambient_dim, basis }
    }

    /// Wraps columns that are already orthonormal within `1e-12` per entry of
    /// the Gram matrix.
    pub fn from_orthonormal(ambient_dim: usize, basis: Vec<Vec<T>>) -> Result<Self> {
        let s = Self { ambient_dim, basis };
        s.check_orthonormal(T::tol(1e-12))?;
        Ok(s)
    }

    pub fn trivial(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::coordinate(ambient_dim, &(0..ambient_dim).collect::<Vec<_>>())
    }

    /// `span(e_i : i in indices)`.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        Self {
            ambient_dim,
            basis: indices.iter().map(|&i| unit(ambient_dim, i)).collect(),
        }
    }

    pub fn line(direction: &[T]) -> Result<Self> {
        Self::orthonormalize(direction.len(), &[direction.to_vec()])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    /// Coordinates of `x`'s projection in this subspace's basis.
    pub fn coordinates(&self, x: &[T]) -> Vec<T> {
        self.basis.iter().map(|b| dot(b, x)).collect()
    }

    /// Orthogonal projection of `x` onto the subspace, in ambient coordinates.
    pub fn project(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.ambient_dim];
        for b in &self.basis {
            axpy(&mut out, dot(b, x), b);
        }
        out
    }

    /// `‖x | self‖`
    pub fn projection_norm(&self, x: &[T]) -> T {
        norm(&self.coordinates(x))
    }

    /// `‖x | self^⊥‖`
    pub fn orthogonal_norm(&self, x: &[T]) -> T {
        // Explicit residual; `‖x‖² − ‖c‖²` loses half the digits.
        let mut r = x.to_vec();
        for b in &self.basis {
            let t = dot(b, &r);
            axpy(&mut r, -t, b);
        }
        norm(&r)
    }

    pub fn contains(&self, x: &[T], tol: T) -> bool {
        self.orthogonal_norm(x) <= tol
    }

    /// Orthogonal complement. Completes the basis greedily with the standard
    /// vector of largest residual, so the result is well conditioned.
    pub fn complement(&self) -> Self {
        let d = self.ambient_dim;
        let mut all = self.basis.clone();
        let mut extra = Vec::with_capacity(d - self.dim());
        while all.len() < d {
            let (w, n) = (0..d)
                .map(|i| {
                    let w = residual(&unit::<T>(d, i), &all);
                    let n = norm(&w);
                    (w, n)
                })
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .expect("d > 0");
            let v: Vec<T> = w.into_iter().map(|x| x / n).collect();
            all.push(v.clone());
            extra.push(v);
        }
        Self { ambient_dim: d, basis: extra }
    }

    /// Expresses this subspace in the coordinates of `frame`, a subspace that
    /// contains it. The result lives in `R^{frame.dim()}`.
    pub fn in_frame(&self, frame: &Subspace<T>) -> Result<Self> {
        if frame.ambient_dim != self.ambient_dim {
            return Err(Error::DimMismatch("frame ambient dimension".into()));
        }
        let tol = T::tol(1e-9);
        if self.basis.iter().any(|b| !frame.contains(b, tol)) {
            return Err(Error::DimMismatch("subspace not contained in frame".into()));
        }
        let coords: Vec<Vec<T>> = self.basis.iter().map(|b| frame.coordinates(b)).collect();
        Self::orthonormalize(frame.dim(), &coords)
    }

    /// Image under the linear map given by row-major `matrix`.
    pub fn transformed(&self, matrix: &[Vec<T>]) -> Result<Self> {
        let cols: Vec<Vec<T>> = self
            .basis
            .iter()
            .map(|b| crate::linalg::mat_vec(matrix, b))
            .collect();
        Self::orthonormalize(self.ambient_dim, &cols)
    }

    /// Projector `B Bᵀ` as rows.
    pub fn projector(&self) -> Vec<Vec<T>> {
        let d = self.ambient_dim;
        (0..d).map(|i| self.project(&unit(d, i))).collect()
    }

    pub fn check_orthonormal(&self, tol: T) -> Result<()> {
        for (i, a) in self.basis.iter().enumerate() {
            if a.len() != self.ambient_dim {
                return Err(Error::DimMismatch("basis vector length".into()));
            }
            for (j, b) in self.basis.iter().enumerate() {
                let target = if i == j { T::one() } else { T::zero() };
                if (dot(a, b) - target).abs() > tol {
                    return Err(Error::Invalid(format!("basis not orthonormal at ({i},{j})")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, i: usize) -> Vec<f64> {
        unit(d, i)
    }

    #[test]
    fn orthonormalize_examples() {
        let s = Subspace::orthonormalize(3, &[e(3, 0), e(3, 1)]).unwrap();
        assert_eq!(s.basis(), &[e(3, 0), e(3, 1)]);

        let s = Subspace::orthonormalize(3, &[e(3, 0), vec![1.0, 1.0, 0.0]]).unwrap();
        assert!((s.basis()[1][1] - 1.0).abs() < 1e-15);
        assert!(s.basis()[1][0].abs() < 1e-15);

        let err = Subspace::orthonormalize(3, &[e(3, 0), vec![2.0, 0.0, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::RankDeficient { rank: 1, expected: 2 }));
    }

    #[test]
    fn complement_examples() {
        let c = Subspace::<f64>::coordinate(3, &[0]).complement();
        assert_eq!(c.dim(), 2);
        assert!(c.basis().iter().all(|b| b[0].abs() < 1e-15));
        assert_eq!(Subspace::<f64>::full(4).complement().dim(), 0);
        assert_eq!(Subspace::<f64>::trivial(4).complement().dim(), 4);
    }

    #[test]
    fn zero_dim_is_valid() {
        let z = Subspace::<f64>::trivial(3);
        assert_eq!(z.dim(), 0);
        z.check_orthonormal(1e-12).unwrap();
        assert_eq!(z.project(&[1.0, 2.0, 3.0]), vec![0.0; 3]);
    }

    #[test]
    fn frame_coordinates() {
        let frame = Subspace::<f64>::coordinate(4, &[1, 3]);
        let s = Subspace::<f64>::coordinate(4, &[3]);
        let local = s.in_frame(&frame).unwrap();
        assert_eq!(local.ambient_dim(), 2);
        assert!((local.basis()[0][1].abs() - 1.0).abs() < 1e-15);
        assert!(Subspace::<f64>::coordinate(4, &[0]).in_frame(&frame).is_err());
    }
}
