//! The coefficient matrix `D(d,k)`, the constants `c^d_{k,i}` it is built
//! from, and its left inverse row `α` with `α·D = (1,0,…,0)`.

use serde::{Deserialize, Serialize};

use super::binomial::binom;
use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

/// Dense row-major matrix over a coefficient field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<T>,
}

pub type RationalMatrix = Matrix<Rational>;

impl<T: Field> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    /// Row vector times matrix, `v·M`.
    pub fn left_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|c| {
                (0..self.rows).fold(T::zero(), |acc, r| acc + v[r].clone() * self.get(r, c).clone())
            })
            .collect()
    }

    /// Matrix times column vector, `M·v`.
    pub fn right_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(T::zero(), |acc, c| acc + self.get(r, c).clone() * v[c].clone())
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Solves `M x = b` by Gaussian elimination, exact over `Rational`.
    /// Pivots on the first nonzero entry, or the largest one for floats.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::DimMismatch("solve needs a square system".into()));
        }
        let n = self.rows;
        let mut m: Vec<Vec<T>> = (0..n)
            .map(|r| {
                let mut row: Vec<T> = (0..n).map(|c| self.get(r, c).clone()).collect();
                row.push(b[r].clone());
                row
            })
            .collect();
        for col in 0..n {
            let abs = |x: &T| if *x < T::zero() { -x.clone() } else { x.clone() };
            let pivot = (col..n)
                .filter(|&r| !m[r][col].is_zero())
                .max_by(|&x, &y| abs(&m[x][col]).partial_cmp(&abs(&m[y][col])).unwrap())
                .ok_or(Error::SingularMatrix)?;
            m.swap(pivot, col);
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone() / m[col][col].clone();
                    for c in col..=n {
                        let v = m[col][c].clone();
                        m[r][c] = m[r][c].clone() - f.clone() * v;
                    }
                }
            }
        }
        Ok((0..n).map(|i| m[i][n].clone() / m[i][i].clone()).collect())
    }
}

/// `(d, k, α)` with `α` of length `min(k, d-k) + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaVector<T> {
    pub d: usize,
    pub k: usize,
    pub alpha: Vec<T>,
}

fn top(d: usize, k: usize) -> usize {
    k.min(d - k)
}

fn check_dk(d: usize, k: usize) -> Result<()> {
    if k > d {
        return Err(Error::OutOfRange(format!("k = {k} exceeds d = {d}")));
    }
    Ok(())
}

/// `F(d,k,j,m,i) = Σ_l C(k−i,l)·C(i,k−m−l)·C(i,k−j−l)·C(d−k−i, j+l+m−k)`,
/// summed over `l = 0..=k`.
pub fn f_term<T: Field>(d: i64, k: i64, j: i64, m: i64, i: i64) -> T {
    (0..=k).fold(T::zero(), |acc, l| {
        acc + binom::<T>(k - i, l)
            * binom::<T>(i, k - m - l)
            * binom::<T>(i, k - j - l)
            * binom::<T>(d - k - i, j + l + m - k)
    })
}

/// `c^d_{k,i} = (k+1)(k+2) / ((i+1)(i+2)) · C(d,k)⁻¹ · C(d+2,k)⁻¹`.
///
/// Valid for `0 ≤ k ≤ d`, `0 ≤ i ≤ min(k, d−k)`; at `k = d` it gives the
/// trivially correct value 1.
pub fn c_closed<T: Field>(d: usize, k: usize, i: usize) -> Result<T> {
    check_dk(d, k)?;
    if i > top(d, k) {
        return Err(Error::OutOfRange(format!("i = {i} exceeds min(k, d-k) for (d,k) = ({d},{k})")));
    }
    let (d, k, i) = (d as i64, k as i64, i as i64);
    Ok(T::from_int((k + 1) * (k + 2)) / T::from_int((i + 1) * (i + 2))
        / binom::<T>(d, k)
        / binom::<T>(d + 2, k))
}

/// `(I^d_k, J^d_k) = (k(k+2) / (d(d+2)), k² / (d(d+2)))`, the factors of the
/// two recursions `c^d_{k,i} = I^d_k c^{d−1}_{k−1,i}` (`i < k`) and
/// `c^d_{k,k} = J^d_k c^{d−1}_{k−1,k−1}`, both for `2k ≤ d`.
pub fn recursion_factors<T: Field>(d: usize, k: usize) -> Result<(T, T)> {
    if d == 0 || 2 * k > d {
        return Err(Error::OutOfRange(format!("recursion needs d ≥ 1 and 2k ≤ d, got ({d},{k})")));
    }
    let (d, k) = (d as i64, k as i64);
    let den = T::from_int(d * (d + 2));
    Ok((T::from_int(k * (k + 2)) / den.clone(), T::from_int(k * k) / den))
}

/// `D(d,k)` with entries `d_{m,i} = Σ_j c^d_{k,j} F(d,k,j,m,i)`; row index
/// `m`, column index `i`, both in `0..=min(k, d−k)`.
pub fn d_matrix<T: Field>(d: usize, k: usize) -> Result<Matrix<T>> {
    check_dk(d, k)?;
    let n = top(d, k) + 1;
    let c: Vec<T> = (0..n).map(|j| c_closed(d, k, j)).collect::<Result<_>>()?;
    let (di, ki) = (d as i64, k as i64);
    Ok(Matrix::from_fn(n, n, |m, i| {
        c.iter().enumerate().fold(T::zero(), |acc, (j, cj)| {
            acc + cj.clone() * f_term::<T>(di, ki, j as i64, m as i64, i as i64)
        })
    }))
}

/// `α_m = (−1)^m C(d,k) C(d+1,k) / ((k+1) C(d+1,m))`.
pub fn alpha_explicit<T: Field>(d: usize, k: usize) -> Result<AlphaVector<T>> {
    check_dk(d, k)?;
    let (di, ki) = (d as i64, k as i64);
    let scale = binom::<T>(di, ki) * binom::<T>(di + 1, ki) / T::from_int(ki + 1);
    let alpha = (0..=top(d, k) as i64)
        .map(|m| {
            let v = scale.clone() / binom::<T>(di + 1, m);
            if m % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    Ok(AlphaVector { d, k, alpha })
}

/// `α = (1,0,…,0) D⁻¹`, by solving `Dᵀ αᵀ = e_0`.
pub fn alpha_solve<T: Field>(d: usize, k: usize) -> Result<AlphaVector<T>> {
    let dm = d_matrix::<T>(d, k)?;
    let mut e0 = vec![T::zero(); dm.rows];
    e0[0] = T::one();
    let alpha = dm.transpose().solve(&e0)?;
    Ok(AlphaVector { d, k, alpha })
}

/// `α·D` for the explicit `α`; equals `(1,0,…,0)`.
pub fn alpha_times_d<T: Field>(d: usize, k: usize) -> Result<Vec<T>> {
    let a = alpha_explicit::<T>(d, k)?;
    Ok(d_matrix::<T>(d, k)?.left_mul(&a.alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, rat};

    /// Brute-force `F` with explicit loops and a local factorial-based
    /// binomial that only covers nonnegative tops.
    fn f_brute(d: i64, k: i64, j: i64, m: i64, i: i64) -> i64 {
        fn c(n: i64, a: i64) -> i64 {
            if a < 0 || n < 0 || a > n {
                if n < 0 && a >= 0 {
                    panic!("negative top not needed in these fixtures");
                }
                return 0;
            }
            (0..a).fold(1i64, |acc, t| acc * (n - t) / (t + 1))
        }
        let mut s = 0;
        for l in 0..=k {
            s += c(k - i, l) * c(i, k - m - l) * c(i, k - j - l) * c(d - k - i, j + l + m - k);
        }
        s
    }

    #[test]
    fn f_term_examples() {
        assert_eq!(f_term::<Rational>(3, 1, 0, 0, 0), rat(1));
        assert_eq!(f_term::<Rational>(4, 2, 1, 1, 1), rat(f_brute(4, 2, 1, 1, 1)));
        assert_eq!(f_brute(4, 2, 1, 1, 1), 2);
        // m > k with i + (k - i) < m: every term vanishes.
        assert_eq!(f_term::<Rational>(6, 2, 0, 3, 1), rat(0));
        for d in 2..7 {
            for k in 0..=d / 2 {
                for i in 0..=k {
                    for j in 0..=k {
                        for m in 0..=k {
                            assert_eq!(f_term::<Rational>(d, k, j, m, i), rat(f_brute(d, k, j, m, i)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f_term_is_symmetric_in_j_and_m() {
        for d in 2..8 {
            for k in 1..d {
                for i in 0..=k {
                    for j in 0..=k {
                        for m in 0..=k {
                            assert_eq!(
                                f_term::<Rational>(d, k, j, m, i),
                                f_term::<Rational>(d, k, m, j, i)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn c_closed_examples() {
        assert_eq!(c_closed::<Rational>(3, 1, 0).unwrap(), frac(1, 5));
        assert_eq!(c_closed::<Rational>(4, 4, 0).unwrap(), rat(1));
        assert!(matches!(c_closed::<Rational>(3, 1, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(c_closed::<Rational>(3, 4, 0), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn recursion_factor_examples() {
        let (i, j) = recursion_factors::<Rational>(4, 2).unwrap();
        assert_eq!(i, frac(1, 3));
        assert_eq!(j, frac(1, 6));
        assert!(recursion_factors::<Rational>(3, 2).is_err());
    }

    #[test]
    fn d_matrix_three_one() {
        // Frozen from an independent exact-fraction evaluation; rows m, cols i.
        let d = d_matrix::<Rational>(3, 1).unwrap();
        assert_eq!(d.entries, vec![frac(1, 5), frac(1, 15), frac(2, 15), frac(4, 15)]);
    }

    #[test]
    fn alpha_three_one() {
        let a = alpha_explicit::<Rational>(3, 1).unwrap();
        assert_eq!(a.alpha, vec![rat(6), frac(-3, 2)]);
        assert_eq!(alpha_solve::<Rational>(3, 1).unwrap().alpha, a.alpha);
    }

    #[test]
    fn alpha_for_trivial_subspace_is_one() {
        for d in 1..8 {
            assert_eq!(alpha_explicit::<Rational>(d, 0).unwrap().alpha, vec![rat(1)]);
            assert_eq!(alpha_explicit::<Rational>(d, d).unwrap().alpha, vec![rat(1)]);
        }
    }

    #[test]
    fn one_by_one_solve() {
        // k = d - 1 with d = 2: D is 2x2; k = 0: D = (1).
        assert_eq!(d_matrix::<Rational>(5, 0).unwrap().entries, vec![rat(1)]);
        assert_eq!(alpha_solve::<Rational>(5, 0).unwrap().alpha, vec![rat(1)]);
    }

    #[test]
    fn float_alpha_agrees_with_exact() {
        for d in 3..9 {
            for k in 1..d {
                let e = alpha_explicit::<Rational>(d, k).unwrap();
                let f = alpha_explicit::<f64>(d, k).unwrap();
                for (x, y) in e.alpha.iter().zip(&f.alpha) {
                    let x = num_traits::ToPrimitive::to_f64(x).unwrap();
                    assert!((x - y).abs() <= 1e-12 * x.abs());
                }
            }
        }
    }

    #[test]
    fn singular_solve_is_reported() {
        let m = Matrix::from_fn(2, 2, |_, _| rat(1));
        assert!(matches!(m.solve(&[rat(1), rat(0)]), Err(Error::SingularMatrix)));
    }
}
