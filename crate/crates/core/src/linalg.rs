//! Small dense helpers on `Vec<T>` vectors. Dimensions here never exceed a
//! dozen, so nothing is blocked or vectorised.

use crate::scalar::Real;

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

pub fn sub<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn add<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub fn scale<T: Real>(a: &[T], s: T) -> Vec<T> {
    a.iter().map(|&x| x * s).collect()
}

/// `y += s * x`
pub fn axpy<T: Real>(y: &mut [T], s: T, x: &[T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = *yi + s * xi;
    }
}

pub fn unit<T: Real>(d: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); d];
    v[i] = T::one();
    v
}

pub fn normalized<T: Real>(a: &[T]) -> Option<Vec<T>> {
    let n = norm(a);
    if n > T::zero() && n.is_finite() {
        Some(scale(a, T::one() / n))
    } else {
        None
    }
}

/// Determinant of a square matrix given as rows, by partial-pivot LU.
pub fn det<T: Real>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    if n == 0 {
        return T::one();
    }
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let mut sign = T::one();
    let mut acc = T::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())
            .unwrap();
        if m[pivot][col] == T::zero() {
            return T::zero();
        }
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        let p = m[col][col];
        acc = acc * p;
        for r in col + 1..n {
            let f = m[r][col] / p;
            if f != T::zero() {
                for c in col..n {
                    let v = m[col][c];
                    m[r][c] = m[r][c] - f * v;
                }
            }
        }
    }
    sign * acc
}

/// Solves `a x = b` for square `a` (rows). Returns `None` if singular.
pub fn solve<T: Real>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| m[x][col].abs().partial_cmp(&m[y][col].abs()).unwrap())
            .unwrap();
        if m[pivot][col].abs() <= T::epsilon() {
            return None;
        }
        m.swap(pivot, col);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                for c in col..=n {
                    let v = m[col][c];
                    m[r][c] = m[r][c] - f * v;
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Numerical rank of a set of vectors: Gram-Schmidt, counting residuals
/// above `tol` relative to the largest input norm.
pub fn rank<T: Real>(vectors: &[Vec<T>], tol: T) -> usize {
    let scale = vectors.iter().map(|v| norm(v)).fold(T::zero(), T::max);
    if scale == T::zero() {
        return 0;
    }
    let mut basis: Vec<Vec<T>> = Vec::new();
    // Largest residual first keeps the count stable for nearly dependent sets.
    let mut pool: Vec<Vec<T>> = vectors.to_vec();
    loop {
        let mut best: Option<(usize, Vec<T>, T)> = None;
        for (i, v) in pool.iter().enumerate() {
            let r = residual(v, &basis);
            let n = norm(&r);
            if best.as_ref().is_none_or(|b| n > b.2) {
                best = Some((i, r, n));
            }
        }
        match best {
            Some((i, r, n)) if n > tol * scale => {
                basis.push(scale_to_unit(r, n));
                pool.swap_remove(i);
            }
            _ => return basis.len(),
        }
    }
}

/// `v` with its components along the orthonormal `basis` removed (two passes).
pub fn residual<T: Real>(v: &[T], basis: &[Vec<T>]) -> Vec<T> {
    let mut w = v.to_vec();
    for _ in 0..2 {
        for q in basis {
            let c = dot(q, &w);
            axpy(&mut w, -c, q);
        }
    }
    w
}

fn scale_to_unit<T: Real>(v: Vec<T>, n: T) -> Vec<T> {
    v.into_iter().map(|x| x / n).collect()
}

/// Row-major matrix times vector.
pub fn mat_vec<T: Real>(m: &[Vec<T>], v: &[T]) -> Vec<T> {
    m.iter().map(|row| dot(row, v)).collect()
}
