use super::binomial::{binom, binomial};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Left-hand side of the binomial identity behind `α·D = e_0`:
///
/// ```text
/// (d+2−k)/(d+2) · (k+2)/2 · Σ_m (−1)^{k−m} C(d+1,k−m)⁻¹ Σ_j C(k+2−j,2)⁻¹
///     · Σ_l C(i,l) C(k−i,m−l) C(k−i,j−l) C(d−2k+i, k+l−m−j)
/// ```
///
/// with `m, j, l` all running over `0..=k`. For `d ≥ k − 1` this equals
/// `C(i, k)`; as a polynomial in `i` it is meaningful for every integer `i`.
pub fn identity_lhs<T: Field>(d: i64, k: i64, i: i64) -> Result<T> {
    if d < 0 || k < 0 || d < k - 1 {
        return Err(Error::OutOfRange(format!("need d ≥ max(0, k−1), got (d,k) = ({d},{k})")));
    }
    let mut outer = T::zero();
    for m in 0..=k {
        let c_m = binom::<T>(d + 1, k - m);
        if c_m.is_zero() {
            return Err(Error::PoleEncountered(format!("C({}, {})", d + 1, k - m)));
        }
        let mut over_j = T::zero();
        for j in 0..=k {
            let c_j = binom::<T>(k + 2 - j, 2);
            if c_j.is_zero() {
                return Err(Error::PoleEncountered(format!("C({}, 2)", k + 2 - j)));
            }
            let inner = (0..=k).fold(T::zero(), |acc, l| {
                acc + binom::<T>(i, l)
                    * binom::<T>(k - i, m - l)
                    * binom::<T>(k - i, j - l)
                    * binom::<T>(d - 2 * k + i, k + l - m - j)
            });
            over_j = over_j + inner / c_j;
        }
        let term = over_j / c_m;
        outer = if (k - m) % 2 == 0 { outer + term } else { outer - term };
    }
    let prefactor = T::from_int(d + 2 - k) / T::from_int(d + 2) * T::from_int(k + 2) / T::from_int(2);
    Ok(prefactor * outer)
}

/// Evaluates the identity's left side; the contract is that it returns
/// `C(i, k)`.
pub fn verify_identity<T: Field>(d: i64, k: i64, i: i64) -> Result<T> {
    identity_lhs(d, k, i)
}

/// Right-hand side `C(i, k)`.
pub fn identity_rhs<T: Field>(k: i64, i: i64) -> T {
    binomial(T::from_int(i), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    #[test]
    fn small_cases() {
        assert_eq!(verify_identity::<Rational>(3, 1, 1).unwrap(), rat(1));
        assert_eq!(verify_identity::<Rational>(3, 1, 0).unwrap(), rat(0));
        assert_eq!(verify_identity::<Rational>(0, 0, 0).unwrap(), rat(1));
    }

    #[test]
    fn delta_form_at_integer_points() {
        for d in 0..=8 {
            for k in 0..=d {
                for i in 0..=k {
                    let want = if i == k { rat(1) } else { rat(0) };
                    assert_eq!(identity_lhs::<Rational>(d, k, i).unwrap(), want, "({d},{k},{i})");
                }
            }
        }
    }

    #[test]
    fn polynomial_extension_beyond_k() {
        for d in 0..=6 {
            for k in 0..=d + 1 {
                for i in 0..=k + 3 {
                    assert_eq!(
                        identity_lhs::<Rational>(d, k, i).unwrap(),
                        identity_rhs::<Rational>(k, i),
                        "({d},{k},{i})"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_d_below_k_minus_one() {
        assert!(matches!(identity_lhs::<Rational>(2, 4, 0), Err(Error::OutOfRange(_))));
    }
}
