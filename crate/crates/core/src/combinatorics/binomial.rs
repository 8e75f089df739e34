use crate::scalar::Field;

/// Generalized binomial coefficient `C(z, a)`.
///
/// `z(z-1)...(z-a+1)/a!` for `a ≥ 1`, `1` for `a = 0` and `0` for `a < 0`.
/// `z` may be any field element, in particular a negative integer.
pub fn binomial<T: Field>(z: T, a: i64) -> T {
    if a < 0 {
        return T::zero();
    }
    let mut num = T::one();
    let mut den = T::one();
    for t in 0..a {
        num = num * (z.clone() - T::from_int(t));
        den = den * T::from_int(t + 1);
    }
    num / den
}

/// `C(n, a)` for integer `n` (possibly negative).
pub fn binom<T: Field>(n: i64, a: i64) -> T {
    binomial(T::from_int(n), a)
}
