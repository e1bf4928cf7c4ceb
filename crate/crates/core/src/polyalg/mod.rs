//! Exact multilinear polynomials over ℤ and GF(2), and weight interpolation.

mod gf2_poly;
mod int_poly;
mod interp;
mod monomial;

pub use gf2_poly::Gf2Polynomial;
pub(crate) use gf2_poly::{mul_masks, toggle_set};
pub use int_poly::IntPolynomial;
pub use interp::{
    binomial_matrix, binomial_matrix_det, interpolate_weights, solve_fraction_free,
    StepInterpolant,
};
pub use monomial::Monomial;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `C(n, k)` clamped to `u128::MAX`.
pub fn binomial_saturating(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // c * (n-i) / (i+1) stays exact; once the product overflows the result is huge anyway
        match c.checked_mul(u128::from(n - i)) {
            Some(v) => c = v / u128::from(i + 1),
            None => return u128::MAX,
        }
    }
    c
}

/// `Σ_{i=0}^{upto} C(n, i)`, saturating.
pub fn sum_binomials_saturating(n: u64, upto: u64) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for i in 0..=upto.min(n) {
        if i > 0 {
            match c.checked_mul(u128::from(n - i + 1)) {
                Some(v) => c = v / u128::from(i),
                None => return u128::MAX,
            }
        }
        total = total.saturating_add(c);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial_saturating(60, 30), 118264581564861424);
        assert_eq!(binomial_saturating(10_000, 5_000), u128::MAX);
        assert_eq!(sum_binomials_saturating(4, 2), 1 + 4 + 6);
        assert_eq!(sum_binomials_saturating(4, 9), 16);
    }
}
