//! Integer polynomials with prescribed values on consecutive Hamming weights.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{binomial, IntPolynomial};
use crate::error::{Error, Result};

/// The symmetric polynomial `p` of degree `<= r-1` over `n` variables with
/// `p(x) = c[i-1]` whenever `|x| = k + i`, `1 <= i <= r`.
///
/// Writing `p(x) = Σ a_i C(|x|, i)`, the coefficients solve a binomial system of
/// determinant 1, so they are integers. The solve goes through Newton forward
/// differences at weight `k+1` and a change of binomial basis, which is `O(r²)`
/// big-integer operations. [`solve_fraction_free`] solves the same system by
/// elimination and serves as the cross-check.
pub fn interpolate_weights(n: usize, k: i64, r: usize, c: &[BigInt]) -> Result<IntPolynomial> {
    if r == 0 {
        return Err(Error::InvalidParameters("need at least one interpolation point".into()));
    }
    if c.len() != r {
        return Err(Error::InvalidParameters(format!(
            "expected {r} target values, found {}",
            c.len()
        )));
    }
    if k < -1 {
        return Err(Error::InvalidParameters(format!("weight offset k={k} is below -1")));
    }
    if (n as i64) < k + r as i64 {
        return Err(Error::InvalidParameters(format!(
            "n={n} is smaller than k+r={}",
            k + r as i64
        )));
    }
    IntPolynomial::symmetric(n, newton_coefficients((k + 1) as u64, c))
}

/// Coefficients `a` with `Σ a_i C(w, i) = c[w - base]` for `w = base .. base+r-1`.
fn newton_coefficients(base: u64, c: &[BigInt]) -> Vec<BigInt> {
    let r = c.len();
    let mut b = c.to_vec();
    for t in 1..r {
        for j in (t..r).rev() {
            let prev = b[j - 1].clone();
            b[j] -= prev;
        }
    }
    // now p(w) = Σ b_t C(w - base, t); rewrite C(w - h, t) = Σ_i C(w, i) C(-h, t - i)
    if base == 0 {
        return b;
    }
    let neg: Vec<BigInt> = (0..r as u64)
        .map(|m| {
            let v = binomial(base - 1 + m, m);
            if m % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    (0..r)
        .map(|i| (i..r).map(|t| &b[t] * &neg[t - i]).sum())
        .collect()
}

/// The `r×r` matrix with entries `C(k+j, i)`, rows `j = 1..r`, columns `i = 0..r-1`.
pub fn binomial_matrix(k: i64, r: usize) -> Vec<Vec<BigInt>> {
    (1..=r as i64)
        .map(|j| {
            let top = k + j;
            (0..r as u64)
                .map(|i| {
                    if top < 0 {
                        BigInt::zero()
                    } else {
                        binomial(top as u64, i)
                    }
                })
                .collect()
        })
        .collect()
}

/// Exact determinant of [`binomial_matrix`] by fraction-free elimination.
pub fn binomial_matrix_det(k: i64, r: usize) -> BigInt {
    let mut m = binomial_matrix(k, r);
    bareiss(&mut m, r)
}

/// Fraction-free (Bareiss) forward elimination on the leading `n` columns; returns the
/// determinant of the leading `n×n` block.
fn bareiss(m: &mut [Vec<BigInt>], n: usize) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for p in 0..n {
        if m[p][p].is_zero() {
            match (p + 1..n).find(|&i| !m[i][p].is_zero()) {
                Some(i) => {
                    m.swap(p, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        let width = m[p].len();
        for i in p + 1..n {
            for j in p + 1..width {
                let v = (&m[i][j] * &m[p][p] - &m[i][p] * &m[p][j]) / &prev;
                m[i][j] = v;
            }
            m[i][p] = BigInt::zero();
        }
        prev = m[p][p].clone();
    }
    if n == 0 {
        return sign;
    }
    sign * &m[n - 1][n - 1]
}

/// Solves `matrix · a = rhs` exactly; `None` when the matrix is singular.
pub fn solve_fraction_free(matrix: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<BigInt>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut row = row.clone();
            row.push(b.clone());
            row
        })
        .collect();
    if bareiss(&mut aug, n).is_zero() {
        return None;
    }
    let mut x: Vec<BigRational> = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(aug[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(aug[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(aug[i][i].clone());
    }
    Some(x)
}

/// The interpolant of a step `[w >= cut]` prescribed on the weight band `lo..=hi`.
///
/// In-band values are the step itself. Off-band values follow from the Newton
/// series of the step, whose forward differences are `±C(t-1, u-1)`, so no
/// coefficient vector is needed to evaluate. Coefficients are built on first use.
#[derive(Debug)]
pub struct StepInterpolant {
    nvars: usize,
    lo: usize,
    hi: usize,
    cut: i64,
    poly: OnceLock<IntPolynomial>,
}

impl Clone for StepInterpolant {
    fn clone(&self) -> Self {
        let poly = OnceLock::new();
        if let Some(p) = self.poly.get() {
            let _ = poly.set(p.clone());
        }
        Self {
            nvars: self.nvars,
            lo: self.lo,
            hi: self.hi,
            cut: self.cut,
            poly,
        }
    }
}

impl StepInterpolant {
    pub fn new(nvars: usize, lo: usize, hi: usize, cut: i64) -> Result<Self> {
        if lo > hi || hi > nvars {
            return Err(Error::InvalidParameters(format!(
                "band {lo}..={hi} is not inside 0..={nvars}"
            )));
        }
        Ok(Self {
            nvars,
            lo,
            hi,
            cut,
            poly: OnceLock::new(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn band(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn cut(&self) -> i64 {
        self.cut
    }

    fn points(&self) -> usize {
        self.hi - self.lo + 1
    }

    /// Cut position relative to the band start, clamped to `0..=r`.
    fn rel_cut(&self) -> usize {
        (self.cut - self.lo as i64).clamp(0, self.points() as i64) as usize
    }

    pub fn degree(&self) -> usize {
        let (u, r) = (self.rel_cut(), self.points());
        if u == 0 || u == r {
            0
        } else {
            r - 1
        }
    }

    pub fn in_band(&self, w: usize) -> bool {
        (self.lo..=self.hi).contains(&w)
    }

    /// The step value, valid for in-band weights.
    pub fn step(&self, w: usize) -> bool {
        w as i64 >= self.cut
    }

    /// Value of the interpolant on any point of weight `w`.
    pub fn value_at_weight(&self, w: usize) -> BigInt {
        let (u, r) = (self.rel_cut(), self.points());
        if u == 0 {
            return BigInt::one();
        }
        if u == r {
            return BigInt::zero();
        }
        if self.in_band(w) {
            return BigInt::from(u8::from(self.step(w)));
        }
        if w > self.hi {
            BigInt::one() - step_tail(r, u, (w - self.lo) as u64)
        } else {
            step_tail(r, r - u, (r - 1 + self.lo - w) as u64)
        }
    }

    /// Explicit symmetric coefficients, computed once.
    pub fn polynomial(&self) -> &IntPolynomial {
        self.poly.get_or_init(|| {
            let c: Vec<BigInt> = (self.lo..=self.hi)
                .map(|w| BigInt::from(u8::from(self.step(w))))
                .collect();
            interpolate_weights(self.nvars, self.lo as i64 - 1, c.len(), &c)
                .expect("band lies inside 0..=nvars")
        })
    }
}

/// `Σ_{t=r}^{j} (-1)^{t-u} C(t-1, u-1) C(j, t)` for `1 <= u < r <= j`.
fn step_tail(r: usize, u: usize, j: u64) -> BigInt {
    let (r, u) = (r as u64, u as u64);
    let mut total = BigInt::zero();
    let mut diff = binomial(r - 1, u - 1);
    let mut choose = binomial(j, r);
    for t in r..=j {
        if (t - u) % 2 == 0 {
            total += &diff * &choose;
        } else {
            total -= &diff * &choose;
        }
        diff = diff * t / (t - u + 1);
        choose = choose * (j - t) / (t + 1);
    }
    total
}
