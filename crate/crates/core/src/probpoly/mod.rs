//! Probabilistic polynomials for threshold and symmetric Boolean functions.
//!
//! `M_{n,θ,ε}(x) = A(x)·S(x̃) + M'(x̃)·(1 − S(x̃))`, where `x̃` samples `⌊n/10⌋`
//! coordinates of `x` with replacement, `S = (1 − M_{θ+δ})·M_{θ−δ}` detects
//! `|x̃|/(n/10)` near `θ`, `A` interpolates the threshold exactly on a band of
//! weights around `θn`, and `M'` recurses with error `ε/4`.

mod measure;
mod symmetric;
mod threshold;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use measure::{
    boundary_inputs, default_threshold_inputs, measure_error, random_with_weight, AgreementReport,
};
pub use symmetric::{jump_sets, sample_symmetric, sample_symmetric_with, SampledSymmetric, SymmetricFunctionSpec};
pub use threshold::{
    degree_bound, sample_threshold, sample_threshold_with, BaseCaseRule, CircuitKind, CircuitNode,
    SampleTape, SampledThresholdCircuit, SamplerConfig, DEGREE_CONSTANT,
};

use crate::error::{Error, Result};
use crate::vectors::BitVector;

/// A sampled polynomial that can be evaluated on Boolean points.
pub trait ProbabilisticPolynomial: Send + Sync {
    fn nvars(&self) -> usize;
    fn eval(&self, x: &BitVector) -> Result<BigInt>;
}

/// `TH_θ` on `n` variables with error budget `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdSpec {
    n: usize,
    theta: BigRational,
    eps: BigRational,
}

impl ThresholdSpec {
    pub fn new(n: usize, theta: BigRational, eps: BigRational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("threshold needs at least one variable".into()));
        }
        if theta.is_negative() || theta > BigRational::one() {
            return Err(Error::InvalidParameters(format!("theta={theta} is outside [0,1]")));
        }
        if !eps.is_positive() || eps >= BigRational::one() {
            return Err(Error::InvalidParameters(format!("eps={eps} is outside (0,1)")));
        }
        Ok(Self { n, theta, eps })
    }

    /// MAJORITY: `θ = 1/2`.
    pub fn majority(n: usize, eps: BigRational) -> Result<Self> {
        Self::new(n, BigRational::new(1.into(), 2.into()), eps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &BigRational {
        &self.theta
    }

    pub fn eps(&self) -> &BigRational {
        &self.eps
    }

    pub fn eps_f64(&self) -> f64 {
        self.eps.to_f64().unwrap_or(0.0)
    }

    /// `⌈θn⌉`, the least weight on which the threshold fires.
    pub fn cut(&self) -> usize {
        (&self.theta * BigRational::from_integer(self.n.into()))
            .ceil()
            .to_integer()
            .to_usize()
            .expect("θn lies in [0, n]")
    }

    /// `TH_θ(x)`.
    pub fn reference(&self, x: &BitVector) -> bool {
        x.weight() >= self.cut()
    }

    /// `41·√(n·ln(1/ε))`.
    pub fn degree_bound(&self) -> f64 {
        degree_bound(self.n, self.eps_f64())
    }
}

/// Parses `a/b`, an integer, or a decimal like `0.24` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidParameters(format!("not a rational number: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let value = BigRational::new(num, den);
    Ok(if neg { -value } else { value })
}

/// `true` when `v` is the 0/1 value `expected`.
pub(crate) fn agrees(v: &BigInt, expected: bool) -> bool {
    if expected {
        v.is_one()
    } else {
        v.is_zero()
    }
}
