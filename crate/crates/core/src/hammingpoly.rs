//! The probabilistic GF(2) polynomial for "some pair of two `s`-groups is within
//! Hamming distance `k`".
//!
//! With `p ≈ TH_{(k+1)/d}` sampled at error `1/s³` and reduced mod 2,
//! `q = 1 + Π_{t=1,2} (1 + Σ_{(i,j)∈R_t} (1 + p(x_i ⊕ y_j)))` over GF(2), where
//! `R_1, R_2` are uniform subsets of `[s]²`. Variables are laid out as the `s`
//! blocks of `x` (indices `i·d + l`) followed by the `s` blocks of `y`
//! (indices `s·d + j·d + l`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{check_dim, Error, Result};
use crate::polyalg::{
    binomial_saturating, mul_masks, sum_binomials_saturating, toggle_set, Gf2Polynomial, Monomial,
    StepInterpolant,
};
use crate::probpoly::{
    degree_bound, sample_threshold, BaseCaseRule, CircuitKind, SampledThresholdCircuit, ThresholdSpec,
};
use crate::vectors::BitVector;

/// Shape of the group predicate: two groups of `s` vectors of dimension `d`, threshold `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupPredicateSpec {
    s: usize,
    d: usize,
    k: usize,
}

impl GroupPredicateSpec {
    pub fn new(s: usize, d: usize, k: usize) -> Result<Self> {
        if s == 0 || d == 0 {
            return Err(Error::InvalidParameters("group size and dimension must be positive".into()));
        }
        if k >= d {
            return Err(Error::InvalidParameters(format!(
                "distance threshold k={k} must be below the dimension {d}"
            )));
        }
        Ok(Self { s, d, k })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nvars(&self) -> usize {
        2 * self.s * self.d
    }

    /// Error of the inner threshold polynomial: `1/s³`.
    pub fn inner_eps(&self) -> BigRational {
        BigRational::new(1.into(), BigInt::from(self.s).pow(3))
    }

    /// Whether `d > log₂ s`, the dimension requirement behind the monomial bound
    /// with its unknown constant set to 1. Advisory only.
    pub fn meets_dimension_requirement(&self) -> bool {
        self.d as f64 > (self.s as f64).log2()
    }

    /// Upper bound on the expanded monomial count of any draw, taking `R_1 = R_2 = [s]²`.
    pub fn projected_monomials(&self) -> u128 {
        let eps = 1.0 / (self.s as f64).powi(3);
        let profile = if self.s == 1 || BaseCaseRule::Standard.is_base(self.d, eps) {
            InnerPredicate::exact(self.d, self.k).gf2_degree_profile(self.d)
        } else {
            let deg = degree_bound(self.d, eps).floor() as usize;
            full_profile(self.d, deg.min(self.d))
        };
        let cells = (self.s * self.s) as u128;
        project(&profile, cells, cells, self.nvars())
    }

    /// True value of the predicate.
    pub fn reference(&self, xs: &[BitVector], ys: &[BitVector]) -> Result<bool> {
        self.check_groups(xs, ys)?;
        Ok(xs
            .iter()
            .any(|x| ys.iter().any(|y| x.distance_unchecked(y) <= self.k)))
    }

    fn check_groups(&self, xs: &[BitVector], ys: &[BitVector]) -> Result<()> {
        check_dim(self.s, xs.len())?;
        check_dim(self.s, ys.len())?;
        for v in xs.iter().chain(ys) {
            check_dim(self.d, v.dim())?;
        }
        Ok(())
    }
}

/// The polynomial standing in for `TH_{(k+1)/d}` on `x_i ⊕ y_j`.
#[derive(Clone, Debug)]
pub enum InnerPredicate {
    Sampled(SampledThresholdCircuit),
    /// The true threshold, realized by its exact interpolating polynomial.
    Exact(StepInterpolant),
}

impl InnerPredicate {
    fn exact(d: usize, k: usize) -> Self {
        InnerPredicate::Exact(StepInterpolant::new(d, 0, d, k as i64 + 1).expect("full band"))
    }

    /// Inner value mod 2 on `z`.
    pub fn eval_bit(&self, z: &BitVector) -> bool {
        match self {
            InnerPredicate::Sampled(c) => c.eval(z).expect("dimension checked").is_odd(),
            InnerPredicate::Exact(p) => p.step(z.weight()),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            InnerPredicate::Sampled(c) => c.structural_degree(),
            InnerPredicate::Exact(p) => p.degree(),
        }
    }

    /// Symmetric coefficients when the inner polynomial is a single interpolant.
    fn symmetric_coeffs(&self) -> Option<&[BigInt]> {
        match self {
            InnerPredicate::Exact(p) => p.polynomial().symmetric_coeffs(),
            InnerPredicate::Sampled(c) if c.kind() == CircuitKind::ExactBase => {
                c.root().interpolant().polynomial().symmetric_coeffs()
            }
            InnerPredicate::Sampled(_) => None,
        }
    }

    /// Monomials of the GF(2) reduction per degree, or an upper bound for recursive circuits.
    fn gf2_degree_profile(&self, d: usize) -> Vec<u128> {
        match self.symmetric_coeffs() {
            Some(c) => c
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    if a.is_odd() {
                        binomial_saturating(d as u64, i as u64)
                    } else {
                        0
                    }
                })
                .collect(),
            None => full_profile(d, self.degree().min(d)),
        }
    }

    /// The GF(2) reduction over `d` variables.
    pub fn to_gf2(&self, d: usize, budget: u128) -> Result<Gf2Polynomial> {
        let projected: u128 = self
            .gf2_degree_profile(d)
            .iter()
            .fold(0u128, |a, &b| a.saturating_add(b));
        if projected > budget {
            return Err(Error::Budget { projected, budget });
        }
        match self {
            InnerPredicate::Sampled(c) => Ok(c.expand(u128::MAX)?.reduce_mod2()),
            InnerPredicate::Exact(p) => Ok(p.polynomial().reduce_mod2()),
        }
    }
}

/// One draw of the group polynomial `q`.
#[derive(Clone, Debug)]
pub struct SampledHammingPolynomial {
    spec: GroupPredicateSpec,
    inner: InnerPredicate,
    r1: Vec<bool>,
    r2: Vec<bool>,
}

/// Which inner polynomial to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InnerMode {
    /// Sampled threshold circuit at error `1/s³` (exact when `s = 1`).
    #[default]
    Sampled,
    /// The true threshold function.
    Exact,
}

/// Samples `q`: the inner threshold circuit first, then `R_1` and `R_2` by one fair
/// coin per element of `[s]²`.
pub fn sample_hamming_poly<R: Rng + ?Sized>(
    spec: GroupPredicateSpec,
    rng: &mut R,
) -> SampledHammingPolynomial {
    sample_hamming_poly_with(spec, InnerMode::Sampled, rng)
}

pub fn sample_hamming_poly_with<R: Rng + ?Sized>(
    spec: GroupPredicateSpec,
    mode: InnerMode,
    rng: &mut R,
) -> SampledHammingPolynomial {
    let inner = if mode == InnerMode::Exact || spec.s == 1 {
        // ε = 1/s³ = 1 leaves nothing to sample at s = 1
        InnerPredicate::exact(spec.d, spec.k)
    } else {
        let theta = BigRational::new(BigInt::from(spec.k + 1), BigInt::from(spec.d));
        let th = ThresholdSpec::new(spec.d, theta, spec.inner_eps()).expect("valid threshold");
        InnerPredicate::Sampled(sample_threshold(&th, rng))
    };
    let cells = spec.s * spec.s;
    let r1 = (0..cells).map(|_| rng.random()).collect();
    let r2 = (0..cells).map(|_| rng.random()).collect();
    SampledHammingPolynomial {
        spec,
        inner,
        r1,
        r2,
    }
}

impl SampledHammingPolynomial {
    /// Assembles `q` from explicit parts; `r1`/`r2` hold `(i, j)` at index `i·s + j`.
    pub fn from_parts(
        spec: GroupPredicateSpec,
        mode: InnerMode,
        r1: Vec<bool>,
        r2: Vec<bool>,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        check_dim(spec.s * spec.s, r1.len())?;
        check_dim(spec.s * spec.s, r2.len())?;
        let mut hp = sample_hamming_poly_with(spec, mode, rng);
        hp.r1 = r1;
        hp.r2 = r2;
        Ok(hp)
    }

    pub fn spec(&self) -> &GroupPredicateSpec {
        &self.spec
    }

    pub fn inner(&self) -> &InnerPredicate {
        &self.inner
    }

    pub fn r1(&self) -> Vec<(usize, usize)> {
        cells(&self.r1, self.spec.s)
    }

    pub fn r2(&self) -> Vec<(usize, usize)> {
        cells(&self.r2, self.spec.s)
    }

    /// Degree bound `2·deg(inner)`, capped by the variable count.
    pub fn degree_bound(&self) -> usize {
        (2 * self.inner.degree()).min(self.spec.nvars())
    }

    /// Evaluates `q` on two groups without expanding it.
    pub fn eval_group_pair(&self, xs: &[BitVector], ys: &[BitVector]) -> Result<bool> {
        self.spec.check_groups(xs, ys)?;
        Ok(self.eval_unchecked(xs, ys))
    }

    pub(crate) fn eval_unchecked(&self, xs: &[BitVector], ys: &[BitVector]) -> bool {
        let s = self.spec.s;
        let mut cache: Vec<Option<bool>> = vec![None; s * s];
        let mut term = |c: usize| -> bool {
            *cache[c].get_or_insert_with(|| {
                let z = xs[c / s].xor(&ys[c % s]).expect("same dimension");
                !self.inner.eval_bit(&z)
            })
        };
        let mut factor = |set: &[bool]| -> bool {
            let mut acc = true;
            for (c, &inside) in set.iter().enumerate() {
                if inside {
                    acc ^= term(c);
                }
            }
            acc
        };
        let f1 = factor(&self.r1);
        let f2 = factor(&self.r2);
        !(f1 & f2)
    }

    /// Upper bound on the monomial count of [`expand`](Self::expand).
    pub fn projected_monomials(&self) -> u128 {
        let count = |set: &[bool]| set.iter().filter(|&&b| b).count() as u128;
        project(
            &self.inner.gf2_degree_profile(self.spec.d),
            count(&self.r1),
            count(&self.r2),
            self.spec.nvars(),
        )
    }

    /// The explicit multilinear polynomial over `2sd` variables.
    pub fn expand(&self, budget: u128) -> Result<Gf2Polynomial> {
        let projected = self.projected_monomials();
        if projected > budget {
            return Err(Error::Budget { projected, budget });
        }
        let (s, d) = (self.spec.s, self.spec.d);
        let nvars = self.spec.nvars();
        let inner = self.inner.to_gf2(d, u128::MAX)?;
        if nvars <= 128 {
            return Ok(self.expand_masks(&inner));
        }
        let substituted = |c: usize| -> Vec<Monomial> {
            let (i, j) = (c / s, c % s);
            let mut out = Vec::new();
            for m in inner.terms() {
                let vars = m.vars();
                for mask in 0u64..1 << vars.len() {
                    let mut mono: Vec<u32> = Vec::with_capacity(vars.len());
                    for (b, &l) in vars.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            mono.push((i * d) as u32 + l);
                        }
                    }
                    for (b, &l) in vars.iter().enumerate() {
                        if mask >> b & 1 == 0 {
                            mono.push((s * d + j * d) as u32 + l);
                        }
                    }
                    out.push(Monomial::from_sorted(mono));
                }
            }
            out
        };
        let factor = |set: &[bool]| -> Result<Gf2Polynomial> {
            // 1 + Σ (1 + P(x_i + y_j))
            let mut terms = vec![Monomial::one()];
            for (c, &inside) in set.iter().enumerate() {
                if inside {
                    terms.push(Monomial::one());
                    terms.extend(substituted(c));
                }
            }
            Gf2Polynomial::from_terms(nvars, terms)
        };
        let f1 = factor(&self.r1)?;
        let f2 = factor(&self.r2)?;
        Ok(f1.mul(&f2)?.add_one())
    }

    /// [`expand`](Self::expand) with monomials as `u128` variable masks.
    fn expand_masks(&self, inner: &Gf2Polynomial) -> Gf2Polynomial {
        let (s, d) = (self.spec.s, self.spec.d);
        let inner_masks: Vec<Vec<u32>> = inner.terms().iter().map(|m| m.vars().to_vec()).collect();
        let factor = |set: &[bool]| -> Vec<u128> {
            let mut masks = vec![0u128];
            for (c, &inside) in set.iter().enumerate() {
                if !inside {
                    continue;
                }
                let (x0, y0) = (c / s * d, s * d + c % s * d);
                masks.push(0);
                for vars in &inner_masks {
                    // Π_{l∈S} (x_l + y_l) = Σ_{T⊆S} x_T y_{S∖T}
                    for pick in 0u64..1 << vars.len() {
                        let mut m = 0u128;
                        for (b, &l) in vars.iter().enumerate() {
                            let at = if pick >> b & 1 == 1 { x0 } else { y0 } + l as usize;
                            m |= 1 << at;
                        }
                        masks.push(m);
                    }
                }
            }
            toggle_set(masks)
        };
        let f1 = factor(&self.r1);
        let f2 = factor(&self.r2);
        let mut product = mul_masks(self.spec.nvars(), &f1, &f2);
        product.push(0);
        Gf2Polynomial::from_masks(self.spec.nvars(), product)
    }
}

fn full_profile(d: usize, deg: usize) -> Vec<u128> {
    (0..=deg).map(|i| binomial_saturating(d as u64, i as u64)).collect()
}

/// Monomials of `(1 + Σ_{c1} T)(1 + Σ_{c2} T) + 1`, where a degree-`i` inner monomial
/// substituted at `x ⊕ y` yields `2^i` terms; capped by the multilinear count.
fn project(profile: &[u128], cells1: u128, cells2: u128, nvars: usize) -> u128 {
    let per_term = profile
        .iter()
        .enumerate()
        .fold(1u128, |acc, (i, &c)| acc.saturating_add(c.saturating_mul(1u128 << i.min(127))));
    let degree = profile.iter().rposition(|&c| c > 0).unwrap_or(0);
    let f1 = cells1.saturating_mul(per_term).saturating_add(1);
    let f2 = cells2.saturating_mul(per_term).saturating_add(1);
    let product = f1.saturating_mul(f2).saturating_add(1);
    let cap = sum_binomials_saturating(nvars as u64, (2 * degree).min(nvars) as u64);
    product.min(cap)
}

fn cells(set: &[bool], s: usize) -> Vec<(usize, usize)> {
    set.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(c, _)| (c / s, c % s))
        .collect()
}

/// Concatenation `x_1 ‖ … ‖ x_s`, the block layout `q` expects on each side.
pub fn group_input(vectors: &[BitVector]) -> BitVector {
    BitVector::concat(vectors)
}

/// `s⁴·C(2d, deg)`, the shape of the monomial-count bound.
pub fn monomial_bound_shape(s: usize, d: usize, inner_degree: usize) -> f64 {
    (s as f64).powi(4) * binomial_saturating(2 * d as u64, inner_degree as u64).to_f64().unwrap_or(f64::MAX)
}
