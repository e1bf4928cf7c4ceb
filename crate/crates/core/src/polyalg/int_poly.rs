use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::monomial::{for_each_subset, Monomial};
use super::{binomial, Gf2Polynomial};
use crate::error::{check_dim, Error, Result};
use crate::vectors::BitVector;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Explicit(BTreeMap<Monomial, BigInt>),
    /// `coeffs[i]` multiplies the elementary symmetric polynomial `e_i`.
    /// Trailing zeros are trimmed.
    Symmetric(Vec<BigInt>),
}

/// A multilinear polynomial with arbitrary-precision integer coefficients.
///
/// Two storage modes share one value semantics: explicit monomial maps, and a
/// symmetric mode keyed by degree for polynomials whose coefficient depends only
/// on monomial degree. Symmetric polynomials expand to explicit form on demand.
#[derive(Clone, Debug)]
pub struct IntPolynomial {
    nvars: usize,
    repr: Repr,
}

impl IntPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            repr: Repr::Explicit(BTreeMap::new()),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::from_terms(nvars, [(Monomial::one(), c.into())]).expect("constant term is in range")
    }

    pub fn var(nvars: usize, i: u32) -> Result<Self> {
        Self::from_terms(nvars, [(Monomial::var(i), BigInt::one())])
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            if let Some(v) = m.max_var() {
                if v as usize >= nvars {
                    return Err(Error::InvalidParameters(format!(
                        "variable {v} out of range for {nvars} variables"
                    )));
                }
            }
            *map.entry(m).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self {
            nvars,
            repr: Repr::Explicit(map),
        })
    }

    /// `Σ coeffs[i] · e_i(x)` in symmetric storage.
    pub fn symmetric(nvars: usize, mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() > nvars + 1 {
            return Err(Error::InvalidParameters(format!(
                "symmetric degree {} exceeds {nvars} variables",
                coeffs.len() - 1
            )));
        }
        Ok(Self {
            nvars,
            repr: Repr::Symmetric(coeffs),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self.repr, Repr::Symmetric(_))
    }

    /// Degree-indexed coefficients when stored in symmetric mode.
    pub fn symmetric_coeffs(&self) -> Option<&[BigInt]> {
        match &self.repr {
            Repr::Symmetric(c) => Some(c),
            Repr::Explicit(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Explicit(m) => m.is_empty(),
            Repr::Symmetric(c) => c.is_empty(),
        }
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        match &self.repr {
            Repr::Explicit(m) => m.keys().map(Monomial::degree).max().unwrap_or(0),
            Repr::Symmetric(c) => c.len().saturating_sub(1),
        }
    }

    /// Number of monomials with nonzero coefficient, saturating at `u128::MAX`.
    pub fn num_monomials(&self) -> u128 {
        match &self.repr {
            Repr::Explicit(m) => m.len() as u128,
            Repr::Symmetric(c) => c
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .fold(0u128, |acc, (i, _)| {
                    acc.saturating_add(super::binomial_saturating(self.nvars as u64, i as u64))
                }),
        }
    }

    /// Exact value at a Boolean point.
    pub fn eval(&self, x: &BitVector) -> Result<BigInt> {
        check_dim(self.nvars, x.dim())?;
        Ok(match &self.repr {
            Repr::Explicit(m) => m
                .iter()
                .filter(|(mono, _)| mono.eval(x))
                .map(|(_, c)| c)
                .sum(),
            Repr::Symmetric(c) => eval_symmetric(c, x.weight() as u64),
        })
    }

    /// Value on any point of weight `w`; only defined for symmetric storage.
    pub fn eval_at_weight(&self, w: u64) -> Option<BigInt> {
        self.symmetric_coeffs().map(|c| eval_symmetric(c, w))
    }

    /// Explicit term map; symmetric polynomials are expanded.
    pub fn terms(&self) -> BTreeMap<Monomial, BigInt> {
        match &self.repr {
            Repr::Explicit(m) => m.clone(),
            Repr::Symmetric(c) => {
                let mut map = BTreeMap::new();
                for (i, a) in c.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for_each_subset(self.nvars as u32, i, |s| {
                        map.insert(Monomial::from_sorted(s.to_vec()), a.clone());
                    });
                }
                map
            }
        }
    }

    /// Same polynomial in explicit storage.
    pub fn to_explicit(&self) -> Self {
        Self {
            nvars: self.nvars,
            repr: Repr::Explicit(self.terms()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        if let (Repr::Symmetric(a), Repr::Symmetric(b)) = (&self.repr, &other.repr) {
            let len = a.len().max(b.len());
            let coeffs = (0..len)
                .map(|i| {
                    a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()
                })
                .collect();
            return Self::symmetric(self.nvars, coeffs);
        }
        Self::from_terms(self.nvars, self.terms().into_iter().chain(other.terms()))
    }

    pub fn neg(&self) -> Self {
        let repr = match &self.repr {
            Repr::Explicit(m) => Repr::Explicit(m.iter().map(|(k, c)| (k.clone(), -c)).collect()),
            Repr::Symmetric(c) => Repr::Symmetric(c.iter().map(|a| -a).collect()),
        };
        Self {
            nvars: self.nvars,
            repr,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        let repr = match &self.repr {
            Repr::Explicit(m) => Repr::Explicit(m.iter().map(|(mo, c)| (mo.clone(), c * k)).collect()),
            Repr::Symmetric(c) => Repr::Symmetric(c.iter().map(|a| a * k).collect()),
        };
        Self {
            nvars: self.nvars,
            repr,
        }
    }

    /// Multilinear product (`x_i² = x_i`).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        let (a, b) = (self.terms(), other.terms());
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                *out.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Self {
            nvars: self.nvars,
            repr: Repr::Explicit(out),
        })
    }

    /// Relabels variable `i` as `map[i]` in a polynomial over `nvars` variables.
    pub fn rename(&self, map: &[u32], nvars: usize) -> Result<Self> {
        check_dim(self.nvars, map.len())?;
        if let Some(&v) = map.iter().find(|&&v| v as usize >= nvars) {
            return Err(Error::InvalidParameters(format!(
                "target variable {v} out of range for {nvars} variables"
            )));
        }
        Self::from_terms(
            nvars,
            self.terms().into_iter().map(|(m, c)| (m.rename(map), c)),
        )
    }

    /// Coefficients reduced mod 2.
    pub fn reduce_mod2(&self) -> Gf2Polynomial {
        let terms = self
            .terms()
            .into_iter()
            .filter(|(_, c)| c.is_odd())
            .map(|(m, _)| m);
        Gf2Polynomial::from_terms(self.nvars, terms).expect("variables already in range")
    }

    /// One term per line: `<coeff> : i1,i2,...`, or `sym <degree> <coeff>` in symmetric mode.
    pub fn to_debug_string(&self) -> String {
        let mut out = String::new();
        match &self.repr {
            Repr::Explicit(m) => {
                for (mono, c) in m {
                    out.push_str(&format!("{c} : {}\n", mono.csv()));
                }
            }
            Repr::Symmetric(c) => {
                for (i, a) in c.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                    out.push_str(&format!("sym {i} {a}\n"));
                }
            }
        }
        out
    }

    pub fn parse_debug_string(text: &str, nvars: usize) -> Result<Self> {
        let mut explicit = Vec::new();
        let mut sym: Vec<BigInt> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = || Error::Parse {
                line: i + 1,
                message: format!("malformed term {line:?}"),
            };
            if let Some(rest) = line.strip_prefix("sym ") {
                let (deg, coeff) = rest.trim().split_once(' ').ok_or_else(err)?;
                let deg: usize = deg.parse().map_err(|_| err())?;
                let coeff: BigInt = coeff.trim().parse().map_err(|_| err())?;
                if sym.len() <= deg {
                    sym.resize(deg + 1, BigInt::zero());
                }
                sym[deg] += coeff;
            } else {
                let (coeff, vars) = line.split_once(':').ok_or_else(err)?;
                let coeff: BigInt = coeff.trim().parse().map_err(|_| err())?;
                explicit.push((Monomial::parse_csv(vars).ok_or_else(err)?, coeff));
            }
        }
        match (explicit.is_empty(), sym.is_empty()) {
            (_, true) => Self::from_terms(nvars, explicit),
            (true, false) => Self::symmetric(nvars, sym),
            (false, false) => Err(Error::Parse {
                line: 1,
                message: "mixed explicit and symmetric terms".into(),
            }),
        }
    }
}

/// Same polynomial function, regardless of storage mode.
impl PartialEq for IntPolynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        match (&self.repr, &other.repr) {
            (Repr::Symmetric(a), Repr::Symmetric(b)) => a == b,
            _ => self.terms() == other.terms(),
        }
    }
}

impl Eq for IntPolynomial {}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_debug_string())
    }
}

/// `Σ a_i · C(w, i)`.
pub(crate) fn eval_symmetric(coeffs: &[BigInt], w: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut c = BigInt::one();
    for (i, a) in coeffs.iter().enumerate() {
        let i = i as u64;
        if i > w {
            break;
        }
        if i > 0 {
            c = c * (w - i + 1) / i;
        }
        total += a * &c;
    }
    total
}

#[allow(dead_code)]
pub(crate) fn eval_symmetric_reference(coeffs: &[BigInt], w: u64) -> BigInt {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| a * binomial(w, i as u64))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        BitVector::parse_01(s).unwrap()
    }

    fn linear(nvars: usize, c0: i64, coeffs: &[i64]) -> IntPolynomial {
        let mut terms = vec![(Monomial::one(), BigInt::from(c0))];
        for (i, &c) in coeffs.iter().enumerate() {
            terms.push((Monomial::var(i as u32), BigInt::from(c)));
        }
        IntPolynomial::from_terms(nvars, terms).unwrap()
    }

    #[test]
    fn eval_examples() {
        let p = linear(3, -1, &[1, 1, 1]);
        assert_eq!(p.eval(&bv("110")).unwrap(), BigInt::from(1));
        assert_eq!(IntPolynomial::constant(4, 7).eval(&bv("1010")).unwrap(), BigInt::from(7));
        assert_eq!(IntPolynomial::zero(2).eval(&bv("11")).unwrap(), BigInt::zero());
        assert!(p.eval(&bv("11")).is_err());
    }

    #[test]
    fn mul_examples() {
        let x1 = IntPolynomial::var(1, 0).unwrap();
        assert_eq!(x1.mul(&x1).unwrap(), x1);
        let one_plus = linear(1, 1, &[1]);
        let one_minus = linear(1, 1, &[-1]);
        assert_eq!(one_plus.mul(&one_minus).unwrap(), one_minus);
        assert!(x1.mul(&IntPolynomial::zero(1)).unwrap().is_zero());
    }

    #[test]
    fn symmetric_expansion_agrees() {
        let p = IntPolynomial::symmetric(4, vec![3.into(), (-2).into(), 5.into()]).unwrap();
        assert_eq!(p.num_monomials(), 1 + 4 + 6);
        let q = p.to_explicit();
        assert_eq!(q.num_monomials(), 11);
        for bits in 0u32..16 {
            let x = BitVector::from_fn(4, |i| bits >> i & 1 == 1);
            assert_eq!(p.eval(&x).unwrap(), q.eval(&x).unwrap());
        }
        assert_eq!(p, q);
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn symmetric_eval_matches_reference() {
        let coeffs: Vec<BigInt> = (0..12).map(|i| BigInt::from(i * i - 7)).collect();
        for w in 0..20 {
            assert_eq!(eval_symmetric(&coeffs, w), eval_symmetric_reference(&coeffs, w));
        }
    }

    #[test]
    fn debug_string_round_trip() {
        let p = linear(3, -1, &[1, 0, 4]);
        let text = p.to_debug_string();
        assert_eq!(text, "-1 : \n1 : 0\n4 : 2\n");
        assert_eq!(IntPolynomial::parse_debug_string(&text, 3).unwrap(), p);
        let s = IntPolynomial::symmetric(3, vec![1.into(), 0.into(), (-3).into()]).unwrap();
        assert_eq!(s.to_debug_string(), "sym 0 1\nsym 2 -3\n");
        let back = IntPolynomial::parse_debug_string(&s.to_debug_string(), 3).unwrap();
        assert!(back.is_symmetric());
        assert_eq!(back, s);
    }

    #[test]
    fn rename_collapses_variables() {
        let p = IntPolynomial::from_terms(
            2,
            [(Monomial::from_vars(vec![0, 1]), BigInt::from(2)), (Monomial::var(0), 1.into())],
        )
        .unwrap();
        let q = p.rename(&[3, 3], 4).unwrap();
        assert_eq!(q.terms().get(&Monomial::var(3)), Some(&BigInt::from(3)));
        assert_eq!(q.num_monomials(), 1);
    }

    #[test]
    fn reduce_mod2_keeps_odd_terms() {
        let p = linear(3, 3, &[2, -1, 4]);
        let g = p.reduce_mod2();
        assert_eq!(g.num_monomials(), 2);
        for bits in 0u32..8 {
            let x = BitVector::from_fn(3, |i| bits >> i & 1 == 1);
            assert_eq!(g.eval(&x).unwrap(), p.eval(&x).unwrap().is_odd());
        }
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = IntPolynomial> {
        proptest::collection::vec((0u32..(1 << nvars), -5i64..6), 0..12).prop_map(move |ts| {
            let terms = ts.into_iter().map(|(mask, c)| {
                (Monomial::from_mask(u128::from(mask)), BigInt::from(c))
            });
            IntPolynomial::from_terms(nvars, terms).unwrap()
        })
    }

    fn points(nvars: usize) -> impl Iterator<Item = BitVector> {
        (0u32..1 << nvars).map(move |b| BitVector::from_fn(nvars, |i| b >> i & 1 == 1))
    }

    proptest! {
        #[test]
        fn ring_ops_are_pointwise(p in arb_poly(6), q in arb_poly(6)) {
            let sum = p.add(&q).unwrap();
            let diff = p.sub(&q).unwrap();
            let prod = p.mul(&q).unwrap();
            for x in points(6) {
                let (a, b) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
                prop_assert_eq!(sum.eval(&x).unwrap(), &a + &b);
                prop_assert_eq!(diff.eval(&x).unwrap(), &a - &b);
                prop_assert_eq!(prod.eval(&x).unwrap(), &a * &b);
            }
        }
    }
}
