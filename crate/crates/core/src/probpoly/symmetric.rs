use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;

use super::threshold::{SampleTape, SampledThresholdCircuit, SamplerConfig};
use super::{ProbabilisticPolynomial, ThresholdSpec};
use crate::error::{check_dim, Error, Result};
use crate::polyalg::IntPolynomial;
use crate::vectors::BitVector;

/// A symmetric Boolean function, given by its value `f_i` at each weight `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricFunctionSpec {
    n: usize,
    values: Vec<bool>,
}

impl SymmetricFunctionSpec {
    pub fn new(n: usize, values: Vec<bool>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("symmetric function needs n >= 1".into()));
        }
        check_dim(n + 1, values.len())?;
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> bool) -> Result<Self> {
        Self::new(n, (0..=n).map(f).collect())
    }

    pub fn parity(n: usize) -> Result<Self> {
        Self::from_fn(n, |w| w % 2 == 1)
    }

    /// `[|x| = k]`.
    pub fn exact(n: usize, k: usize) -> Result<Self> {
        Self::from_fn(n, |w| w == k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn reference(&self, x: &BitVector) -> bool {
        self.values[x.weight()]
    }

    /// `f_0 + Σ_{i∈A} [w >= i] − Σ_{i∈B} [w >= i]` with exact thresholds.
    pub fn decomposition_at(&self, w: usize) -> i64 {
        let (up, down) = jump_sets(&self.values);
        i64::from(self.values[0]) + up.iter().filter(|&&i| w >= i).count() as i64
            - down.iter().filter(|&&i| w >= i).count() as i64
    }
}

/// `(A, B)`: weights where the value rises from 0 to 1, and where it falls from 1 to 0.
pub fn jump_sets(values: &[bool]) -> (Vec<usize>, Vec<usize>) {
    let mut up = Vec::new();
    let mut down = Vec::new();
    for i in 1..values.len() {
        match (values[i - 1], values[i]) {
            (false, true) => up.push(i),
            (true, false) => down.push(i),
            _ => {}
        }
    }
    (up, down)
}

/// `f_0 + Σ_A TH_{i/n} − Σ_B TH_{i/n}` with every threshold sampled on one shared tape.
#[derive(Clone, Debug)]
pub struct SampledSymmetric {
    spec: SymmetricFunctionSpec,
    tape: Arc<SampleTape>,
    terms: Vec<(i64, SampledThresholdCircuit)>,
}

impl SampledSymmetric {
    pub fn spec(&self) -> &SymmetricFunctionSpec {
        &self.spec
    }

    /// `(sign, circuit)` per jump.
    pub fn terms(&self) -> &[(i64, SampledThresholdCircuit)] {
        &self.terms
    }

    pub fn tape(&self) -> &SampleTape {
        &self.tape
    }

    pub fn structural_degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(_, c)| c.structural_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &BitVector) -> Result<BigInt> {
        check_dim(self.spec.n, x.dim())?;
        let weights = self.tape.weight_chain(x);
        let mut small = i64::from(self.spec.values[0]);
        let mut big: Option<BigInt> = None;
        for (sign, c) in &self.terms {
            match c.eval_weight_chain_small(&weights) {
                Some(v) if v.abs() < 1 << 40 => small += sign * v,
                _ => {
                    let v = c.eval_weight_chain(&weights) * sign;
                    big = Some(big.unwrap_or_default() + v);
                }
            }
        }
        Ok(big.unwrap_or_default() + small)
    }

    pub fn expand(&self, budget: u128) -> Result<IntPolynomial> {
        let n = self.spec.n;
        let mut acc = IntPolynomial::constant(n, i64::from(self.spec.values[0]));
        for (sign, c) in &self.terms {
            acc = acc.add(&c.expand(budget)?.scale(&BigInt::from(*sign)))?;
        }
        Ok(acc)
    }
}

impl ProbabilisticPolynomial for SampledSymmetric {
    fn nvars(&self) -> usize {
        self.spec.n
    }

    fn eval(&self, x: &BitVector) -> Result<BigInt> {
        SampledSymmetric::eval(self, x)
    }
}

/// Samples every jump threshold with error `eps/2`, all sharing one sample tape.
pub fn sample_symmetric<R: Rng + ?Sized>(
    spec: &SymmetricFunctionSpec,
    eps: &BigRational,
    rng: &mut R,
) -> Result<SampledSymmetric> {
    sample_symmetric_with(spec, eps, SamplerConfig::default(), rng)
}

pub fn sample_symmetric_with<R: Rng + ?Sized>(
    spec: &SymmetricFunctionSpec,
    eps: &BigRational,
    config: SamplerConfig,
    rng: &mut R,
) -> Result<SampledSymmetric> {
    if !eps.is_positive() || *eps >= BigRational::one() {
        return Err(Error::InvalidParameters(format!("eps={eps} is outside (0,1)")));
    }
    let half = eps / BigRational::from_integer(2.into());
    let tape = Arc::new(SampleTape::draw(
        spec.n,
        half.to_f64().unwrap_or(0.0),
        config,
        rng,
    ));
    let (up, down) = jump_sets(&spec.values);
    let n_big = BigInt::from(spec.n);
    let mut terms = Vec::with_capacity(up.len() + down.len());
    for (sign, set) in [(1i64, &up), (-1i64, &down)] {
        for &i in set {
            let theta = BigRational::new(BigInt::from(i), n_big.clone());
            let th = ThresholdSpec::new(spec.n, theta, half.clone())?;
            terms.push((sign, SampledThresholdCircuit::on_tape(th, tape.clone())));
        }
    }
    terms.sort_by_key(|(_, c)| c.spec().cut());
    Ok(SampledSymmetric {
        spec: spec.clone(),
        tape,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use num_traits::Zero;
    use rand::Rng;

    #[test]
    fn jump_set_examples() {
        assert_eq!(jump_sets(&[true; 5]), (vec![], vec![]));
        assert_eq!(jump_sets(&[false, false, true, true, true]), (vec![2], vec![]));
        assert_eq!(jump_sets(&[false, true, false, true]), (vec![1, 3], vec![2]));
    }

    #[test]
    fn constant_function_is_constant() {
        let spec = SymmetricFunctionSpec::from_fn(6, |_| true).unwrap();
        let s = sample_symmetric(&spec, &BigRational::new(1.into(), 10.into()), &mut seeded(0)).unwrap();
        assert!(s.terms().is_empty());
        assert_eq!(s.expand(10).unwrap(), IntPolynomial::constant(6, 1));
    }

    #[test]
    fn majority_is_one_threshold() {
        let spec = SymmetricFunctionSpec::from_fn(4, |w| w >= 2).unwrap();
        let s = sample_symmetric(&spec, &BigRational::new(1.into(), 10.into()), &mut seeded(0)).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.terms()[0].0, 1);
        assert_eq!(s.terms()[0].1.spec().theta(), &BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn decomposition_is_exact_on_every_table() {
        for n in 1..=10usize {
            for table in 0u32..1 << (n + 1) {
                let spec = SymmetricFunctionSpec::from_fn(n, |w| table >> w & 1 == 1).unwrap();
                for w in 0..=n {
                    assert_eq!(spec.decomposition_at(w), i64::from(spec.values()[w]));
                }
            }
        }
        let mut rng = seeded(3);
        for n in 11..=64usize {
            for _ in 0..20 {
                let spec = SymmetricFunctionSpec::from_fn(n, |_| rng.random()).unwrap();
                for w in 0..=n {
                    assert_eq!(spec.decomposition_at(w), i64::from(spec.values()[w]));
                }
            }
        }
    }

    #[test]
    fn thresholds_share_the_tape() {
        let spec = SymmetricFunctionSpec::parity(50_000).unwrap();
        let eps = BigRational::new(1.into(), 10.into());
        let s = sample_symmetric(&spec, &eps, &mut seeded(5)).unwrap();
        let first = s.terms()[0].1.root().sample_map().unwrap().as_ptr();
        assert!(s
            .terms()
            .iter()
            .all(|(_, c)| c.root().sample_map().unwrap().as_ptr() == first));
    }

    #[test]
    fn small_symmetric_matches_expansion() {
        let config = SamplerConfig {
            base_rule: super::super::BaseCaseRule::SizeAtMost(1),
        };
        let eps = BigRational::new(1.into(), 5.into());
        let spec = SymmetricFunctionSpec::parity(11).unwrap();
        for seed in 0..5 {
            let s = sample_symmetric_with(&spec, &eps, config, &mut seeded(seed)).unwrap();
            let p = s.expand(1 << 20).unwrap();
            for bits in 0u32..1 << 11 {
                let x = BitVector::from_fn(11, |i| bits >> i & 1 == 1);
                assert_eq!(s.eval(&x).unwrap(), p.eval(&x).unwrap());
            }
        }
        let exact = SymmetricFunctionSpec::exact(8, 3).unwrap();
        let s = sample_symmetric(&exact, &eps, &mut seeded(1)).unwrap();
        for bits in 0u32..256 {
            let x = BitVector::from_fn(8, |i| bits >> i & 1 == 1);
            let v = s.eval(&x).unwrap();
            assert_eq!(v.is_zero(), !exact.reference(&x));
        }
    }
}
