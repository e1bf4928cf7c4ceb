use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{ProbabilisticPolynomial, ThresholdSpec};
use crate::error::{check_dim, Error, Result};
use crate::polyalg::{sum_binomials_saturating, IntPolynomial, StepInterpolant};
use crate::vectors::BitVector;

/// Constant of the degree bound `41·√(n·ln(1/ε))`.
pub const DEGREE_CONSTANT: f64 = 41.0;

/// `41·√(n·ln(1/ε))` for a float error.
pub fn degree_bound(n: usize, eps: f64) -> f64 {
    DEGREE_CONSTANT * (n as f64 * (1.0 / eps).ln()).sqrt()
}

/// When a node stops recursing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BaseCaseRule {
    /// Exact polynomial when `n <= 10` or the degree bound already reaches `n`.
    #[default]
    Standard,
    /// Exact polynomial only when `n <= m`; lets small instances exercise recursion.
    SizeAtMost(usize),
}

impl BaseCaseRule {
    pub fn is_base(self, n: usize, eps: f64) -> bool {
        match self {
            BaseCaseRule::Standard => n <= 10 || degree_bound(n, eps) >= n as f64,
            BaseCaseRule::SizeAtMost(m) => n <= m,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SamplerConfig {
    pub base_rule: BaseCaseRule,
}

/// Coordinate samples for every recursion level.
///
/// Every node at depth `ℓ` reads its subsample through `maps[ℓ]`, so the three
/// children of a node see the same `x̃`, and circuits built on one tape share
/// their samples level by level.
#[derive(Clone, Debug)]
pub struct SampleTape {
    sizes: Vec<usize>,
    maps: Vec<Arc<Vec<u32>>>,
    distinct: Vec<usize>,
}

impl SampleTape {
    /// Draws maps until the base rule fires; the error budget divides by 4 per level.
    pub fn draw<R: Rng + ?Sized>(n: usize, eps: f64, config: SamplerConfig, rng: &mut R) -> Self {
        let mut sizes = vec![n];
        let mut maps = Vec::new();
        let (mut size, mut e) = (n, eps);
        while !config.base_rule.is_base(size, e) {
            let m = (size / 10).max(1);
            let map: Vec<u32> = (0..m).map(|_| rng.random_range(0..size as u32)).collect();
            maps.push(Arc::new(map));
            size = m;
            e /= 4.0;
            sizes.push(size);
        }
        let distinct = maps
            .iter()
            .map(|m| {
                let mut d = m.to_vec();
                d.sort_unstable();
                d.dedup();
                d.len()
            })
            .collect();
        Self {
            sizes,
            maps,
            distinct,
        }
    }

    /// Number of recursive levels above the exact base level.
    pub fn levels(&self) -> usize {
        self.maps.len()
    }

    pub fn size_at(&self, depth: usize) -> usize {
        self.sizes[depth]
    }

    pub fn map(&self, depth: usize) -> &[u32] {
        &self.maps[depth]
    }

    /// Weight of the input seen at each depth: `|x|`, `|x̃|`, `|x̃̃|`, ...
    pub fn weight_chain(&self, x: &BitVector) -> Vec<usize> {
        let mut weights = Vec::with_capacity(self.sizes.len());
        weights.push(x.weight());
        let mut cur = x.clone();
        for map in &self.maps {
            cur = cur.gather(map);
            weights.push(cur.weight());
        }
        weights
    }
}

/// Threshold position of a node: exact at the root and along inner children,
/// shifted by `±a/√n` in floating point for the NEAR children.
#[derive(Clone, Debug)]
enum Theta {
    Exact(BigRational),
    Approx(f64),
}

impl Theta {
    fn to_f64(&self) -> f64 {
        match self {
            Theta::Exact(t) => t.to_f64().unwrap_or(0.0),
            Theta::Approx(t) => *t,
        }
    }

    /// Smallest weight `w` with `w/m >= θ`, clamped to `0..=m+1`.
    fn cut(&self, m: usize) -> i64 {
        let c = match self {
            Theta::Exact(t) => (t * BigRational::from_integer(m.into()))
                .ceil()
                .to_integer()
                .to_i64()
                .unwrap_or(i64::MAX),
            Theta::Approx(t) => {
                let v = (t * m as f64).ceil();
                if v.is_nan() {
                    0
                } else {
                    v.clamp(-1.0, m as f64 + 2.0) as i64
                }
            }
        };
        c.clamp(0, m as i64 + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitKind {
    ExactBase,
    Recursive,
}

#[derive(Clone, Debug)]
enum NodeKind {
    Base(StepInterpolant),
    Recursive {
        band: StepInterpolant,
        a_param: f64,
        sample_map: Arc<Vec<u32>>,
        children: Box<[CircuitNode; 3]>,
    },
}

/// One node of a sampled threshold circuit, computing `TH` on `nvars` inputs
/// with the threshold rounded to the integer weight `cut`.
#[derive(Clone, Debug)]
pub struct CircuitNode {
    nvars: usize,
    depth: usize,
    cut: i64,
    degree: usize,
    kind: NodeKind,
}

impl CircuitNode {
    fn build(theta: Theta, eps: f64, depth: usize, tape: &SampleTape) -> Self {
        let n = tape.size_at(depth);
        let cut = theta.cut(n);
        if depth == tape.levels() {
            let base = StepInterpolant::new(n, 0, n, cut).expect("full band");
            return Self {
                nvars: n,
                depth,
                cut,
                degree: base.degree(),
                kind: NodeKind::Base(base),
            };
        }
        let a = 10f64.sqrt() * (1.0 / eps).ln().sqrt();
        let delta = a / (n as f64).sqrt();
        let center = theta.to_f64() * n as f64;
        let radius = 2.0 * a * (n as f64).sqrt();
        let lo = (center - radius).ceil().max(0.0);
        let hi = (center + radius).floor().min(n as f64);
        let (lo, hi) = if lo <= hi {
            (lo as usize, hi as usize)
        } else {
            let w = center.round().clamp(0.0, n as f64) as usize;
            (w, w)
        };
        let band = StepInterpolant::new(n, lo, hi, cut).expect("band inside 0..=n");
        let child_eps = eps / 4.0;
        let t = theta.to_f64();
        let near_hi = Self::build(Theta::Approx(t + delta), child_eps, depth + 1, tape);
        let near_lo = Self::build(Theta::Approx(t - delta), child_eps, depth + 1, tape);
        let inner = Self::build(theta, child_eps, depth + 1, tape);
        let sample_map = tape.maps[depth].clone();
        let cap = |d: usize| d.min(tape.distinct[depth]);
        let degree = (cap(near_hi.degree) + cap(near_lo.degree) + band.degree().max(cap(inner.degree)))
            .min(n);
        Self {
            nvars: n,
            depth,
            cut,
            degree,
            kind: NodeKind::Recursive {
                band,
                a_param: a,
                sample_map,
                children: Box::new([near_hi, near_lo, inner]),
            },
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The node computes `[|x| >= cut]` on inputs where its sub-events hold.
    pub fn cut(&self) -> i64 {
        self.cut
    }

    pub fn kind(&self) -> CircuitKind {
        match self.kind {
            NodeKind::Base(_) => CircuitKind::ExactBase,
            NodeKind::Recursive { .. } => CircuitKind::Recursive,
        }
    }

    /// Degree bound from the structure: `deg(near_hi) + deg(near_lo) + max(deg A, deg inner)`,
    /// each child capped by its distinct sampled coordinates, and everything capped by `n`.
    pub fn structural_degree(&self) -> usize {
        self.degree
    }

    pub fn a_param(&self) -> Option<f64> {
        match &self.kind {
            NodeKind::Recursive { a_param, .. } => Some(*a_param),
            NodeKind::Base(_) => None,
        }
    }

    /// Coordinates of this node's input that form the children's input.
    pub fn sample_map(&self) -> Option<&[u32]> {
        match &self.kind {
            NodeKind::Recursive { sample_map, .. } => Some(sample_map),
            NodeKind::Base(_) => None,
        }
    }

    /// The interpolating polynomial: the band polynomial `A` of a recursive node, or
    /// the exact polynomial of a base node.
    pub fn interpolant(&self) -> &StepInterpolant {
        match &self.kind {
            NodeKind::Base(p) => p,
            NodeKind::Recursive { band, .. } => band,
        }
    }

    /// `(near_hi, near_lo, inner)` for recursive nodes.
    pub fn children(&self) -> Option<(&CircuitNode, &CircuitNode, &CircuitNode)> {
        match &self.kind {
            NodeKind::Recursive { children, .. } => {
                let [a, b, c] = &**children;
                Some((a, b, c))
            }
            NodeKind::Base(_) => None,
        }
    }

    /// Small-integer evaluation from the weight chain; `None` if an off-band value
    /// or an overflow needs big integers.
    fn eval_small(&self, weights: &[usize]) -> Option<i64> {
        let w = weights[self.depth];
        match &self.kind {
            NodeKind::Base(p) => small_value(p, w),
            NodeKind::Recursive { band, children, .. } => {
                let [hi, lo, inner] = &**children;
                let h = hi.eval_small(weights)?;
                let l = lo.eval_small(weights)?;
                let s = (1i64.checked_sub(h)?).checked_mul(l)?;
                if s == 0 {
                    return inner.eval_small(weights);
                }
                let a = small_value(band, w)?;
                if s == 1 {
                    return Some(a);
                }
                let m = inner.eval_small(weights)?;
                a.checked_mul(s)?.checked_add(m.checked_mul(1i64.checked_sub(s)?)?)
            }
        }
    }

    fn eval_big(&self, weights: &[usize]) -> BigInt {
        let w = weights[self.depth];
        match &self.kind {
            NodeKind::Base(p) => p.value_at_weight(w),
            NodeKind::Recursive { band, children, .. } => {
                let [hi, lo, inner] = &**children;
                let s = (BigInt::one() - hi.eval_big(weights)) * lo.eval_big(weights);
                if s.is_zero() {
                    return inner.eval_big(weights);
                }
                let a = band.value_at_weight(w);
                if s.is_one() {
                    return a;
                }
                let one_minus = BigInt::one() - &s;
                a * s + inner.eval_big(weights) * one_minus
            }
        }
    }

    pub(crate) fn eval_weights(&self, weights: &[usize]) -> BigInt {
        match self.eval_small(weights) {
            Some(v) => BigInt::from(v),
            None => self.eval_big(weights),
        }
    }

    /// Explicit polynomial over this node's `nvars` inputs.
    fn expand(&self) -> Result<IntPolynomial> {
        match &self.kind {
            NodeKind::Base(p) => Ok(p.polynomial().clone()),
            NodeKind::Recursive {
                band,
                sample_map,
                children,
                ..
            } => {
                let n = self.nvars;
                let [hi, lo, inner] = &**children;
                let lift = |c: &CircuitNode| -> Result<IntPolynomial> {
                    c.expand()?.rename(sample_map, n)
                };
                let one = IntPolynomial::constant(n, 1);
                let s = one.sub(&lift(hi)?)?.mul(&lift(lo)?)?;
                let a = band.polynomial().to_explicit();
                a.mul(&s)?.add(&lift(inner)?.mul(&one.sub(&s)?)?)
            }
        }
    }
}

fn small_value(p: &StepInterpolant, w: usize) -> Option<i64> {
    let (lo, hi) = p.band();
    let cut = p.cut();
    if p.in_band(w) || cut <= lo as i64 || cut > hi as i64 {
        // in band, or the interpolant is constant
        let v = if cut <= lo as i64 {
            true
        } else if cut > hi as i64 {
            false
        } else {
            p.step(w)
        };
        return Some(i64::from(v));
    }
    let v = p.value_at_weight(w);
    if v.abs() < BigInt::from(1i64 << 40) {
        v.to_i64()
    } else {
        None
    }
}

/// A sampled instance of the threshold polynomial, evaluable without expansion.
#[derive(Clone, Debug)]
pub struct SampledThresholdCircuit {
    spec: ThresholdSpec,
    tape: Arc<SampleTape>,
    root: CircuitNode,
}

impl SampledThresholdCircuit {
    pub(crate) fn on_tape(spec: ThresholdSpec, tape: Arc<SampleTape>) -> Self {
        let root = CircuitNode::build(Theta::Exact(spec.theta().clone()), spec.eps_f64(), 0, &tape);
        Self { spec, tape, root }
    }

    pub fn spec(&self) -> &ThresholdSpec {
        &self.spec
    }

    pub fn root(&self) -> &CircuitNode {
        &self.root
    }

    pub fn tape(&self) -> &SampleTape {
        &self.tape
    }

    pub fn kind(&self) -> CircuitKind {
        self.root.kind()
    }

    /// Number of levels, counting the base level.
    pub fn depth(&self) -> usize {
        self.tape.levels() + 1
    }

    pub fn structural_degree(&self) -> usize {
        self.root.structural_degree()
    }

    /// Monomial count an expansion may produce: `Σ_{i <= deg} C(n, i)`.
    pub fn projected_monomials(&self) -> u128 {
        sum_binomials_saturating(self.spec.n() as u64, self.structural_degree() as u64)
    }

    pub fn eval(&self, x: &BitVector) -> Result<BigInt> {
        check_dim(self.spec.n(), x.dim())?;
        Ok(self.root.eval_weights(&self.tape.weight_chain(x)))
    }

    pub fn eval_weight_chain(&self, weights: &[usize]) -> BigInt {
        self.root.eval_weights(weights)
    }

    pub(crate) fn eval_weight_chain_small(&self, weights: &[usize]) -> Option<i64> {
        self.root.eval_small(weights)
    }

    /// Explicit polynomial over `n` variables, refused beyond `budget` projected monomials.
    pub fn expand(&self, budget: u128) -> Result<IntPolynomial> {
        let projected = self.projected_monomials();
        if projected > budget {
            return Err(Error::Budget { projected, budget });
        }
        self.root.expand()
    }
}

impl ProbabilisticPolynomial for SampledThresholdCircuit {
    fn nvars(&self) -> usize {
        self.spec.n()
    }

    fn eval(&self, x: &BitVector) -> Result<BigInt> {
        SampledThresholdCircuit::eval(self, x)
    }
}

/// Samples `M_{n,θ,ε}` with the standard base-case rule.
pub fn sample_threshold<R: Rng + ?Sized>(spec: &ThresholdSpec, rng: &mut R) -> SampledThresholdCircuit {
    sample_threshold_with(spec, SamplerConfig::default(), rng)
}

pub fn sample_threshold_with<R: Rng + ?Sized>(
    spec: &ThresholdSpec,
    config: SamplerConfig,
    rng: &mut R,
) -> SampledThresholdCircuit {
    let tape = SampleTape::draw(spec.n(), spec.eps_f64(), config, rng);
    SampledThresholdCircuit::on_tape(spec.clone(), Arc::new(tape))
}
