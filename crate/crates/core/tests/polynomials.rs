//! Explicit expansions against the circuits they came from, and the pair evaluators
//! against each other.

use num_bigint::BigInt;
use num_integer::Integer;
use polyham::hammingpoly::{group_input, sample_hamming_poly, GroupPredicateSpec};
use polyham::paireval::{eval_all_pairs, eval_all_pairs_pointwise, PairEvalConfig};
use polyham::probpoly::{parse_rational, sample_symmetric, sample_threshold, SymmetricFunctionSpec, ThresholdSpec};
use polyham::rng::seeded;
use polyham::BitVector;

fn cube(n: usize) -> impl Iterator<Item = BitVector> {
    (0u32..1 << n).map(move |m| BitVector::from_fn(n, |i| m >> i & 1 == 1))
}

#[test]
fn threshold_expansion_agrees_on_the_cube() {
    for (n, theta, seed) in [(10, "1/2", 1u64), (12, "1/3", 2), (12, "2/3", 3)] {
        let spec = ThresholdSpec::new(n, parse_rational(theta).unwrap(), parse_rational("1/5").unwrap()).unwrap();
        let circuit = sample_threshold(&spec, &mut seeded(seed));
        let poly = circuit.expand(1 << 20).unwrap();
        assert!(poly.degree() <= circuit.structural_degree());
        let parity = poly.reduce_mod2();
        for x in cube(n) {
            let v = circuit.eval(&x).unwrap();
            assert_eq!(poly.eval(&x).unwrap(), v);
            assert_eq!(parity.eval(&x).unwrap(), v.is_odd());
        }
    }
}

#[test]
fn symmetric_expansion_agrees_on_the_cube() {
    let eps = parse_rational("1/10").unwrap();
    for spec in [SymmetricFunctionSpec::parity(9).unwrap(), SymmetricFunctionSpec::exact(10, 4).unwrap()] {
        let sampled = sample_symmetric(&spec, &eps, &mut seeded(5)).unwrap();
        let poly = sampled.expand(1 << 20).unwrap();
        let mut agree = 0usize;
        let mut total = 0usize;
        for x in cube(spec.n()) {
            let v = sampled.eval(&x).unwrap();
            assert_eq!(poly.eval(&x).unwrap(), v);
            total += 1;
            agree += usize::from(v == BigInt::from(u8::from(spec.reference(&x))));
        }
        assert!(agree * 2 > total);
    }
}

#[test]
fn group_polynomial_evaluators_agree() {
    let mut rng = seeded(11);
    for (s, d, k) in [(1usize, 6usize, 2usize), (2, 4, 1), (2, 5, 2)] {
        let spec = GroupPredicateSpec::new(s, d, k).unwrap();
        let q = sample_hamming_poly(spec, &mut rng);
        let p = q.expand(1 << 20).unwrap();
        let groups = |rng: &mut _| -> Vec<Vec<BitVector>> {
            (0..12).map(|_| (0..s).map(|_| BitVector::random(d, rng)).collect()).collect()
        };
        let a = groups(&mut rng);
        let b = groups(&mut rng);
        let pa: Vec<BitVector> = a.iter().map(|g| group_input(g)).collect();
        let pb: Vec<BitVector> = b.iter().map(|g| group_input(g)).collect();
        let pointwise = eval_all_pairs_pointwise(&p, &pa, &pb).unwrap();
        for four_russians in [false, true] {
            let cfg = PairEvalConfig { four_russians, ..PairEvalConfig::default() };
            assert_eq!(eval_all_pairs(&p, &pa, &pb, &cfg).unwrap(), pointwise);
        }
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                assert_eq!(pointwise.get(i, j), q.eval_group_pair(x, y).unwrap());
            }
        }
    }
}
