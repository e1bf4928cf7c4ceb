//! Parity as a signed sum of threshold polynomials sharing one sample tape.

use num_rational::BigRational;
use polyham::probpoly::{jump_sets, sample_symmetric, SymmetricFunctionSpec};
use polyham::rng::seeded;
use polyham::BitVector;

fn main() -> polyham::Result<()> {
    // exact decomposition on a small table
    let small = SymmetricFunctionSpec::parity(6)?;
    let (rises, falls) = jump_sets(small.values());
    println!("parity on 6 bits: rises at {rises:?}, falls at {falls:?}");
    for w in 0..=6 {
        println!("  w={w}: f={} decomposition={}", u8::from(small.values()[w]), small.decomposition_at(w));
    }

    let n = 2_000;
    let spec = SymmetricFunctionSpec::parity(n)?;
    let eps = BigRational::new(1.into(), 10.into());
    let p = sample_symmetric(&spec, &eps, &mut seeded(1))?;
    println!("parity on {n} bits: {} thresholds, degree {}", p.terms().len(), p.structural_degree());

    let mut rng = seeded(2);
    let mut right = 0;
    for _ in 0..20 {
        let x = BitVector::random(n, &mut rng);
        let value = p.eval(&x)?;
        right += usize::from((value == 1.into()) == spec.reference(&x));
    }
    println!("one draw agrees with parity on {right}/20 random inputs");
    Ok(())
}
