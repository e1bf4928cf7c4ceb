//! The group polynomial that detects a close red/blue pair between two groups of
//! vectors, evaluated directly and after expansion over GF(2).

use polyham::hammingpoly::{group_input, sample_hamming_poly, sample_hamming_poly_with, GroupPredicateSpec, InnerMode};
use polyham::rng::seeded;
use polyham::BitVector;

fn main() -> polyham::Result<()> {
    let (s, d, k) = (2, 5, 1);
    let spec = GroupPredicateSpec::new(s, d, k)?;
    let mut rng = seeded(3);
    let xs: Vec<BitVector> = (0..s).map(|_| BitVector::random(d, &mut rng)).collect();
    let mut ys: Vec<BitVector> = (0..s).map(|_| BitVector::random(d, &mut rng)).collect();
    ys[1] = xs[0].flipped(&[2]);
    println!("groups contain a pair within {k}: {}", spec.reference(&xs, &ys)?);

    let q = sample_hamming_poly(spec, &mut rng);
    let expanded = q.expand(1 << 20)?;
    let input = BitVector::concat([&group_input(&xs), &group_input(&ys)]);
    println!(
        "one draw: {} monomials, degree {}, value {} (direct {})",
        expanded.num_monomials(),
        expanded.degree(),
        u8::from(expanded.eval(&input)?),
        u8::from(q.eval_group_pair(&xs, &ys)?)
    );

    let trials = 2_000;
    let hits = (0..trials)
        .filter(|_| sample_hamming_poly_with(spec, InnerMode::Exact, &mut rng).eval_group_pair(&xs, &ys).unwrap())
        .count();
    println!("detected in {hits}/{trials} draws (expected rate 3/4)");
    Ok(())
}
