//! Evaluate one GF(2) polynomial on every pair of points from two sets with a single
//! bit-matrix product, and check it against pointwise evaluation.

use polyham::paireval::{eval_all_pairs, eval_all_pairs_pointwise, PairEvalConfig};
use polyham::polyalg::{Gf2Polynomial, Monomial};
use polyham::rng::seeded;
use polyham::BitVector;
use rand::Rng;
use std::time::Instant;

fn main() -> polyham::Result<()> {
    let m = 32;
    let mut rng = seeded(4);
    let terms: Vec<Monomial> = (0..2_000)
        .map(|_| {
            let deg = rng.random_range(1..=4);
            Monomial::from_vars((0..deg).map(|_| rng.random_range(0..2 * m as u32)).collect())
        })
        .collect();
    let p = Gf2Polynomial::from_terms(2 * m, terms)?;
    let a: Vec<BitVector> = (0..300).map(|_| BitVector::random(m, &mut rng)).collect();
    let b: Vec<BitVector> = (0..300).map(|_| BitVector::random(m, &mut rng)).collect();

    for four_russians in [false, true] {
        let cfg = PairEvalConfig { four_russians, ..PairEvalConfig::default() };
        let start = Instant::now();
        let table = eval_all_pairs(&p, &a, &b, &cfg)?;
        println!(
            "four_russians={four_russians}: {} ones of {} pairs in {:?}",
            table.count_ones(),
            a.len() * b.len(),
            start.elapsed()
        );
    }
    let start = Instant::now();
    let direct = eval_all_pairs_pointwise(&p, &a, &b)?;
    let fast = eval_all_pairs(&p, &a, &b, &PairEvalConfig::default())?;
    println!("pointwise in {:?}; tables equal: {}", start.elapsed(), direct == fast);
    Ok(())
}
