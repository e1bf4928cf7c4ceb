//! Furthest pair, inner-product extremes, orthogonal vectors, Jaccard similarity and
//! ℓ₁ nearest neighbors, all answered through Hamming closest pair.

use polyham::neighbors::ClosestPairConfig;
use polyham::reductions::{
    extreme_inner_product, find_orthogonal_pair, furthest_pair, l1_batch_nn, max_jaccard_pair, unary_encode, Extreme,
    IntVector,
};
use polyham::rng::seeded;
use polyham::{BitVector, Dataset};
use rand::Rng;

fn main() -> polyham::Result<()> {
    let (n, d) = (60, 16);
    let mut rng = seeded(7);
    let mut side = |p: f64| -> Vec<BitVector> { (0..n).map(|_| BitVector::from_fn(d, |_| rng.random_bool(p))).collect() };
    let ds = Dataset::new(d, side(0.4), side(0.4))?;
    let cfg = ClosestPairConfig::default();
    let mut rng = seeded(8);

    let (far, _) = furthest_pair(&ds, &cfg, &mut rng)?;
    println!("furthest pair: red {} blue {} at distance {}", far.red, far.blue, far.distance);
    for mode in [Extreme::Min, Extreme::Max] {
        let (hit, _) = extreme_inner_product(&ds, mode, &cfg, &mut rng)?;
        println!("{mode:?} inner product: red {} blue {} -> {}", hit.red, hit.blue, hit.value);
    }
    match find_orthogonal_pair(&ds, &cfg, &mut rng)?.0 {
        Some((r, b)) => println!("orthogonal pair: red {r} blue {b}"),
        None => println!("no orthogonal pair"),
    }
    let (jac, _) = max_jaccard_pair(&ds, &cfg, &mut rng)?;
    println!("most similar sets: red {} blue {} with Jaccard {}", jac.red, jac.blue, jac.coefficient);

    let m = 4;
    let x = IntVector::new(vec![3, 0, 2], m)?;
    println!("unary code of {:?}: {}", x.entries(), unary_encode(&x).to_01_string());
    let mut draw = || IntVector::new((0..3).map(|_| rng.random_range(0..=m)).collect(), m);
    let db = (0..30).map(|_| draw()).collect::<polyham::Result<Vec<_>>>()?;
    let queries = (0..4).map(|_| draw()).collect::<polyham::Result<Vec<_>>>()?;
    for e in l1_batch_nn(&db, &queries, &cfg, &mut seeded(9))?.entries {
        println!("l1: query {:?} -> {:?} at distance {}", queries[e.query].entries(), db[e.nn].entries(), e.dist);
    }
    Ok(())
}
