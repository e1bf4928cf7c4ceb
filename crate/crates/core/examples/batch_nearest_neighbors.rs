//! Nearest database vector for every query, level by level over the distance bound.

use polyham::neighbors::{batch_nn, batch_nn_bruteforce, ClosestPairConfig, GroupSize, Rounds};
use polyham::rng::seeded;
use polyham::BitVector;

fn main() -> polyham::Result<()> {
    let d = 5;
    let mut rng = seeded(6);
    let db: Vec<BitVector> = (0..12).map(|_| BitVector::random(d, &mut rng)).collect();
    let queries: Vec<BitVector> = (0..10).map(|_| BitVector::random(d, &mut rng)).collect();

    let cfg = ClosestPairConfig {
        group_size: GroupSize::Fixed(2),
        rounds: Rounds::Auto,
        cost_model: false,
        ..ClosestPairConfig::default()
    };
    let result = batch_nn(&db, &queries, &cfg, &mut seeded(cfg.seed))?;
    let oracle = batch_nn_bruteforce(&db, &queries)?;
    for (got, want) in result.entries.iter().zip(&oracle) {
        println!(
            "query {:>2} {}: nn {:>2} at distance {} (oracle {})",
            got.query,
            queries[got.query].to_01_string(),
            got.nn,
            got.dist,
            want.dist
        );
    }
    println!("{:?}", result.meta);
    Ok(())
}
