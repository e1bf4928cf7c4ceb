//! Bichromatic closest pair with a planted close pair, on the polynomial path and by
//! brute force.

use polyham::neighbors::{closest_pair, closest_pair_bruteforce, ClosestPairConfig, GroupSize, Rounds};
use polyham::rng::seeded;
use polyham::{BitVector, Dataset};
use rand::Rng;

fn main() -> polyham::Result<()> {
    let (n, d) = (40, 5);
    let mut rng = seeded(5);
    let red: Vec<BitVector> = (0..n).map(|_| BitVector::random(d, &mut rng)).collect();
    let mut blue: Vec<BitVector> = (0..n).map(|_| BitVector::random(d, &mut rng)).collect();
    let planted = rng.random_range(0..n);
    blue[planted] = red[3].flipped(&[1]);
    let ds = Dataset::new(d, red, blue)?;

    // small enough for group polynomials of size 2 to fit the budget
    let cfg = ClosestPairConfig {
        group_size: GroupSize::Fixed(2),
        rounds: Rounds::Fixed(25),
        cost_model: false,
        seed: 11,
        ..ClosestPairConfig::default()
    };
    let (hit, meta) = closest_pair(&ds, &cfg, &mut seeded(cfg.seed))?;
    println!("polynomial path: {hit:?}");
    println!("  s={} rounds={} brute-force fallbacks={}", meta.s, meta.rounds, meta.fallback_count);
    println!("brute force:     {:?}", closest_pair_bruteforce(&ds)?);

    // default settings pick brute force whenever it is cheaper
    let (hit, meta) = closest_pair(&ds, &ClosestPairConfig::default(), &mut seeded(0))?;
    println!("default config:  {hit:?} (fallbacks {})", meta.fallback_count);
    Ok(())
}
