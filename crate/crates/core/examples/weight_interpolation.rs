//! Integer polynomials with prescribed values on a window of Hamming weights.

use num_bigint::BigInt;
use polyham::polyalg::{binomial_matrix, binomial_matrix_det, interpolate_weights, solve_fraction_free};

fn main() -> polyham::Result<()> {
    let (n, k) = (12, 3);
    let targets: Vec<BigInt> = [5, -2, 0, 7, 1].into_iter().map(BigInt::from).collect();
    let r = targets.len();
    let p = interpolate_weights(n, k, r, &targets)?;
    println!("coefficients in the binomial basis: {:?}", p.symmetric_coeffs().unwrap_or_default());
    for w in 0..=n {
        let marker = if (k as usize + 1..=k as usize + r).contains(&w) { "*" } else { " " };
        println!("{marker} p(|x|={w:>2}) = {}", p.eval_at_weight(w as u64).unwrap_or_default());
    }

    // the same system solved by elimination
    let solved = solve_fraction_free(&binomial_matrix(k, r), &targets).expect("nonsingular");
    println!("elimination: {}", solved.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    println!("det of the {r}x{r} binomial system: {}", binomial_matrix_det(k, r));
    Ok(())
}
