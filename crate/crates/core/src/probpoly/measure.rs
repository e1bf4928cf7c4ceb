use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{agrees, ProbabilisticPolynomial, ThresholdSpec};
use crate::error::{Error, Result};
use crate::rng::{split, ChaCha8Rng};
use crate::vectors::BitVector;

/// Agreement of independently sampled polynomials with the reference on one input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AgreementReport {
    pub weight: usize,
    pub agreement: f64,
    pub trials: usize,
    #[serde(skip)]
    pub agreeing: usize,
}

impl AgreementReport {
    /// `1 − eps − 3·√(eps(1−eps)/trials)`: the three-sigma floor for a per-input error `eps`.
    pub fn floor(eps: f64, trials: usize) -> f64 {
        1.0 - eps - 3.0 * (eps * (1.0 - eps) / trials as f64).sqrt()
    }
}

/// Draws `trials` polynomials and counts, per input, how many agree with `reference`.
///
/// Trial `t` samples from its own stream `split(seed, t)`, so the report does not
/// depend on how trials are scheduled across threads.
pub fn measure_error<P, S, F>(
    sampler: S,
    reference: F,
    inputs: &[BitVector],
    trials: usize,
    seed: u64,
) -> Result<Vec<AgreementReport>>
where
    P: ProbabilisticPolynomial,
    S: Fn(&mut ChaCha8Rng) -> Result<P> + Sync,
    F: Fn(&BitVector) -> bool + Sync,
{
    if trials == 0 {
        return Err(Error::InvalidParameters("trials must be at least 1".into()));
    }
    let expected: Vec<bool> = inputs.iter().map(&reference).collect();
    let counts = (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<Vec<usize>> {
            let mut rng = split(seed, t);
            let p = sampler(&mut rng)?;
            inputs
                .iter()
                .zip(&expected)
                .map(|(x, &e)| Ok(usize::from(agrees(&p.eval(x)?, e))))
                .collect()
        })
        .try_reduce(
            || vec![0; inputs.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    Ok(inputs
        .iter()
        .zip(counts)
        .map(|(x, c)| AgreementReport {
            weight: x.weight(),
            agreement: c as f64 / trials as f64,
            trials,
            agreeing: c,
        })
        .collect())
}

/// Uniformly random vector of weight exactly `w`.
pub fn random_with_weight<R: Rng + ?Sized>(n: usize, w: usize, rng: &mut R) -> BitVector {
    let ones = index::sample(rng, n, w.min(n));
    let mut bits = vec![false; n];
    for i in ones {
        bits[i] = true;
    }
    BitVector::from_bools(&bits)
}

/// `per_weight` random inputs at each listed weight in `0..=n`.
pub fn boundary_inputs<R: Rng + ?Sized>(
    n: usize,
    weights: &[i64],
    per_weight: usize,
    rng: &mut R,
) -> Vec<BitVector> {
    let mut out = Vec::new();
    for &w in weights {
        if (0..=n as i64).contains(&w) {
            for _ in 0..per_weight {
                out.push(random_with_weight(n, w as usize, rng));
            }
        }
    }
    out
}

/// Inputs of weight `⌈θn⌉` and `⌈θn⌉ − 1`, then `random` uniform inputs.
pub fn default_threshold_inputs<R: Rng + ?Sized>(
    spec: &ThresholdSpec,
    random: usize,
    rng: &mut R,
) -> Vec<BitVector> {
    let cut = spec.cut() as i64;
    let mut inputs = boundary_inputs(spec.n(), &[cut, cut - 1], 1, rng);
    inputs.extend((0..random).map(|_| BitVector::random(spec.n(), rng)));
    inputs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probpoly::{sample_threshold, ThresholdSpec};
    use crate::rng::seeded;
    use num_rational::BigRational;

    #[test]
    fn exact_base_agrees_always() {
        let spec = ThresholdSpec::majority(20, BigRational::new(1.into(), 10.into())).unwrap();
        let inputs = default_threshold_inputs(&spec, 10, &mut seeded(0));
        assert_eq!(inputs[0].weight(), 10);
        assert_eq!(inputs[1].weight(), 9);
        let reports = measure_error(
            |rng| Ok(sample_threshold(&spec, rng)),
            |x| spec.reference(x),
            &inputs,
            20,
            1,
        )
        .unwrap();
        assert!(reports.iter().all(|r| r.agreement == 1.0 && r.trials == 20));
    }

    #[test]
    fn report_is_deterministic() {
        let spec = ThresholdSpec::majority(3_000, BigRational::new(1.into(), 5.into())).unwrap();
        let inputs = default_threshold_inputs(&spec, 5, &mut seeded(2));
        let run = || {
            measure_error(
                |rng| Ok(sample_threshold(&spec, rng)),
                |x| spec.reference(x),
                &inputs,
                30,
                9,
            )
            .unwrap()
        };
        assert_eq!(run(), run());
        assert!(measure_error(
            |rng| Ok(sample_threshold(&spec, rng)),
            |x| spec.reference(x),
            &inputs,
            0,
            9
        )
        .is_err());
    }

    #[test]
    fn weight_sampler() {
        let mut rng = seeded(4);
        for w in [0, 1, 17, 40] {
            assert_eq!(random_with_weight(40, w, &mut rng).weight(), w);
        }
    }
}
