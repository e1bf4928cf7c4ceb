//! Sample majority polynomials on 10 000 variables and measure how often they agree
//! with the true majority near the cut.

use num_rational::BigRational;
use polyham::probpoly::{default_threshold_inputs, measure_error, sample_threshold, AgreementReport, ThresholdSpec};
use polyham::rng::seeded;

fn main() -> polyham::Result<()> {
    let n = 10_000;
    let spec = ThresholdSpec::majority(n, BigRational::new(1.into(), 10.into()))?;

    let circuit = sample_threshold(&spec, &mut seeded(7));
    println!(
        "n={n} eps=1/10: {} levels, degree {} (bound {:.0})",
        circuit.depth(),
        circuit.structural_degree(),
        spec.degree_bound()
    );

    let inputs = default_threshold_inputs(&spec, 8, &mut seeded(8));
    let trials = 200;
    let reports = measure_error(|rng| Ok(sample_threshold(&spec, rng)), |x| spec.reference(x), &inputs, trials, 9)?;
    let floor = AgreementReport::floor(spec.eps_f64(), trials);
    for r in &reports {
        println!("weight {:>5}: agreement {:.3}", r.weight, r.agreement);
    }
    println!("three-sigma floor {floor:.3}");
    Ok(())
}
