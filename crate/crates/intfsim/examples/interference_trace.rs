//! Generate aggregate interference traces with and without time correlation
//! and look at their first- and second-order statistics.
//!
//! Run with: `cargo run --example interference_trace`

use intfsim::channel::{DesiredLink, InterfererSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> intfsim::Result<()> {
    let slots = 100_000;
    for rho in [0.0, 0.9] {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut set = InterfererSet::sample(5, (-10.0, 5.0), rho, &mut rng)?;
        let expected_mean = 1.0 + set.mean_inrs().iter().sum::<f64>();

        let trace: Vec<f64> = (0..slots)
            .map(|_| {
                set.step_fading(&mut rng);
                set.aggregate_interference()
            })
            .collect();

        let mean = trace.iter().sum::<f64>() / slots as f64;
        let var = trace.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / slots as f64;
        let cov = trace
            .windows(2)
            .map(|w| (w[0] - mean) * (w[1] - mean))
            .sum::<f64>()
            / (slots - 1) as f64;
        let max = trace.iter().cloned().fold(f64::MIN, f64::max);

        println!("rho = {rho}");
        println!("  mean INRs (linear): {:?}", rounded(set.mean_inrs()));
        println!("  E[I] = {mean:.3} (expected {expected_mean:.3}), std = {:.3}", var.sqrt());
        println!("  lag-1 autocorrelation = {:.3}", cov / var);
        println!("  max over {slots} slots = {max:.2}");
        println!();
    }

    let link = DesiredLink::from_db(20.0);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mean =
        (0..100_000).map(|_| link.sample_snr(&mut rng)).sum::<f64>() / 100_000f64;
    println!("desired link at 20 dB: mean sampled SNR = {mean:.2} (expected 100)");
    Ok(())
}

fn rounded(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|x| (x * 1000.0).round() / 1000.0).collect()
}
