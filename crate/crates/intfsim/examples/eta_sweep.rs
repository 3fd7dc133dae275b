//! Sweep the risk-sensitivity index: higher eta buys lower outage with more
//! channel uses.
//!
//! Run with: `cargo run --release --example eta_sweep`

use intfsim::{sweep_eta, ScenarioConfig};

fn main() -> intfsim::Result<()> {
    let config = ScenarioConfig {
        measured_slots: 200_000,
        target_errors: vec![1e-2],
        seed: 1,
        ..ScenarioConfig::default()
    };
    let etas = [0.8, 0.85, 0.9, 0.95];
    let runs = sweep_eta(&config, &etas)?;

    println!("target 1e-2, {} slots, shared realization\n", config.measured_slots);
    println!("{:>6} {:>14} {:>12} {:>10}", "eta", "achieved", "mean RU", "coverage");
    for run in &runs {
        let t = &run.targets[0];
        println!(
            "{:>6.2} {:>14.3e} {:>12.2} {:>10.4}",
            run.eta, t.achieved_outage, t.mean_ru, run.quantile_coverage
        );
    }
    Ok(())
}
