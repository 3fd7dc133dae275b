//! The three SNR/interference scenario presets, comparing how the moving
//! average and the quantile predictor cope with weak and strong
//! interference.
//!
//! Run with: `cargo run --release --example scenario_presets`

use intfsim::config::PRESETS;
use intfsim::{compare_predictors, PredictorKind, ScenarioConfig};

fn main() -> intfsim::Result<()> {
    let base = ScenarioConfig {
        measured_slots: 200_000,
        target_errors: vec![1e-2],
        seed: 1,
        ..ScenarioConfig::default()
    };
    println!("target 1e-2, {} slots per run\n", base.measured_slots);
    println!("{:<34} {:>14} {:>14}", "scenario", "iir achieved", "dtmc achieved");
    for preset in PRESETS {
        let cfg = base.clone().with_preset(preset)?;
        let runs = compare_predictors(&cfg, &[PredictorKind::Iir, PredictorKind::Dtmc])?;
        println!(
            "{preset:<34} {:>14.3e} {:>14.3e}",
            runs[0].targets[0].achieved_outage,
            runs[1].targets[0].achieved_outage
        );
    }
    Ok(())
}
