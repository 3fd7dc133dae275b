//! The Markov-chain predictor piece by piece: square-root state boundaries,
//! transition-matrix estimation, quantile prediction at several confidence
//! levels, and the online row update.
//!
//! Run with: `cargo run --example dtmc_prediction`

use intfsim::channel::InterfererSet;
use intfsim::dtmc::{predict_next, DtmcPredictor, PredictorConfig, StateSpace, TransitionModel};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> intfsim::Result<()> {
    // Warm-up trace from the default channel.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut set = InterfererSet::sample(5, (-10.0, 5.0), 0.9, &mut rng)?;
    let warmup: Vec<f64> = (0..1000)
        .map(|_| {
            set.step_fading(&mut rng);
            set.aggregate_interference()
        })
        .collect();

    let space = StateSpace::from_warmup(&warmup, 10)?;
    println!("state boundaries (sqrt spacing, 10 states):");
    for (l, pair) in space.boundaries().windows(2).enumerate() {
        println!("  state {l:2}: [{:8.3}, {:8.3})  width {:.3}", pair[0], pair[1], pair[1] - pair[0]);
    }
    println!("  dummy endpoint for the top state: {:.3}", space.dummy_endpoint());

    let model = TransitionModel::from_trace(&warmup, &space, 1.0)?;
    let current = space.state_of(*warmup.last().unwrap())?;
    println!("\ncurrent state {current}, visit counts per state:");
    println!(
        "  {:?}",
        (0..space.num_states()).map(|i| model.visit_count(i)).collect::<Vec<_>>()
    );

    println!("\npredicted next-slot interference vs confidence:");
    for eta in [0.5, 0.8, 0.9, 0.95, 0.99] {
        println!("  eta = {eta:4}: {:8.3}", predict_next(&model, current, eta, &space));
    }

    // Online operation: feed fresh samples and watch coverage.
    let mut predictor = DtmcPredictor::from_warmup(&warmup, &PredictorConfig::new(10, 0.95)?)?;
    let slots = 20_000;
    let mut covered = 0u64;
    for _ in 0..slots {
        let predicted = predictor.predict();
        set.step_fading(&mut rng);
        let actual = set.aggregate_interference();
        if actual <= predicted {
            covered += 1;
        }
        predictor.observe(actual)?;
    }
    println!(
        "\nonline coverage over {slots} slots at eta 0.95: {:.4}",
        covered as f64 / slots as f64
    );
    Ok(())
}
