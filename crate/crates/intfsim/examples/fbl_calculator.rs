//! Finite blocklength allocation math on its own: how many channel uses a
//! short packet needs at a given SINR and reliability target, and what error
//! the allocation realizes when the SINR estimate is off.
//!
//! Run with: `cargo run --example fbl_calculator`

use intfsim::fbl::{
    channel_dispersion, inverse_q, realized_error, required_blocklength, shannon_capacity,
};

fn main() -> intfsim::Result<()> {
    let payload = 50.0;
    let sinr_db = 20.0;
    let sinr = 10f64.powf(sinr_db / 10.0);

    println!(
        "channel at {sinr_db} dB: capacity {:.4} bit/use, dispersion {:.4}",
        shannon_capacity(sinr)?,
        channel_dispersion(sinr)?
    );
    println!();
    println!("{:>10} {:>10} {:>14} {:>16}", "target", "Qinv", "blocklength", "Shannon limit");
    for k in 1..=7 {
        let eps = 10f64.powi(-k);
        let r = required_blocklength(payload, eps, sinr)?;
        println!(
            "{eps:>10.0e} {:>10.4} {r:>14.4} {:>16.4}",
            inverse_q(eps)?,
            payload / shannon_capacity(sinr)?
        );
    }

    // The allocation is exact when the SINR estimate is: realized error
    // equals the target. Under- or over-estimating shifts it by orders of
    // magnitude.
    let eps = 1e-4;
    let r = required_blocklength(payload, eps, sinr)?;
    println!();
    println!("allocation for target {eps:.0e} at {sinr_db} dB: R = {r:.3} channel uses");
    println!("{:>24} {:>14}", "actual SINR", "realized error");
    for factor in [0.5, 0.8, 1.0, 1.25, 2.0] {
        let actual = sinr * factor;
        println!(
            "{:>20.1} ({factor:>4.2}x) {:>14.3e}",
            actual,
            realized_error(payload, r, actual)?
        );
    }
    Ok(())
}
