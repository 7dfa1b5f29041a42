//! Ergodic sum rate over Rayleigh fading with standard errors.

use rama_sim::montecarlo::{run_sweep, FadingConfig, SweepConfig};
use rama_sim::Scheme;

fn main() -> rama_sim::Result<()> {
    let cfg = SweepConfig {
        schemes: vec![Scheme::Noma, Scheme::Rama1, Scheme::Rama2, Scheme::Oma],
        grid_db: vec![0.0, 10.0, 20.0, 30.0],
        splits: vec![0.5],
        fading: Some(FadingConfig {
            num_samples: 20_000,
            seed: 1,
        }),
        ..SweepConfig::symmetric_default()
    };
    let result = run_sweep(&cfg)?;
    for row in &result.rows {
        println!(
            "{:>5.1} dB {:>6} {:.4} ± {:.4}",
            row.x_db,
            row.scheme.name(),
            row.sum_rate,
            row.stderr
        );
    }
    Ok(())
}
