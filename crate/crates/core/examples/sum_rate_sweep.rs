//! Sum rate versus SNR and versus gain ratio, without fading.

use rama_sim::montecarlo::{run_sweep, SweepConfig};
use rama_sim::Scheme;

fn main() -> rama_sim::Result<()> {
    let sym = run_sweep(&SweepConfig {
        grid_db: vec![0.0, 10.0, 20.0, 30.0, 40.0],
        splits: vec![0.5],
        ..SweepConfig::symmetric_default()
    })?;
    println!("symmetric pγ (dB)   noma   rama1");
    for (n, r) in sym
        .curve(Scheme::Noma, 0.5)
        .iter()
        .zip(sym.curve(Scheme::Rama1, 0.5))
    {
        println!("{:>17.0} {:>7.3} {:>7.3}", n.x_db, n.sum_rate, r.sum_rate);
    }

    let ratio = run_sweep(&SweepConfig {
        grid_db: vec![0.0, 10.0, 20.0, 30.0, 40.0],
        ..SweepConfig::ratio_default()
    })?;
    println!("\ngain ratio (dB)  split   noma   rama1");
    for split in [0.25, 0.75] {
        for (n, r) in ratio
            .curve(Scheme::Noma, split)
            .iter()
            .zip(ratio.curve(Scheme::Rama1, split))
        {
            println!(
                "{:>15.0} {:>6.2} {:>7.3} {:>7.3}",
                n.x_db, split, n.sum_rate, r.sum_rate
            );
        }
    }
    Ok(())
}
