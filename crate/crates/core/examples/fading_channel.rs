//! Draws Rayleigh channels from a seeded stream and reports sample statistics.

use rama_sim::channel::{linear_to_db, sample_rayleigh, PRNG_ID};
use rama_sim::RngState;

fn main() -> rama_sim::Result<()> {
    let mut rng = RngState::new(7);
    let n = 100_000;
    let (mut g1, mut g2) = (0.0, 0.0);
    for _ in 0..n {
        let ch = sample_rayleigh(&mut rng, 10.0, 1.0, 1.0)?;
        g1 += ch.gamma(rama_sim::User::One);
        g2 += ch.gamma(rama_sim::User::Two);
    }
    println!("prng: {PRNG_ID}");
    println!(
        "mean gain user 1: {:.3} dB (target 10 dB)",
        linear_to_db(g1 / n as f64)
    );
    println!(
        "mean gain user 2: {:.3} dB (target 0 dB)",
        linear_to_db(g2 / n as f64)
    );
    println!("words drawn: {}", rng.position());
    Ok(())
}
