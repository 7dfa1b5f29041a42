//! Builds PSK and QAM alphabets and shows the rotation/scale relation that
//! maps one user's symbol onto the other's.

use rama_sim::{make_psk, make_qam};

fn main() -> rama_sim::Result<()> {
    let psk = make_psk(8)?;
    let qam = make_qam(16)?;
    println!("8-PSK mean power {:.6}", psk.mean_power());
    println!("16-QAM mean power {:.6}", qam.mean_power());

    for (name, c) in [("8-psk", &psk), ("16-qam", &qam)] {
        let rel = c.relation(1, c.order() - 1)?;
        println!(
            "{name}: s[1] -> s[{}] rotates by {:.4} rad, scales by {:.4}",
            c.order() - 1,
            rel.delta_theta,
            rel.s_bar
        );
    }

    let scales: Vec<f64> = qam
        .ordered_pairs()
        .map(|(s1, s2)| s2.norm() / s1.norm())
        .collect();
    let max = scales.iter().cloned().fold(0.0, f64::max);
    println!("16-QAM largest amplitude ratio between symbols: {max:.4}");
    Ok(())
}
