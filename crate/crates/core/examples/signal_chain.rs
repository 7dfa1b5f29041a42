//! Runs one symbol pair through each transmitter and prints what every
//! beam carries.

use rama_sim::transceiver::{
    rama1_transmit, rama2_feed, rama2_transmit, reconfig_noma_split, superpose,
};
use rama_sim::{make_psk, make_qam, PowerAllocation};

fn main() -> rama_sim::Result<()> {
    let p = 1.0;
    let psk = make_psk(8)?;
    let (a, b) = (psk.points()[1], psk.points()[6]);

    let tx = rama1_transmit(a, b, p)?;
    println!("rama1 8-PSK: s1 = {a:.4}, s2 = {b:.4}");
    println!(
        "  tsa1 = {:.4}  tsa2 = {:.4}  power {:.4}",
        tx.tsa1,
        tx.tsa2,
        tx.power()
    );

    let qam = make_qam(16)?;
    let (a, b) = (qam.points()[0], qam.points()[5]);
    let alloc = PowerAllocation::from_fraction(p, 0.3)?;
    let feed = rama2_feed(a, b, &alloc)?;
    let tx = rama2_transmit(a, b, &alloc)?;
    println!("rama2 16-QAM, p1/p = 0.3: feed = {feed:.4}");
    println!(
        "  tsa1 = {:.4} (√p1·s1 = {:.4})",
        tx.tsa1,
        a * alloc.p1().sqrt()
    );
    println!(
        "  tsa2 = {:.4} (√p2·s2 = {:.4})",
        tx.tsa2,
        b * alloc.p2().sqrt()
    );

    let x = superpose(a, b, &alloc);
    let split = reconfig_noma_split(x, 0.5)?;
    println!(
        "reconfig-noma: x = {x:.4}, beams carry {:.4} and {:.4}",
        split.tsa1, split.tsa2
    );

    match rama1_transmit(a, b, p) {
        Ok(_) => println!("rama1 accepted unequal-modulus symbols"),
        Err(e) => println!("rama1 with 16-QAM: {e}"),
    }
    Ok(())
}
