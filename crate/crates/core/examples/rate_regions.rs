//! Traces achievable rate regions for every scheme and compares them at a
//! fixed user-1 rate.

use rama_sim::region::frontier_distance;
use rama_sim::{r2_at_r1, trace_region, LinkBudget, Scheme};

fn main() -> rama_sim::Result<()> {
    let lb = LinkBudget::from_db(30.0, 0.0);
    println!("link budget 30 dB / 0 dB");
    for scheme in Scheme::ALL {
        let region = trace_region(scheme, &lb, 1000)?;
        let at8 = r2_at_r1(&region, 8.0).map_or("-".to_string(), |r| format!("{r:.4}"));
        println!(
            "{:>14}: {:5} frontier points, max r1 {:.4}, max r2 {:.4}, r2 at r1 = 8: {at8}",
            scheme.name(),
            region.frontier.len(),
            region.max_r1(),
            region.max_r2()
        );
    }

    let sym = LinkBudget::from_db(15.0, 15.0);
    for n in [1000, 2000] {
        let oma = trace_region(Scheme::Oma, &sym, n)?;
        let noma = trace_region(Scheme::Noma, &sym, n)?;
        println!(
            "symmetric 15 dB, n = {n}: sup |noma - oma| = {:.2e}",
            frontier_distance(&oma, &noma, 2001)?
        );
    }
    Ok(())
}
