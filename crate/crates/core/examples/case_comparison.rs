//! Where RAMA-I beats NOMA, and where it does not.

use rama_sim::channel::db_to_linear;
use rama_sim::rates::{
    case2_holds, noma_rates, noma_sum_symmetric, rama1_rates, rama1_sum_symmetric,
};
use rama_sim::{LinkBudget, PowerAllocation};

fn main() -> rama_sim::Result<()> {
    println!("equal gains:");
    for db in [-10.0, 0.0, 10.0, 20.0, 30.0] {
        let pg = db_to_linear(db);
        println!(
            "  {db:>5.0} dB  noma {:.4}  rama1 {:.4}",
            noma_sum_symmetric(pg),
            rama1_sum_symmetric(pg)
        );
    }

    println!("unequal gains, pγ2 = 0 dB:");
    for ratio in [10.0, 30.0] {
        let lb = LinkBudget::from_db(ratio, 0.0);
        for split in [0.25, 0.5, 0.75] {
            let alloc = PowerAllocation::from_fraction(1.0, split)?;
            println!(
                "  ratio {ratio:>4.0} dB  p1/p {split:.2}  noma {:.4}  rama1 {:.4}  sufficient condition holds: {}",
                noma_rates(&alloc, &lb).sum(),
                rama1_rates(&lb).sum(),
                case2_holds(&alloc, &lb)?
            );
        }
    }
    Ok(())
}
