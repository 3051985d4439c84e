//! Rates against sample size at a fixed level, and where the criteria stop
//! differing.
//!
//!     cargo run --release --example sweep_sample_size -- [cases]

use granger_lab::experiments::SizeSweep;
use granger_lab::{Criterion, Topology};

fn main() -> granger_lab::Result<()> {
    let cases = std::env::args().nth(1).map_or(1000, |a| a.parse().expect("integer"));

    for topology in [Topology::Indirect, Topology::Driver] {
        let sweep = SizeSweep {
            cases,
            ..SizeSweep::preset(topology)
        };
        let result = sweep.run()?;
        println!("{topology} at alpha {}", sweep.alpha);
        for (i, &n) in result.sweep.axis.iter().enumerate() {
            let wald = &result.sweep.estimates(Criterion::Wald)[i];
            let lr_wald = result
                .comparison(n as usize, Criterion::LikelihoodRatio, Criterion::Wald)
                .expect("pair present");
            let wald_rao = result
                .comparison(n as usize, Criterion::Wald, Criterion::Rao)
                .expect("pair present");
            println!(
                "  n {n:>3}  wald spurious {:.3} unidentified {:.3}  p(lr,wald) {:.3}  p(wald,rao) {:.3}",
                wald.spurious_rate, wald.unidentified_rate, lr_wald.spurious.p_value, wald_rao.spurious.p_value
            );
        }
    }
    Ok(())
}
