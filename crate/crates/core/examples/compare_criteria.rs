//! Monte Carlo rates of LR, Wald and Rao at one sample size, with the
//! pooled two-proportion test between each pair.
//!
//!     cargo run --release --example compare_criteria -- [n] [iterations]

use granger_lab::criteria::compare_criteria;
use granger_lab::{estimate_rates, Criterion, GeneratorConfig, GrangerConfig, Topology};

fn main() -> granger_lab::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(50);
    let iterations = args.next().unwrap_or(1000);

    let generator = GeneratorConfig::criteria_study(Topology::Driver, n);
    let estimates = Criterion::PRESETS
        .map(|c| estimate_rates(&generator, &GrangerConfig::new(c, 0.3), iterations, 42).map(|e| (c, e)));
    let estimates = estimates.into_iter().collect::<granger_lab::Result<Vec<_>>>()?;

    for (c, e) in &estimates {
        println!(
            "{:<4} spurious {:.3} ± {:.3}  unidentified {:.3} ± {:.3}",
            c.as_str(),
            e.spurious_rate,
            e.se_spurious(),
            e.unidentified_rate,
            e.se_unidentified()
        );
    }
    for i in 0..estimates.len() {
        for j in i + 1..estimates.len() {
            let cmp = compare_criteria(&estimates[i].1, &estimates[j].1)?;
            println!(
                "{} vs {}: spurious p = {:.3}{}, unidentified p = {:.3}{}",
                estimates[i].0,
                estimates[j].0,
                cmp.spurious.p_value,
                if cmp.spurious.different { " (different)" } else { "" },
                cmp.unidentified.p_value,
                if cmp.unidentified.different { " (different)" } else { "" },
            );
        }
    }
    Ok(())
}
