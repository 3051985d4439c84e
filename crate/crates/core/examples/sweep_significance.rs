//! Spurious against unidentified rate as the significance level varies, at
//! 50 points per sample, and the level closest to the ideal corner.
//!
//!     cargo run --release --example sweep_significance -- [iterations]

use granger_lab::experiments::uniform_grid;
use granger_lab::{sweep_significance, Criterion, Topology};

fn main() -> granger_lab::Result<()> {
    let iterations = std::env::args().nth(1).map_or(1000, |a| a.parse().expect("integer"));
    let alphas = uniform_grid(0.05, 0.5, 0.05)?;

    for topology in [Topology::Indirect, Topology::Driver] {
        let sweep = sweep_significance(topology, 50, &alphas, &Criterion::PRESETS, iterations, 0)?;
        println!("{topology}");
        for (i, alpha) in sweep.axis.iter().enumerate() {
            let row: Vec<String> = Criterion::PRESETS
                .iter()
                .map(|&c| {
                    let e = &sweep.estimates(c)[i];
                    format!("{} ({:.3}, {:.3})", c.as_str(), e.unidentified_rate, e.spurious_rate)
                })
                .collect();
            println!("  alpha {alpha:<4} {}", row.join("  "));
        }
        for c in Criterion::PRESETS {
            println!("  best alpha for {c}: {:?}", sweep.optimal_axis_value(c));
        }
    }
    Ok(())
}
