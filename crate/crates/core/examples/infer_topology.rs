//! The two-step procedure on generated samples: a pairwise scan, then the
//! conditional tests on Z when the scan finds every forward link.
//!
//!     cargo run --example infer_topology

use granger_lab::granger::infer;
use granger_lab::{generate, Criterion, GeneratorConfig, GrangerConfig, NoiseConfig, NoiseSpec, Topology};

fn main() -> granger_lab::Result<()> {
    let config = GrangerConfig::new(Criterion::Wald, 0.05);
    // A noisier Y keeps X informative about Z once Y is known.
    let noise = NoiseSpec::FixedSigma(NoiseConfig::new(0.0, 0.5, 0.1)?);

    for truth in [Topology::Driver, Topology::Indirect] {
        let sample = generate(&GeneratorConfig::new(truth, 300, noise).with_seed(5))?;
        let inference = infer(&sample, &config)?;
        println!("truth {truth}: scan {} -> {}", inference.scan_edges, inference.label);
        for d in &inference.scan {
            println!("  pairwise    {} p = {:.3e}", d.link, d.outcome.p_value);
        }
        for d in inference.conditional.iter().flatten() {
            println!("  conditional {} p = {:.3e}", d.link, d.outcome.p_value);
        }
    }
    Ok(())
}
