//! Analyze an external `t,x,y,z` CSV. Without an argument a sample is
//! generated, written, and read back first.
//!
//!     cargo run --example analyze_csv -- [path.csv]

use std::fs::File;

use granger_lab::granger::infer;
use granger_lab::io::samples::{read_sample, write_sample};
use granger_lab::{generate, Criterion, GeneratorConfig, GrangerConfig, NoiseConfig, NoiseSpec, Topology};

fn main() -> granger_lab::Result<()> {
    let path = match std::env::args().nth(1) {
        Some(p) => p,
        None => {
            let noise = NoiseSpec::FixedSigma(NoiseConfig::new(0.0, 0.5, 0.1)?);
            let sample = generate(&GeneratorConfig::new(Topology::Driver, 300, noise).with_seed(9))?;
            let path = std::env::temp_dir().join("granger_lab_driver.csv");
            write_sample(&sample, File::create(&path)?)?;
            path.display().to_string()
        }
    };

    let sample = read_sample(File::open(&path)?)?;
    let inference = infer(&sample, &GrangerConfig::new(Criterion::Wald, 0.05))?;
    println!("{path}: {} observations", sample.len());
    println!("inferred {} with edges {}", inference.label, inference.edges);
    Ok(())
}
