//! Key-link acceptance under observer noise for the indirect topology:
//! X->Z is accepted once X and Z are both observed cleanly and Y is not.
//!
//!     cargo run --release --example phase_space_extrinsic -- [iterations]

use granger_lab::{NoiseKind, PhaseSpaceConfig, Topology};

fn main() -> granger_lab::Result<()> {
    let iterations = std::env::args().nth(1).map_or(300, |a| a.parse().expect("integer"));
    let mut config = PhaseSpaceConfig::preset_large_sample(NoiseKind::Extrinsic, Topology::Indirect);
    config.iterations = iterations;
    config.grids = [vec![20.0], vec![-20.0, 20.0], vec![-40.0, -20.0, 0.0, 20.0, 40.0]];

    println!("snr_x snr_y snr_z   X->Z   Y->Z");
    for cell in 0..config.cell_count() {
        let [x, y, z] = config.coordinates(cell);
        let rates = config.run_cell(cell)?;
        println!("{x:>5} {y:>5} {z:>5}  {:.3}  {:.3}", rates.rate_xz, rates.rate_yz);
    }
    Ok(())
}
