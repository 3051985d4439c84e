//! Spurious and unidentified rates over a coarse intrinsic-noise SNR grid
//! for the driver topology, printed plane by plane along Z.
//!
//!     cargo run --release --example phase_space_intrinsic -- [iterations]

use granger_lab::experiments::{extract_plane, uniform_grid, RateMetric};
use granger_lab::{phase_space, NoiseKind, PhaseSpaceConfig, SeriesId, Topology};

fn main() -> granger_lab::Result<()> {
    let iterations = std::env::args().nth(1).map_or(200, |a| a.parse().expect("integer"));
    let axis = uniform_grid(-40.0, 40.0, 20.0)?;
    let config = PhaseSpaceConfig {
        iterations,
        grids: [axis.clone(), axis.clone(), axis.clone()],
        ..PhaseSpaceConfig::preset_large_sample(NoiseKind::Intrinsic, Topology::Driver)
    };
    let grid = phase_space(&config)?;

    for &z in &axis {
        for metric in [RateMetric::Unidentified, RateMetric::Spurious] {
            let plane = extract_plane(&grid, SeriesId::Z, z, metric)?;
            println!("SNR Z = {z} dB, {metric:?} (rows Y ascending, columns X ascending)");
            for row in &plane.values {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:.2}")).collect();
                println!("  {}", cells.join(" "));
            }
        }
    }
    Ok(())
}
