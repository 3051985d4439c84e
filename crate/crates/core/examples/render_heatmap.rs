//! Run a small phase space, save it as CSV, and render one plane to a PPM
//! heatmap (blue = 0, white = 0.5, red = 1).
//!
//!     cargo run --release --example render_heatmap -- [output_dir]

use std::fs::File;
use std::path::PathBuf;

use granger_lab::experiments::{extract_plane, uniform_grid, RateMetric};
use granger_lab::io::{ppm, results};
use granger_lab::{phase_space, NoiseKind, PhaseSpaceConfig, SeriesId, Topology};

fn main() -> granger_lab::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "heatmap_out".into()));
    std::fs::create_dir_all(&dir)?;

    let axis = uniform_grid(-40.0, 40.0, 20.0)?;
    let config = PhaseSpaceConfig {
        iterations: 100,
        grids: [axis.clone(), axis.clone(), vec![-40.0, 40.0]],
        ..PhaseSpaceConfig::preset_large_sample(NoiseKind::Intrinsic, Topology::Driver)
    };
    let grid = phase_space(&config)?;
    let csv_path = dir.join("phase_space.csv");
    results::write_phase_grid(&grid, File::create(&csv_path)?)?;

    // Read the CSV back so the image reflects exactly what was saved.
    let saved = results::read_phase_grid(File::open(&csv_path)?)?;
    for z in [-40.0, 40.0] {
        let plane = extract_plane(&saved, SeriesId::Z, z, RateMetric::Unidentified)?;
        let image = ppm::render_plane(&plane, 24)?;
        let path = dir.join(format!("unidentified_z{z}.ppm"));
        ppm::write_ppm(&image, File::create(&path)?)?;
        println!("{} ({}x{})", path.display(), image.width, image.height);
    }
    Ok(())
}
