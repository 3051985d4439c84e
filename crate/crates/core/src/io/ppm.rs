//! Binary PPM (P6) heatmaps of phase-space planes.
//!
//! Rates map linearly from blue (0) through white (0.5) to red (1). Image
//! rows follow the plane's row axis and columns its column axis, both
//! ascending from the top-left corner; each cell becomes a `scale` by
//! `scale` block.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::experiments::Plane;

pub fn rate_to_rgb(rate: f64) -> [u8; 3] {
    let r = if rate.is_nan() { 0.5 } else { rate.clamp(0.0, 1.0) };
    let q = |v: f64| (v * 255.0).round() as u8;
    if r <= 0.5 {
        let t = r / 0.5;
        [q(t), q(t), 255]
    } else {
        let t = 1.0 - (r - 0.5) / 0.5;
        [255, q(t), q(t)]
    }
}

/// Inverse of [`rate_to_rgb`] for colours on the map, accurate to half a
/// quantisation step (0.5 / 255 in rate).
pub fn rgb_to_rate([r, g, b]: [u8; 3]) -> f64 {
    if b == 255 && r < 255 {
        0.5 * (f64::from(r) + f64::from(g)) / 510.0
    } else {
        1.0 - 0.5 * (f64::from(g) + f64::from(b)) / 510.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    /// Row-major RGB triples.
    pub pixels: Vec<[u8; 3]>,
}

impl Image {
    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }
}

pub fn render_plane(plane: &Plane, scale: usize) -> Result<Image> {
    if scale == 0 {
        return Err(Error::InvalidConfig("scale must be at least 1".into()));
    }
    let rows = plane.values.len();
    let cols = plane.values.first().map_or(0, Vec::len);
    let (width, height) = (cols * scale, rows * scale);
    let mut pixels = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            pixels.push(rate_to_rgb(plane.values[y / scale][x / scale]));
        }
    }
    Ok(Image {
        width,
        height,
        pixels,
    })
}

pub fn write_ppm<W: Write>(image: &Image, mut w: W) -> Result<()> {
    write!(w, "P6\n{} {}\n255\n", image.width, image.height)?;
    let bytes: Vec<u8> = image.pixels.iter().flatten().copied().collect();
    w.write_all(&bytes)?;
    w.flush()?;
    Ok(())
}

fn bad(message: &str) -> Error {
    Error::Io(format!("malformed PPM: {message}"))
}

/// Reads a binary PPM with maxval 255. Comments in the header are skipped.
pub fn read_ppm<R: Read>(mut r: R) -> Result<Image> {
    let mut data = Vec::new();
    r.read_to_end(&mut data)?;
    let mut pos = 0;
    let mut tokens = Vec::with_capacity(4);
    while tokens.len() < 4 {
        while pos < data.len() && (data[pos].is_ascii_whitespace() || data[pos] == b'#') {
            if data[pos] == b'#' {
                while pos < data.len() && data[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                pos += 1;
            }
        }
        let start = pos;
        while pos < data.len() && !data[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        tokens.push(std::str::from_utf8(&data[start..pos]).map_err(|_| bad("header is not ASCII"))?);
    }
    if tokens[0] != "P6" {
        return Err(bad("not a P6 file"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad header number"));
    let (width, height, maxval) = (num(tokens[1])?, num(tokens[2])?, num(tokens[3])?);
    if maxval != 255 {
        return Err(bad("only maxval 255 is supported"));
    }
    // Exactly one whitespace byte separates the header from the raster.
    let raster = data.get(pos + 1..).ok_or_else(|| bad("missing raster"))?;
    if raster.len() != width * height * 3 {
        return Err(bad("raster size does not match header"));
    }
    Ok(Image {
        width,
        height,
        pixels: raster.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect(),
    })
}
