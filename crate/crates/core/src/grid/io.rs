//! CGRID binary files and PNG images.
//!
//! CGRID layout (all little-endian): magic `CGRD`, `u32` version 1,
//! `u32` rows, `u32` cols, `f64` dx, `f64` dy, then `rows·cols` pairs of
//! `f64` (re, im) in row-major order.

use super::{ComplexGrid, Geometry};
use crate::error::{Error, Result};
use image::{DynamicImage, GrayImage, ImageBuffer, Rgb, RgbImage};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

const MAGIC: &[u8; 4] = b"CGRD";
const VERSION: u32 = 1;

pub fn write_cgrid_to(w: &mut impl Write, g: &ComplexGrid) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(g.rows() as u32).to_le_bytes())?;
    w.write_all(&(g.cols() as u32).to_le_bytes())?;
    w.write_all(&g.dx().to_le_bytes())?;
    w.write_all(&g.dy().to_le_bytes())?;
    for v in g.values() {
        w.write_all(&v.re.to_le_bytes())?;
        w.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_cgrid_from(r: &mut impl Read) -> Result<ComplexGrid> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format(format!("bad magic {magic:?}, expected CGRD")));
    }
    let version = read_u32(r)?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported CGRID version {version}")));
    }
    let rows = read_u32(r)? as usize;
    let cols = read_u32(r)? as usize;
    let dx = read_f64(r)?;
    let dy = read_f64(r)?;
    let geometry = Geometry { rows, cols, dx, dy };
    geometry
        .validate()
        .map_err(|e| Error::Format(e.to_string()))?;
    let mut values = Vec::with_capacity(geometry.len());
    for _ in 0..geometry.len() {
        let re = read_f64(r)?;
        let im = read_f64(r)?;
        values.push(Complex64::new(re, im));
    }
    ComplexGrid::new(geometry, values).map_err(|e| Error::Format(e.to_string()))
}

fn read_u32(r: &mut impl Read) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_f64(r: &mut impl Read) -> Result<f64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

pub fn write_cgrid(path: impl AsRef<Path>, g: &ComplexGrid) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_cgrid_to(&mut w, g)?;
    w.flush()?;
    Ok(())
}

pub fn read_cgrid(path: impl AsRef<Path>) -> Result<ComplexGrid> {
    read_cgrid_from(&mut BufReader::new(File::open(path)?))
}

/// Loads a PNG as one grid per channel (1 for grayscale, 3 for colour),
/// mapping 8-bit intensities to `[0, 1]` on the real axis. Alpha is dropped.
pub fn read_png(path: impl AsRef<Path>, dx: f64, dy: f64) -> Result<Vec<ComplexGrid>> {
    let img = image::open(path)?;
    image_to_grids(&img, dx, dy)
}

pub fn image_to_grids(img: &DynamicImage, dx: f64, dy: f64) -> Result<Vec<ComplexGrid>> {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let geometry = Geometry::new(h, w, dx, dy)?;
    let gray = matches!(
        img,
        DynamicImage::ImageLuma8(_)
            | DynamicImage::ImageLumaA8(_)
            | DynamicImage::ImageLuma16(_)
            | DynamicImage::ImageLumaA16(_)
    );
    if gray {
        let buf = img.to_luma8();
        let values = buf
            .pixels()
            .map(|p| Complex64::new(p.0[0] as f64 / 255.0, 0.0))
            .collect();
        return Ok(vec![ComplexGrid::from_parts(geometry, values)]);
    }
    let buf = img.to_rgb8();
    Ok((0..3)
        .map(|c| {
            let values = buf
                .pixels()
                .map(|p| Complex64::new(p.0[c] as f64 / 255.0, 0.0))
                .collect();
            ComplexGrid::from_parts(geometry, values)
        })
        .collect())
}

/// Scale used when writing magnitudes to 8-bit PNG; stored next to the
/// image so the intensities can be mapped back.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PngSidecar {
    /// Magnitude that maps to 255.
    pub scale: f64,
}

/// Writes `|channel|` as an 8-bit PNG (1 channel → gray, 3 → RGB), scaled
/// so the largest magnitude across channels maps to 255.
pub fn write_png(path: impl AsRef<Path>, channels: &[ComplexGrid]) -> Result<PngSidecar> {
    let img = grids_to_image(channels)?;
    img.save(path.as_ref())?;
    Ok(PngSidecar {
        scale: max_magnitude(channels),
    })
}

/// Like [`write_png`], also writing `<path>.json` with the scale.
pub fn write_png_with_sidecar(path: impl AsRef<Path>, channels: &[ComplexGrid]) -> Result<PngSidecar> {
    let side = write_png(path.as_ref(), channels)?;
    let mut json_path = path.as_ref().as_os_str().to_owned();
    json_path.push(".json");
    std::fs::write(json_path, serde_json::to_string_pretty(&side)?)?;
    Ok(side)
}

fn max_magnitude(channels: &[ComplexGrid]) -> f64 {
    channels.iter().map(|c| c.max_abs()).fold(0.0, f64::max)
}

pub fn grids_to_image(channels: &[ComplexGrid]) -> Result<DynamicImage> {
    let first = channels
        .first()
        .ok_or_else(|| Error::InvalidGrid("no channels to write".into()))?;
    for c in channels {
        first.check_shape(c)?;
    }
    let (h, w) = first.shape();
    let scale = max_magnitude(channels);
    let to_u8 = |v: Complex64| {
        if scale > 0.0 {
            (v.norm() / scale * 255.0).round().clamp(0.0, 255.0) as u8
        } else {
            0
        }
    };
    match channels.len() {
        1 => {
            let buf: GrayImage = ImageBuffer::from_fn(w as u32, h as u32, |x, y| {
                image::Luma([to_u8(first.get(y as usize, x as usize))])
            });
            Ok(DynamicImage::ImageLuma8(buf))
        }
        3 => {
            let buf: RgbImage = ImageBuffer::from_fn(w as u32, h as u32, |x, y| {
                let (r, c) = (y as usize, x as usize);
                Rgb([
                    to_u8(channels[0].get(r, c)),
                    to_u8(channels[1].get(r, c)),
                    to_u8(channels[2].get(r, c)),
                ])
            });
            Ok(DynamicImage::ImageRgb8(buf))
        }
        n => Err(Error::InvalidGrid(format!(
            "PNG output needs 1 or 3 channels, got {n}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::signals;

    #[test]
    fn cgrid_round_trip_is_bit_exact() {
        let g = signals::chirp(&signals::ChirpSpec::f3(), Geometry::new(5, 7, 0.3, 0.2).unwrap());
        let mut buf = Vec::new();
        write_cgrid_to(&mut buf, &g).unwrap();
        assert_eq!(buf.len(), 4 + 4 + 8 + 16 + 35 * 16);
        let back = read_cgrid_from(&mut buf.as_slice()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn cgrid_rejects_bad_magic() {
        let mut bytes = b"XXXX".to_vec();
        bytes.extend_from_slice(&[0; 28]);
        assert!(matches!(
            read_cgrid_from(&mut bytes.as_slice()),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn png_gray_round_trip() {
        let g = ComplexGrid::from_real(Geometry::new(3, 4, 1.0, 1.0).unwrap(), |x, y| {
            ((x + 2.0) * 4.0 + y + 2.0) / 15.0
        });
        let img = grids_to_image(std::slice::from_ref(&g)).unwrap();
        let back = image_to_grids(&img, 1.0, 1.0).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].shape(), (3, 4));
        for (a, b) in back[0].values().iter().zip(g.values()) {
            assert!((a.re * g.max_abs() - b.re).abs() < 1.0 / 255.0);
        }
    }
}
