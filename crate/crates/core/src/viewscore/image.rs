use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Grayscale image with row-major intensities in `[0, 255]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width < 3 || height < 3 {
        return Err(Error::DimensionMismatch(format!(
            "{width}x{height} is smaller than 3x3"
        )));
    }
    if width.checked_mul(height) != Some(len) {
        return Err(Error::DimensionMismatch(format!(
            "{width}x{height} needs {} values, got {len}",
            width * height
        )));
    }
    Ok(())
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<GrayImage> {
        check_dims(width, height, pixels.len())?;
        if let Some(v) = pixels.iter().find(|v| !(0.0..=255.0).contains(*v)) {
            return Err(Error::Format(format!("intensity {v} outside [0, 255]")));
        }
        Ok(GrayImage { width, height, pixels })
    }

    pub fn from_u8(width: usize, height: usize, bytes: &[u8]) -> Result<GrayImage> {
        GrayImage::new(width, height, bytes.iter().map(|&b| b as f64).collect())
    }

    pub fn constant(width: usize, height: usize, value: f64) -> Result<GrayImage> {
        GrayImage::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * self.width + x]
    }

    /// Intensities flipped as `255 - v`.
    pub fn inverted(&self) -> GrayImage {
        GrayImage {
            pixels: self.pixels.iter().map(|v| 255.0 - v).collect(),
            ..self.clone()
        }
    }

    /// Rounded to bytes.
    pub fn to_u8(&self) -> Vec<u8> {
        self.pixels.iter().map(|v| v.round().clamp(0.0, 255.0) as u8).collect()
    }
}

/// Per-pixel object membership.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjectMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl ObjectMask {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<ObjectMask> {
        check_dims(width, height, bits.len())?;
        Ok(ObjectMask { width, height, bits })
    }

    pub fn full(width: usize, height: usize) -> Result<ObjectMask> {
        ObjectMask::new(width, height, vec![true; width * height])
    }

    pub fn empty(width: usize, height: usize) -> Result<ObjectMask> {
        ObjectMask::new(width, height, vec![false; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Fraction of the frame covered by the object.
    pub fn area_ratio(&self) -> f64 {
        self.count() as f64 / self.bits.len() as f64
    }
}

fn parse_header(data: &[u8]) -> Result<(usize, usize, u32, usize)> {
    let mut fields = Vec::with_capacity(4);
    let mut i = 0;
    while fields.len() < 4 {
        while i < data.len() && (data[i].is_ascii_whitespace() || data[i] == b'#') {
            if data[i] == b'#' {
                while i < data.len() && data[i] != b'\n' {
                    i += 1;
                }
            } else {
                i += 1;
            }
        }
        let start = i;
        while i < data.len() && !data[i].is_ascii_whitespace() && data[i] != b'#' {
            i += 1;
        }
        if start == i {
            return Err(Error::Format("truncated PGM header".into()));
        }
        fields.push(std::str::from_utf8(&data[start..i]).unwrap_or("").to_string());
    }
    // Exactly one whitespace byte separates the header from the raster.
    if i >= data.len() {
        return Err(Error::Format("PGM header has no raster".into()));
    }
    i += 1;
    if fields[0] != "P5" {
        return Err(Error::Format(format!(
            "expected binary PGM magic P5, got `{}`",
            fields[0]
        )));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Format(format!("bad PGM header field `{s}`")))
    };
    let (w, h, max) = (num(&fields[1])?, num(&fields[2])?, num(&fields[3])?);
    if max == 0 || max > 255 {
        return Err(Error::Format(format!("PGM maxval {max} is not in 1..=255")));
    }
    Ok((w, h, max as u32, i))
}

fn decode(data: &[u8]) -> Result<(usize, usize, Vec<f64>)> {
    let (w, h, max, offset) = parse_header(data)?;
    let n = w
        .checked_mul(h)
        .ok_or_else(|| Error::Format("PGM dimensions overflow".into()))?;
    let raster = data.get(offset..offset + n).ok_or_else(|| {
        Error::Format(format!(
            "PGM raster holds {} of {n} bytes",
            data.len().saturating_sub(offset)
        ))
    })?;
    let scale = 255.0 / max as f64;
    Ok((w, h, raster.iter().map(|&b| (b as f64 * scale).min(255.0)).collect()))
}

/// Reads a binary (`P5`) graymap.
pub fn read_pgm<R: Read>(mut input: R) -> Result<GrayImage> {
    let mut data = Vec::new();
    input.read_to_end(&mut data)?;
    let (w, h, px) = decode(&data)?;
    GrayImage::new(w, h, px)
}

/// Reads a binary graymap as a mask; nonzero pixels belong to the object.
pub fn read_mask_pgm<R: Read>(mut input: R) -> Result<ObjectMask> {
    let mut data = Vec::new();
    input.read_to_end(&mut data)?;
    let (w, h, px) = decode(&data)?;
    ObjectMask::new(w, h, px.into_iter().map(|v| v > 0.0).collect())
}

pub fn write_pgm<W: Write>(mut out: W, image: &GrayImage) -> Result<()> {
    write!(out, "P5\n{} {}\n255\n", image.width, image.height)?;
    out.write_all(&image.to_u8())?;
    out.flush()?;
    Ok(())
}

/// Convenience wrapper over [`read_pgm`] for paths.
pub fn read_pgm_file(path: &Path) -> Result<GrayImage> {
    read_pgm(std::fs::File::open(path)?)
}
