use serde::Serialize;

use crate::error::{Error, Result};

use super::image::{GrayImage, ObjectMask};

pub const BINS: usize = 360;

/// Edge pixels have gradient magnitude at least this fraction of the image maximum.
pub const DEFAULT_EDGE_FRACTION: f64 = 0.1;

/// Counts of edge-pixel gradient orientations in integer-degree bins.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrientationHistogram {
    pub bins: Vec<u64>,
    pub total_edge_pixels: u64,
}

impl OrientationHistogram {
    pub fn empty() -> OrientationHistogram {
        OrientationHistogram {
            bins: vec![0; BINS],
            total_edge_pixels: 0,
        }
    }

    /// Histogram with every orientation turned by `degrees` whole degrees.
    pub fn rotated(&self, degrees: usize) -> OrientationHistogram {
        let mut bins = vec![0; BINS];
        for (b, &c) in self.bins.iter().enumerate() {
            bins[(b + degrees) % BINS] = c;
        }
        OrientationHistogram {
            bins,
            total_edge_pixels: self.total_edge_pixels,
        }
    }
}

/// 3×3 Sobel gradients `(g_x, g_y)` at every interior pixel, row-major over
/// the `(width - 2) × (height - 2)` interior. `y` grows downward.
pub fn sobel(image: &GrayImage) -> Vec<(f64, f64)> {
    let (w, h) = (image.width(), image.height());
    let p = |x: usize, y: usize| image.get(x, y);
    let mut out = Vec::with_capacity((w - 2) * (h - 2));
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let gx = (p(x + 1, y - 1) + 2.0 * p(x + 1, y) + p(x + 1, y + 1))
                - (p(x - 1, y - 1) + 2.0 * p(x - 1, y) + p(x - 1, y + 1));
            let gy = (p(x - 1, y + 1) + 2.0 * p(x, y + 1) + p(x + 1, y + 1))
                - (p(x - 1, y - 1) + 2.0 * p(x, y - 1) + p(x + 1, y - 1));
            out.push((gx, gy));
        }
    }
    out
}

fn orientation_bin(gx: f64, gy: f64) -> usize {
    let mut deg = gy.atan2(gx).to_degrees();
    // Exact multiples of a degree can come back a rounding error short.
    if (deg - deg.round()).abs() < 1e-9 {
        deg = deg.round();
    }
    (deg.rem_euclid(360.0).floor() as usize) % BINS
}

/// Orientation histogram of the interior pixels whose Sobel magnitude is at
/// least `edge_fraction` of the largest magnitude in the image.
pub fn edge_orientation_histogram(image: &GrayImage, edge_fraction: f64) -> Result<OrientationHistogram> {
    if !(edge_fraction > 0.0 && edge_fraction <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "edge fraction must lie in (0, 1], got {edge_fraction}"
        )));
    }
    let grads = sobel(image);
    let max = grads.iter().map(|&(x, y)| x.hypot(y)).fold(0.0, f64::max);
    let mut hist = OrientationHistogram::empty();
    if max == 0.0 {
        return Ok(hist);
    }
    let cut = edge_fraction * max;
    for &(gx, gy) in &grads {
        if gx.hypot(gy) >= cut {
            hist.bins[orientation_bin(gx, gy)] += 1;
            hist.total_edge_pixels += 1;
        }
    }
    Ok(hist)
}

/// Shannon entropy (natural log) of the histogram's distribution.
pub fn entropy(hist: &OrientationHistogram) -> f64 {
    if hist.total_edge_pixels == 0 {
        return 0.0;
    }
    let total = hist.total_edge_pixels as f64;
    -hist
        .bins
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            p * p.ln()
        })
        .sum::<f64>()
}

/// Orientation entropy times the fraction of the frame covered by the object.
pub fn viewing_score(image: &GrayImage, mask: &ObjectMask, edge_fraction: f64) -> Result<f64> {
    if (image.width(), image.height()) != (mask.width(), mask.height()) {
        return Err(Error::DimensionMismatch(format!(
            "image is {}x{} but mask is {}x{}",
            image.width(),
            image.height(),
            mask.width(),
            mask.height()
        )));
    }
    let hist = edge_orientation_histogram(image, edge_fraction)?;
    if hist.total_edge_pixels == 0 || mask.count() == 0 {
        return Ok(0.0);
    }
    Ok(entropy(&hist) * mask.area_ratio())
}
