use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{centroid, Point3, Region, EPS_TOL, MIN_SAMPLED_POINTS};

/// Score threshold separating informative views from the rest.
pub const DEFAULT_THRESHOLD: f64 = 0.3;

/// Fewest surviving views that still describe a region.
pub const MIN_KEPT_SAMPLES: usize = MIN_SAMPLED_POINTS;

/// A scored camera position in spherical coordinates about the object.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViewSample {
    #[serde(rename = "azimuth_rad")]
    pub azimuth: f64,
    #[serde(rename = "elevation_rad")]
    pub elevation: f64,
    #[serde(rename = "distance_m")]
    pub distance: f64,
    pub score: f64,
}

impl ViewSample {
    /// Unit direction from the object toward the camera.
    pub fn direction(&self) -> Point3 {
        let (ce, se) = (self.elevation.cos(), self.elevation.sin());
        Point3::new(ce * self.azimuth.cos(), ce * self.azimuth.sin(), se)
    }

    fn validate(&self) -> Result<()> {
        let finite = self.azimuth.is_finite() && self.elevation.is_finite();
        if !finite
            || !(self.distance.is_finite() && self.distance > 0.0)
            || !(self.score.is_finite() && self.score >= 0.0)
        {
            return Err(Error::Format(format!("invalid view sample {self:?}")));
        }
        Ok(())
    }
}

/// Sampled region whose boundary is the set of views scoring at least
/// `threshold`, each placed at its viewing distance with a radial normal.
/// `d_max` is the farthest pair of kept views and `d_min` twice the
/// smallest kept viewing distance, capped at `d_max`.
pub fn build_region_from_scores(center: Point3, samples: &[ViewSample], threshold: f64) -> Result<Region> {
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "threshold must be positive, got {threshold}"
        )));
    }
    if !center.is_finite() {
        return Err(Error::InvalidRegion(format!("non-finite center {center}")));
    }
    for s in samples {
        s.validate()?;
    }
    let kept: Vec<&ViewSample> = samples.iter().filter(|s| s.score >= threshold).collect();
    if kept.len() < MIN_KEPT_SAMPLES {
        return Err(Error::InsufficientCoverage {
            kept: kept.len(),
            required: MIN_KEPT_SAMPLES,
            threshold,
        });
    }
    let normals: Vec<Point3> = kept.iter().map(|s| s.direction()).collect();
    let points: Vec<Point3> = kept
        .iter()
        .zip(&normals)
        .map(|(s, &n)| center + n * s.distance)
        .collect();
    let (a, b) = crate::geom::farthest_pair(&points);
    let d_max = points[a].distance(points[b]);
    let nearest = 2.0 * kept.iter().map(|s| s.distance).fold(f64::INFINITY, f64::min);
    // A finite cloud on a sphere never realizes the full diameter.
    let d_min = nearest.min(d_max);
    if nearest > d_max * (1.0 + EPS_TOL) {
        return Err(Error::InvalidRegion(format!(
            "kept views span only {d_max} m but the nearest view is {} m away; the views do not surround the object",
            nearest / 2.0
        )));
    }
    let c = centroid(&points).expect("at least eight kept points");
    Region::sampled_about(c, points, normals, d_min, d_max)
}

/// Reads `azimuth_rad,elevation_rad,distance_m,score` rows.
pub fn read_scores_csv<R: Read>(input: R) -> Result<Vec<ViewSample>> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr.headers()?.clone();
    let expected = ["azimuth_rad", "elevation_rad", "distance_m", "score"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Format(format!(
            "score table header must be `{}`, got `{}`",
            expected.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for row in rdr.deserialize() {
        let s: ViewSample = row?;
        s.validate()?;
        out.push(s);
    }
    Ok(out)
}

pub fn write_scores_csv<W: Write>(out: W, samples: &[ViewSample]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if samples.is_empty() {
        w.write_record(["azimuth_rad", "elevation_rad", "distance_m", "score"])?;
    }
    for s in samples {
        w.serialize(s)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{fibonacci_sphere, max_diameter_segment, Shape};

    fn shell_samples(r: f64, n: usize) -> Vec<ViewSample> {
        fibonacci_sphere(n)
            .into_iter()
            .map(|u| ViewSample {
                azimuth: u.y.atan2(u.x),
                elevation: u.z.asin(),
                distance: r,
                score: 0.5,
            })
            .collect()
    }

    #[test]
    fn uniform_shell() {
        let r = build_region_from_scores(Point3::new(1.0, 2.0, 3.0), &shell_samples(4.0, 300), 0.3).unwrap();
        assert!((r.d_max() - 8.0).abs() < 0.05);
        assert!((r.d_min() - 8.0).abs() < 0.05);
        assert!(r.d_min() <= r.d_max());
        assert!(matches!(r.shape(), Shape::Sampled(_)));
    }

    #[test]
    fn low_scores_are_insufficient() {
        let mut s = shell_samples(4.0, 20);
        for v in s.iter_mut().skip(5) {
            v.score = 0.1;
        }
        assert!(matches!(
            build_region_from_scores(Point3::ORIGIN, &s, 0.3),
            Err(Error::InsufficientCoverage { kept: 5, .. })
        ));
    }

    #[test]
    fn removed_band_is_excluded() {
        let mut samples = Vec::new();
        for i in 0..36 {
            for j in -4..=4 {
                let az = (i as f64 * 10.0).to_radians() - std::f64::consts::PI;
                let low = (-0.6..0.6).contains(&az);
                samples.push(ViewSample {
                    azimuth: az,
                    elevation: (j as f64 * 18.0).to_radians(),
                    distance: 3.0 + 0.1 * (i % 5) as f64,
                    score: if low { 0.05 } else { 0.8 },
                });
            }
        }
        let region = build_region_from_scores(Point3::ORIGIN, &samples, 0.3).unwrap();
        let Shape::Sampled(b) = region.shape() else {
            panic!("sampled region expected")
        };
        assert!(b
            .points()
            .iter()
            .all(|p| p.y.atan2(p.x).abs() >= 0.6 - 1e-9 || p.x.hypot(p.y) < 1e-9));
        let mut brute: f64 = 0.0;
        for p in b.points() {
            for q in b.points() {
                brute = brute.max(p.distance(*q));
            }
        }
        assert_eq!(region.d_max(), brute);
        let (a, c) = max_diameter_segment(&region);
        assert_eq!(a.distance(c), brute);
    }

    #[test]
    fn csv_round_trip() {
        let s = shell_samples(2.0, 10);
        let mut buf = Vec::new();
        write_scores_csv(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("azimuth_rad,elevation_rad,distance_m,score\n"));
        assert_eq!(read_scores_csv(&buf[..]).unwrap(), s);
        assert!(read_scores_csv(&b"a,b,c,d\n1,2,3,4\n"[..]).is_err());
        assert!(read_scores_csv(&b"azimuth_rad,elevation_rad,distance_m,score\n0,0,-1,0.5\n"[..]).is_err());
    }
}
