use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A position in world space, in meters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3::new(0.0, 0.0, 0.0);
    pub const UNIT_X: Point3 = Point3::new(1.0, 0.0, 0.0);
    pub const UNIT_Y: Point3 = Point3::new(0.0, 1.0, 0.0);
    pub const UNIT_Z: Point3 = Point3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn dot(self, other: Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Point3) -> Point3 {
        Point3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn distance(self, other: Point3) -> f64 {
        (self - other).norm()
    }

    pub fn distance_squared(self, other: Point3) -> f64 {
        (self - other).norm_squared()
    }

    /// Unit vector in the same direction, or `None` for a (near) zero vector.
    pub fn normalized(self) -> Option<Point3> {
        let n = self.norm();
        if n > f64::MIN_POSITIVE && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn lerp(self, other: Point3, t: f64) -> Point3 {
        self + (other - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Any unit vector perpendicular to `self` (which must be non-zero).
    pub fn any_orthogonal(self) -> Point3 {
        let helper = if self.x.abs() <= self.y.abs() && self.x.abs() <= self.z.abs() {
            Point3::UNIT_X
        } else if self.y.abs() <= self.z.abs() {
            Point3::UNIT_Y
        } else {
            Point3::UNIT_Z
        };
        self.cross(helper).normalized().unwrap_or(Point3::UNIT_Y)
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(v: [f64; 3]) -> Self {
        Point3::new(v[0], v[1], v[2])
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        [p.x, p.y, p.z]
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Point3 {
    fn add_assign(&mut self, o: Point3) {
        *self = *self + o;
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Point3 {
    type Output = Point3;
    fn div(self, s: f64) -> Point3 {
        Point3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.x, self.y, self.z)
    }
}

/// Parses `x,y,z`.
impl FromStr for Point3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Format(format!("expected `x,y,z`, got `{s}`")));
        }
        let mut v = [0.0; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::Format(format!("bad coordinate `{part}` in `{s}`")))?;
        }
        let p = Point3::from(v);
        if !p.is_finite() {
            return Err(Error::Format(format!("non-finite point `{s}`")));
        }
        Ok(p)
    }
}

/// Centroid of a non-empty point set.
pub fn centroid(points: &[Point3]) -> Option<Point3> {
    if points.is_empty() {
        return None;
    }
    let sum = points.iter().fold(Point3::ORIGIN, |acc, &p| acc + p);
    Some(sum / points.len() as f64)
}

/// Closest point to `p` on the segment `[a, b]`, with its parameter in `[0, 1]`.
pub fn closest_on_segment(a: Point3, b: Point3, p: Point3) -> (Point3, f64) {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 <= f64::MIN_POSITIVE {
        return (a, 0.0);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    (a + ab * t, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triples() {
        let p: Point3 = "1, -2.5,3e1".parse().unwrap();
        assert_eq!(p, Point3::new(1.0, -2.5, 30.0));
        assert!("1,2".parse::<Point3>().is_err());
        assert!("1,2,nan".parse::<Point3>().is_err());
    }

    #[test]
    fn orthogonal_is_unit_and_perpendicular() {
        for v in [Point3::UNIT_X, Point3::new(1.0, 2.0, 3.0), Point3::new(0.0, 0.0, -4.0)] {
            let o = v.any_orthogonal();
            assert!((o.norm() - 1.0).abs() < 1e-12);
            assert!(o.dot(v).abs() < 1e-12);
        }
    }

    #[test]
    fn segment_projection_clamps() {
        let a = Point3::ORIGIN;
        let b = Point3::new(2.0, 0.0, 0.0);
        assert_eq!(
            closest_on_segment(a, b, Point3::new(1.0, 5.0, 0.0)).0,
            Point3::new(1.0, 0.0, 0.0)
        );
        assert_eq!(closest_on_segment(a, b, Point3::new(-3.0, 1.0, 0.0)).1, 0.0);
        assert_eq!(closest_on_segment(a, b, Point3::new(9.0, 1.0, 0.0)).0, b);
    }
}
