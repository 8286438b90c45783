use crate::error::{Error, Result};

use super::point::{centroid, Point3};
use super::sampling::fibonacci_sphere;

/// Minimum number of boundary samples in a [`Shape::Sampled`] region.
pub const MIN_SAMPLED_POINTS: usize = 8;

/// Relative slack on the "every boundary point lies within `d_max / 2` of the
/// center" invariant of sampled regions.
pub const EPS_TOL: f64 = 0.25;

/// Touch tolerance of exact shapes, as a fraction of the global `d_min`.
pub const EXACT_TOUCH_FRACTION: f64 = 1e-6;

/// Touch tolerance of sampled shapes, as a fraction of the region's own `d_min`.
pub const SAMPLED_TOUCH_FRACTION: f64 = 0.05;

const PROBE_COUNT: usize = 64;

/// A boundary given as a point cloud with outward unit normals.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledBoundary {
    points: Vec<Point3>,
    normals: Vec<Point3>,
    d_min: f64,
    d_max: f64,
}

impl SampledBoundary {
    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn normals(&self) -> &[Point3] {
        &self.normals
    }

    pub fn d_min(&self) -> f64 {
        self.d_min
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    fn nearest(&self, p: Point3) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, q) in self.points.iter().enumerate() {
            let d = q.distance_squared(p);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        best
    }
}

/// Geometry of a detection region.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    /// Solid ball.
    Sphere { diameter: f64 },
    /// Hollow ball: every point whose distance to the center lies between
    /// the inner and outer radius.
    Shell { inner_diameter: f64, outer_diameter: f64 },
    /// Possibly non-convex region known only through boundary samples.
    Sampled(SampledBoundary),
}

/// A diameter-bounded detection region around an object.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    center: Point3,
    shape: Shape,
}

fn check_center(center: Point3) -> Result<()> {
    if center.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidRegion(format!("non-finite center {center}")))
    }
}

fn check_diameter(name: &str, d: f64) -> Result<()> {
    if d.is_finite() && d > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidRegion(format!(
            "{name} must be finite and positive, got {d}"
        )))
    }
}

impl Region {
    pub fn sphere(center: Point3, diameter: f64) -> Result<Region> {
        check_center(center)?;
        check_diameter("diameter", diameter)?;
        Ok(Region {
            center,
            shape: Shape::Sphere { diameter },
        })
    }

    pub fn shell(center: Point3, inner_diameter: f64, outer_diameter: f64) -> Result<Region> {
        check_center(center)?;
        check_diameter("inner diameter", inner_diameter)?;
        check_diameter("outer diameter", outer_diameter)?;
        if inner_diameter > outer_diameter {
            return Err(Error::InvalidRegion(format!(
                "inner diameter {inner_diameter} exceeds outer diameter {outer_diameter}"
            )));
        }
        Ok(Region {
            center,
            shape: Shape::Shell {
                inner_diameter,
                outer_diameter,
            },
        })
    }

    /// Sampled region centered on the centroid of its boundary points.
    pub fn sampled(points: Vec<Point3>, normals: Vec<Point3>, d_min: f64, d_max: f64) -> Result<Region> {
        let center =
            centroid(&points).ok_or_else(|| Error::InvalidRegion("sampled region has no boundary points".into()))?;
        Region::sampled_about(center, points, normals, d_min, d_max)
    }

    /// Sampled region with an explicitly given center.
    pub fn sampled_about(
        center: Point3,
        points: Vec<Point3>,
        normals: Vec<Point3>,
        d_min: f64,
        d_max: f64,
    ) -> Result<Region> {
        check_center(center)?;
        check_diameter("d_min", d_min)?;
        check_diameter("d_max", d_max)?;
        if d_min > d_max {
            return Err(Error::InvalidRegion(format!("d_min {d_min} exceeds d_max {d_max}")));
        }
        if points.len() < MIN_SAMPLED_POINTS {
            return Err(Error::InvalidRegion(format!(
                "sampled region needs at least {MIN_SAMPLED_POINTS} boundary points, got {}",
                points.len()
            )));
        }
        if normals.len() != points.len() {
            return Err(Error::InvalidRegion(format!(
                "{} boundary points but {} normals",
                points.len(),
                normals.len()
            )));
        }
        let mut unit_normals = Vec::with_capacity(normals.len());
        for (p, n) in points.iter().zip(&normals) {
            if !p.is_finite() {
                return Err(Error::InvalidRegion(format!("non-finite boundary point {p}")));
            }
            let u = n
                .normalized()
                .ok_or_else(|| Error::InvalidRegion(format!("degenerate normal at {p}")))?;
            // Already-unit normals are kept bit-for-bit so files round-trip.
            unit_normals.push(if (n.norm() - 1.0).abs() <= 1e-12 { *n } else { u });
        }
        let reach = d_max / 2.0 * (1.0 + EPS_TOL);
        if let Some(p) = points.iter().find(|p| p.distance(center) > reach) {
            return Err(Error::InvalidRegion(format!(
                "boundary point {p} lies {} from the center, beyond {reach}",
                p.distance(center)
            )));
        }
        let (a, b) = farthest_pair(&points);
        let spread = points[a].distance(points[b]);
        if spread > d_max * (1.0 + 1e-9) {
            return Err(Error::InvalidRegion(format!(
                "farthest boundary pair {spread} exceeds d_max {d_max}"
            )));
        }
        Ok(Region {
            center,
            shape: Shape::Sampled(SampledBoundary {
                points,
                normals: unit_normals,
                d_min,
                d_max,
            }),
        })
    }

    pub fn center(&self) -> Point3 {
        self.center
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn d_min(&self) -> f64 {
        match &self.shape {
            Shape::Sphere { diameter } => *diameter,
            Shape::Shell { inner_diameter, .. } => *inner_diameter,
            Shape::Sampled(s) => s.d_min,
        }
    }

    pub fn d_max(&self) -> f64 {
        match &self.shape {
            Shape::Sphere { diameter } => *diameter,
            Shape::Shell { outer_diameter, .. } => *outer_diameter,
            Shape::Sampled(s) => s.d_max,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.shape, Shape::Sampled(_))
    }

    /// Same shape moved by `offset`.
    pub fn translated(&self, offset: Point3) -> Region {
        let shape = match &self.shape {
            Shape::Sampled(s) => Shape::Sampled(SampledBoundary {
                points: s.points.iter().map(|&p| p + offset).collect(),
                ..s.clone()
            }),
            other => other.clone(),
        };
        Region {
            center: self.center + offset,
            shape,
        }
    }

    /// Radial extent `[inner, outer]` of exact shapes.
    fn radial_band(&self) -> Option<(f64, f64)> {
        match &self.shape {
            Shape::Sphere { diameter } => Some((0.0, diameter / 2.0)),
            Shape::Shell {
                inner_diameter,
                outer_diameter,
            } => Some((inner_diameter / 2.0, outer_diameter / 2.0)),
            Shape::Sampled(_) => None,
        }
    }

    /// Largest distance from the center to the region's boundary.
    pub fn outer_radius(&self) -> f64 {
        match &self.shape {
            Shape::Sampled(s) => s.points.iter().map(|p| p.distance(self.center)).fold(0.0, f64::max),
            _ => self.d_max() / 2.0,
        }
    }

    /// Slack allowed when deciding whether a waypoint touches this region.
    pub fn touch_tolerance(&self, d_min_global: f64) -> f64 {
        match &self.shape {
            Shape::Sampled(s) => SAMPLED_TOUCH_FRACTION * s.d_min,
            _ => EXACT_TOUCH_FRACTION * d_min_global,
        }
    }

    /// Tolerance used when the scene-wide `d_min` is unknown.
    fn own_tolerance(&self) -> f64 {
        self.touch_tolerance(self.d_min())
    }

    /// Whether `p` lies in the region, allowing `tol` meters of slack.
    pub fn contains(&self, p: Point3, tol: f64) -> bool {
        match &self.shape {
            Shape::Sampled(s) => {
                let i = s.nearest(p);
                (p - s.points[i]).dot(s.normals[i]) <= tol
            }
            _ => {
                let (lo, hi) = self.radial_band().unwrap_or((0.0, 0.0));
                let d = p.distance(self.center);
                d <= hi + tol && d >= lo - tol
            }
        }
    }

    /// First parameter `t ∈ [0, 1]` at which `a + t (b - a)` enters the region.
    pub fn segment_entry(&self, a: Point3, b: Point3, tol: f64) -> Option<f64> {
        match &self.shape {
            Shape::Sampled(s) => {
                let len = a.distance(b);
                let step = 0.25 * SAMPLED_TOUCH_FRACTION * s.d_min;
                let n = (len / step).ceil().max(1.0) as usize;
                (0..=n)
                    .map(|k| k as f64 / n as f64)
                    .find(|&t| self.contains(a.lerp(b, t), tol))
            }
            _ => {
                let (lo, hi) = self.radial_band().unwrap_or((0.0, 0.0));
                exact_band_entry(self.center, lo, hi, a, b, tol)
            }
        }
    }

    /// Outward boundary samples with unit normals. Exact shapes are sampled on
    /// their outer sphere with `count` Fibonacci points; sampled shapes return
    /// their own cloud.
    pub fn boundary_samples(&self, count: usize) -> Vec<(Point3, Point3)> {
        match &self.shape {
            Shape::Sampled(s) => s.points.iter().copied().zip(s.normals.iter().copied()).collect(),
            _ => {
                let r = self.d_max() / 2.0;
                fibonacci_sphere(count)
                    .into_iter()
                    .map(|u| (self.center + u * r, u))
                    .collect()
            }
        }
    }

    fn probes(&self) -> Vec<Point3> {
        match &self.shape {
            Shape::Sampled(s) => s.points.clone(),
            Shape::Sphere { diameter } => {
                let mut v = vec![self.center];
                v.extend(
                    fibonacci_sphere(PROBE_COUNT)
                        .into_iter()
                        .map(|u| self.center + u * (diameter / 2.0)),
                );
                v
            }
            Shape::Shell {
                inner_diameter,
                outer_diameter,
            } => fibonacci_sphere(PROBE_COUNT)
                .into_iter()
                .flat_map(|u| {
                    [
                        self.center + u * (outer_diameter / 2.0),
                        self.center + u * (inner_diameter / 2.0),
                    ]
                })
                .collect(),
        }
    }
}

fn exact_band_entry(center: Point3, lo: f64, hi: f64, a: Point3, b: Point3, tol: f64) -> Option<f64> {
    let d = b - a;
    let m = a - center;
    let qa = d.norm_squared();
    let inside = |t: f64| {
        let r = (a + d * t).distance(center);
        r <= hi + tol && r >= lo - tol
    };
    if qa <= f64::MIN_POSITIVE {
        return inside(0.0).then_some(0.0);
    }
    let qb = 2.0 * m.dot(d);
    let roots = |radius: f64| -> Option<(f64, f64)> {
        let qc = m.norm_squared() - radius * radius;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return None;
        }
        let s = disc.sqrt();
        Some(((-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa)))
    };
    // Within the outer sphere on [t1, t2].
    let (t1, t2) = roots(hi + tol)?;
    let start = t1.max(0.0);
    let end = t2.min(1.0);
    if start > end {
        return None;
    }
    let inner = lo - tol;
    if inner <= 0.0 {
        return Some(start);
    }
    // Outside the inner sphere except on (s1, s2).
    match roots(inner) {
        Some((s1, s2)) if start > s1 && start < s2 => (s2 <= end).then_some(s2),
        _ => Some(start),
    }
}

/// Closest feasible visiting point of `region` to `p`.
///
/// Solid shapes return `p` itself when it already lies inside; sampled
/// shapes return the nearest boundary sample.
pub fn closest_point_on_region(region: &Region, p: Point3) -> Result<Point3> {
    match &region.shape {
        Shape::Sampled(s) => {
            if s.points.is_empty() {
                return Err(Error::InvalidRegion("sampled region has no boundary points".into()));
            }
            Ok(s.points[s.nearest(p)])
        }
        _ => {
            let (lo, hi) = region.radial_band().unwrap_or((0.0, 0.0));
            let offset = p - region.center;
            let d = offset.norm();
            if d >= lo && d <= hi {
                return Ok(p);
            }
            let dir = offset.normalized().unwrap_or(Point3::UNIT_X);
            let r = if d > hi { hi } else { lo };
            Ok(region.center + dir * r)
        }
    }
}

/// Whether two regions overlap.
///
/// Pairs of exact shapes are decided analytically. Pairs involving a sampled
/// boundary are decided by containment tests of each shape's probe points
/// in the other, which makes the test symmetric.
pub fn regions_intersect(a: &Region, b: &Region) -> bool {
    match (&a.shape, &b.shape) {
        (Shape::Sphere { diameter: da }, Shape::Sphere { diameter: db }) => {
            a.center.distance(b.center) <= (da + db) / 2.0
        }
        _ => match (a.radial_band(), b.radial_band()) {
            (Some((lo1, hi1)), Some((lo2, hi2))) => {
                // Some pair of radii r1, r2 must be realizable by a common point.
                let d = a.center.distance(b.center);
                let lower = lo1.max(lo2 - d).max(d - hi2).max(0.0);
                let upper = hi1.min(hi2 + d);
                lower <= upper
            }
            _ => {
                let ta = a.own_tolerance();
                let tb = b.own_tolerance();
                a.probes().iter().any(|&p| b.contains(p, tb)) || b.probes().iter().any(|&p| a.contains(p, ta))
            }
        },
    }
}

/// Indices of the farthest pair of points, found by a radius-pruned scan.
pub(crate) fn farthest_pair(points: &[Point3]) -> (usize, usize) {
    if points.len() < 2 {
        return (0, 0);
    }
    let c = centroid(points).unwrap_or(Point3::ORIGIN);
    let mut order: Vec<(usize, f64)> = points.iter().enumerate().map(|(i, p)| (i, p.distance(c))).collect();
    order.sort_by(|x, y| y.1.total_cmp(&x.1).then(x.0.cmp(&y.0)));
    let r_max = order[0].1;
    let mut best = (order[0].0, order[1].0);
    let mut best_d = -1.0;
    for (k, &(i, ri)) in order.iter().enumerate() {
        if ri + r_max < best_d {
            break;
        }
        for &(j, rj) in &order[k + 1..] {
            if ri + rj < best_d {
                break;
            }
            let d = points[i].distance(points[j]);
            if d > best_d {
                best_d = d;
                best = (i.min(j), i.max(j));
            }
        }
    }
    best
}

fn lexicographic(a: Point3, b: Point3) -> (Point3, Point3) {
    let ka = [a.x, a.y, a.z];
    let kb = [b.x, b.y, b.z];
    let ord = ka
        .iter()
        .zip(&kb)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal);
    if ord.is_gt() {
        (b, a)
    } else {
        (a, b)
    }
}

/// Endpoints of a segment realizing the region's maximum diameter, ordered
/// lexicographically. Spheres and shells use the world +x axis.
pub fn max_diameter_segment(region: &Region) -> (Point3, Point3) {
    match &region.shape {
        Shape::Sampled(s) => {
            let (i, j) = farthest_pair(&s.points);
            lexicographic(s.points[i], s.points[j])
        }
        _ => {
            let r = region.d_max() / 2.0;
            (region.center - Point3::UNIT_X * r, region.center + Point3::UNIT_X * r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    fn unit_sphere_cloud(n: usize, r: f64) -> Region {
        let dirs = fibonacci_sphere(n);
        Region::sampled(dirs.iter().map(|&u| u * r).collect(), dirs, 2.0 * r, 2.0 * r).unwrap()
    }

    #[test]
    fn sphere_closest_point() {
        let s = Region::sphere(Point3::ORIGIN, 2.0).unwrap();
        assert_eq!(closest_point_on_region(&s, p(3.0, 0.0, 0.0)).unwrap(), p(1.0, 0.0, 0.0));
        assert_eq!(closest_point_on_region(&s, p(0.5, 0.0, 0.0)).unwrap(), p(0.5, 0.0, 0.0));
    }

    #[test]
    fn shell_closest_point_uses_nearest_band_edge() {
        let s = Region::shell(Point3::ORIGIN, 2.0, 6.0).unwrap();
        assert_eq!(closest_point_on_region(&s, p(0.0, 5.0, 0.0)).unwrap(), p(0.0, 3.0, 0.0));
        assert_eq!(closest_point_on_region(&s, p(0.0, 0.0, 0.5)).unwrap(), p(0.0, 0.0, 1.0));
        assert_eq!(closest_point_on_region(&s, p(2.0, 0.0, 0.0)).unwrap(), p(2.0, 0.0, 0.0));
        // The center itself has no direction; +x is used.
        assert_eq!(closest_point_on_region(&s, Point3::ORIGIN).unwrap(), p(1.0, 0.0, 0.0));
    }

    #[test]
    fn sampled_closest_point_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<Point3> = (0..500)
            .map(|_| {
                let u = p(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                );
                u.normalized().unwrap() * rng.gen_range(1.5..2.0)
            })
            .collect();
        let normals: Vec<Point3> = pts.iter().map(|q| q.normalized().unwrap()).collect();
        let region = Region::sampled(pts.clone(), normals, 3.0, 4.0).unwrap();
        for _ in 0..50 {
            let q = p(
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
            );
            let mut best = pts[0];
            for &c in &pts {
                if c.distance(q) < best.distance(q) {
                    best = c;
                }
            }
            assert_eq!(closest_point_on_region(&region, q).unwrap(), best);
        }
    }

    #[test]
    fn sphere_pairs_intersect_exactly() {
        let a = Region::sphere(Point3::ORIGIN, 2.0).unwrap();
        assert!(regions_intersect(&a, &Region::sphere(p(1.5, 0.0, 0.0), 2.0).unwrap()));
        assert!(!regions_intersect(&a, &Region::sphere(p(3.0, 0.0, 0.0), 2.0).unwrap()));
        assert!(regions_intersect(&a, &Region::sphere(p(2.0, 0.0, 0.0), 2.0).unwrap()));
    }

    #[test]
    fn shell_intersections() {
        let shell = Region::shell(Point3::ORIGIN, 4.0, 6.0).unwrap();
        // Small ball inside the hollow part.
        assert!(!regions_intersect(
            &shell,
            &Region::sphere(Point3::ORIGIN, 1.0).unwrap()
        ));
        // Ball straddling the band.
        assert!(regions_intersect(
            &shell,
            &Region::sphere(p(2.5, 0.0, 0.0), 0.5).unwrap()
        ));
        // Concentric shells with disjoint bands.
        assert!(!regions_intersect(
            &shell,
            &Region::shell(Point3::ORIGIN, 8.0, 10.0).unwrap()
        ));
        assert!(regions_intersect(
            &shell,
            &Region::shell(p(1.0, 0.0, 0.0), 8.0, 10.0).unwrap()
        ));
    }

    #[test]
    fn sampled_vs_sphere_intersection() {
        let cloud = unit_sphere_cloud(400, 1.0);
        assert!(regions_intersect(
            &cloud,
            &Region::sphere(p(1.8, 0.0, 0.0), 2.0).unwrap()
        ));
        assert!(!regions_intersect(
            &cloud,
            &Region::sphere(p(2.5, 0.0, 0.0), 2.0).unwrap()
        ));
        // Fully enclosed ball.
        assert!(regions_intersect(&cloud, &Region::sphere(Point3::ORIGIN, 0.2).unwrap()));
    }

    #[test]
    fn sampled_containment() {
        let cloud = unit_sphere_cloud(400, 1.0);
        assert!(cloud.contains(Point3::ORIGIN, 0.0));
        assert!(cloud.contains(p(0.0, 0.9, 0.0), 0.0));
        assert!(!cloud.contains(p(0.0, 1.3, 0.0), 0.05));
    }

    #[test]
    fn sampled_validation() {
        let dirs = fibonacci_sphere(6);
        assert!(Region::sampled(dirs.clone(), dirs.clone(), 2.0, 2.0).is_err());
        let dirs = fibonacci_sphere(20);
        assert!(Region::sampled(dirs.clone(), dirs[..10].to_vec(), 2.0, 2.0).is_err());
        // Spread larger than declared d_max.
        assert!(Region::sampled(dirs.clone(), dirs.clone(), 1.0, 1.5).is_err());
        assert!(Region::sampled(dirs.clone(), dirs.clone(), 2.5, 2.0).is_err());
        assert!(Region::sampled(dirs.clone(), dirs, 2.0, 2.0).is_ok());
    }

    #[test]
    fn sphere_and_shell_validation() {
        assert!(Region::sphere(Point3::ORIGIN, 0.0).is_err());
        assert!(Region::sphere(Point3::ORIGIN, f64::NAN).is_err());
        assert!(Region::sphere(p(f64::INFINITY, 0.0, 0.0), 1.0).is_err());
        assert!(Region::shell(Point3::ORIGIN, 3.0, 2.0).is_err());
        let s = Region::shell(Point3::ORIGIN, 2.0, 3.0).unwrap();
        assert_eq!((s.d_min(), s.d_max()), (2.0, 3.0));
    }

    #[test]
    fn diameter_segments() {
        let s = Region::sphere(Point3::ORIGIN, 2.0).unwrap();
        assert_eq!(max_diameter_segment(&s), (p(-1.0, 0.0, 0.0), p(1.0, 0.0, 0.0)));

        let pts = vec![
            p(2.0, 0.0, 0.0),
            p(-2.0, 0.0, 0.0),
            p(0.0, 1.0, 0.0),
            p(0.0, -1.0, 0.0),
            p(0.0, 0.0, 1.0),
            p(0.0, 0.0, -1.0),
            p(0.5, 0.5, 0.0),
            p(-0.5, -0.5, 0.0),
        ];
        let normals = pts.clone();
        let r = Region::sampled(pts, normals, 2.0, 4.0).unwrap();
        let (a, b) = max_diameter_segment(&r);
        assert_eq!((a, b), (p(-2.0, 0.0, 0.0), p(2.0, 0.0, 0.0)));
        assert_eq!(a.distance(b), 4.0);
    }

    #[test]
    fn farthest_pair_matches_quadratic_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let pts: Vec<Point3> = (0..200)
                .map(|_| {
                    p(
                        rng.gen_range(-3.0..3.0),
                        rng.gen_range(-1.0..1.0),
                        rng.gen_range(-2.0..2.0),
                    )
                })
                .collect();
            let mut brute: f64 = 0.0;
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    brute = brute.max(pts[i].distance(pts[j]));
                }
            }
            let (i, j) = farthest_pair(&pts);
            assert_eq!(pts[i].distance(pts[j]), brute);
        }
    }

    #[test]
    fn segment_entry_into_ball_and_shell() {
        let s = Region::sphere(Point3::ORIGIN, 2.0).unwrap();
        let t = s.segment_entry(p(-3.0, 0.0, 0.0), p(3.0, 0.0, 0.0), 0.0).unwrap();
        assert!((t - 1.0 / 3.0).abs() < 1e-12);
        assert!(s.segment_entry(p(-3.0, 2.0, 0.0), p(3.0, 2.0, 0.0), 0.0).is_none());
        assert_eq!(s.segment_entry(Point3::ORIGIN, p(3.0, 0.0, 0.0), 0.0), Some(0.0));

        let shell = Region::shell(Point3::ORIGIN, 2.0, 4.0).unwrap();
        // Starting in the hollow core, the segment enters the band at r = 1.
        let t = shell.segment_entry(Point3::ORIGIN, p(4.0, 0.0, 0.0), 0.0).unwrap();
        assert!((t - 0.25).abs() < 1e-12);
        // Coming from outside, the first contact is the outer surface.
        let t = shell.segment_entry(p(-4.0, 0.0, 0.0), p(0.0, 0.0, 0.0), 0.0).unwrap();
        assert!((t - 0.5).abs() < 1e-12);
    }
}
