use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{closest_on_segment, max_diameter_segment, polyline_length, Point3, Region, SceneObject, Shape};

/// Default spacing of perimeter samples, as a fraction of the global `d_min`.
pub const PERIMETER_STEP_FRACTION: f64 = 1.0 / 32.0;

/// Candidate offsets of the traversed rings outside the owner boundary are
/// `k / STANDOFF_STEPS · d_min / 2` for `k = 1..=STANDOFF_STEPS`. The
/// shortest covering traversal wins.
const STANDOFF_STEPS: usize = 16;

/// A coverage probe counts as reached when the path passes within this
/// fraction of `d_min / 2`.
const REACH_MARGIN: f64 = 0.999;

const MERIDIAN_PROBES: usize = 2048;
const MAX_PROBES: usize = 512;
const MIN_RING_POINTS: usize = 8;

/// Perimeter-and-spike traversal around one region.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DetourPlan {
    pub owner_id: String,
    pub axis: (Point3, Point3),
    /// Closed rings, each listed without repeating its first point.
    pub perimeters: Vec<Vec<Point3>>,
    /// Spike segments as `(c_in, c_out)`.
    pub spikes: Vec<(Point3, Point3)>,
    /// Full traversal order.
    pub stitched: Vec<Point3>,
    pub length: f64,
}

impl DetourPlan {
    pub fn axis_length(&self) -> f64 {
        self.axis.0.distance(self.axis.1)
    }
}

/// Boundary point with its outward unit normal.
type Sample = (Point3, Point3);

struct Frame {
    center: Point3,
    u: Point3,
    e1: Point3,
    e2: Point3,
}

impl Frame {
    /// Polar angle from the axis, azimuth, and distance from the axis.
    fn polar(&self, p: Point3) -> (f64, f64, f64) {
        let v = p - self.center;
        let along = v.dot(self.u);
        let x = v.dot(self.e1);
        let y = v.dot(self.e2);
        let perp = x.hypot(y);
        (perp.atan2(along), y.atan2(x).rem_euclid(2.0 * PI), perp)
    }
}

fn exact_rings(frame: &Frame, radius: f64, standoff: f64, step: f64, n: usize) -> Vec<Vec<Sample>> {
    (0..n)
        .map(|k| {
            let psi = (k as f64 + 0.5) * PI / n as f64;
            let circumference = 2.0 * PI * (radius + standoff) * psi.sin();
            let m = ((circumference / step).ceil() as usize).max(MIN_RING_POINTS);
            (0..m)
                .map(|j| {
                    let theta = 2.0 * PI * j as f64 / m as f64;
                    let dir = frame.u * psi.cos() + (frame.e1 * theta.cos() + frame.e2 * theta.sin()) * psi.sin();
                    (frame.center + dir * radius, dir)
                })
                .collect()
        })
        .collect()
}

/// Slices a sampled boundary into `n` polar slabs and keeps, per azimuth
/// bin, the sample farthest from the axis.
fn sampled_rings(
    frame: &Frame,
    points: &[Point3],
    normals: &[Point3],
    standoff: f64,
    step: f64,
    n: usize,
) -> Vec<Vec<Sample>> {
    let polar: Vec<(f64, f64, f64)> = points.iter().map(|&p| frame.polar(p)).collect();
    let slab = PI / n as f64;
    let mut rings = Vec::with_capacity(n);
    for k in 0..n {
        let members: Vec<usize> = (0..points.len())
            .filter(|&i| ((polar[i].0 / slab).floor() as usize).min(n - 1) == k)
            .collect();
        if members.is_empty() {
            continue;
        }
        let reach = members.iter().map(|&i| polar[i].2).fold(0.0, f64::max);
        let bins = ((2.0 * PI * (reach + standoff) / step).ceil() as usize).max(MIN_RING_POINTS);
        let mut best: Vec<Option<usize>> = vec![None; bins];
        for &i in &members {
            let b = ((polar[i].1 / (2.0 * PI) * bins as f64) as usize).min(bins - 1);
            if best[b].is_none_or(|j| polar[i].2 > polar[j].2) {
                best[b] = Some(i);
            }
        }
        rings.push(best.into_iter().flatten().map(|i| (points[i], normals[i])).collect());
    }
    rings
}

struct Traversal {
    perimeters: Vec<Vec<Point3>>,
    spikes: Vec<(Point3, Point3)>,
    stitched: Vec<Point3>,
}

fn stitch(rings: &[Vec<Sample>], standoff: f64, depth: f64, spike_spacing: f64) -> Traversal {
    let mut t = Traversal {
        perimeters: Vec::new(),
        spikes: Vec::new(),
        stitched: Vec::new(),
    };
    let lift = |&(p, n): &Sample| p + n * standoff;
    let sink = |&(p, n): &Sample| p - n * depth;
    let Some(first) = rings.iter().find_map(|r| r.first()) else {
        return t;
    };
    // Entry spike reaching into the owner.
    t.spikes.push((sink(first), lift(first)));
    t.stitched.push(sink(first));
    t.stitched.push(lift(first));
    for ring in rings.iter().filter(|r| !r.is_empty()) {
        let pts: Vec<Point3> = ring.iter().map(lift).collect();
        if t.stitched.last() != Some(&pts[0]) {
            t.stitched.push(pts[0]);
        }
        let mut arc = 0.0;
        for j in 1..=pts.len() {
            let k = j % pts.len();
            arc += pts[j - 1].distance(pts[k]);
            t.stitched.push(pts[k]);
            if arc >= spike_spacing {
                arc = 0.0;
                t.spikes.push((sink(&ring[k]), pts[k]));
                t.stitched.push(sink(&ring[k]));
                t.stitched.push(pts[k]);
            }
        }
        t.perimeters.push(pts);
    }
    t
}

fn distance_to_polyline(p: Point3, line: &[Point3]) -> f64 {
    match line {
        [] => f64::INFINITY,
        [q] => p.distance(*q),
        _ => line
            .windows(2)
            .map(|s| closest_on_segment(s[0], s[1], p).0.distance(p))
            .fold(f64::INFINITY, f64::min),
    }
}

/// Whether every ball of radius `rho` resting on the boundary, centered at
/// the surface or slightly below it, is reached by the path.
fn covers(path: &[Point3], probes: &[Sample], rho: f64) -> bool {
    let reach = REACH_MARGIN * rho;
    probes.iter().all(|&(p, n)| {
        [rho, 0.0, -0.25 * rho]
            .iter()
            .all(|&z| distance_to_polyline(p + n * z, path) <= reach)
    })
}

/// Analytic version of [`covers`] for rings around a sphere. Rings are
/// circles about the axis, so one meridian of probes suffices; every polygon
/// point lies within its ring's chord sag of the circle, which is charged
/// against the reach. Connectors and spikes are ignored, which only
/// underestimates coverage.
fn rings_cover_sphere(radius: f64, standoff: f64, n: usize, step: f64, rho: f64) -> bool {
    let reach = REACH_MARGIN * rho;
    let rings: Vec<(f64, f64, f64)> = (0..n)
        .map(|k| {
            let psi = (k as f64 + 0.5) * PI / n as f64;
            let r = (radius + standoff) * psi.sin();
            let m = ((2.0 * PI * r / step).ceil() as usize).max(MIN_RING_POINTS);
            ((radius + standoff) * psi.cos(), r, r * (1.0 - (PI / m as f64).cos()))
        })
        .collect();
    (0..=MERIDIAN_PROBES).all(|i| {
        let psi = PI * i as f64 / MERIDIAN_PROBES as f64;
        [rho, 0.0, -0.25 * rho].iter().all(|&z| {
            let (a, b) = ((radius + z) * psi.cos(), (radius + z) * psi.sin());
            rings.iter().any(|&(h, r, sag)| (a - h).hypot(b - r) + sag <= reach)
        })
    })
}

/// Builds the detour with the default perimeter step and a single entry spike.
pub fn build_detour_default(owner: &SceneObject, d_min_global: f64) -> Result<DetourPlan> {
    build_detour(
        owner,
        d_min_global,
        PERIMETER_STEP_FRACTION * d_min_global,
        f64::INFINITY,
    )
}

/// Closed rings around the owner, perpendicular to its longest axis and
/// offset outward, joined by straight connectors and entered through an
/// inward spike. For each candidate offset the ring count starts at the
/// number of `d_min` slices of the axis and grows until every `d_min` ball
/// touching the boundary is reached; the shortest such traversal is kept.
pub fn build_detour(
    owner: &SceneObject,
    d_min_global: f64,
    perimeter_step: f64,
    spike_spacing: f64,
) -> Result<DetourPlan> {
    if !(d_min_global.is_finite() && d_min_global > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "d_min must be positive, got {d_min_global}"
        )));
    }
    if !(perimeter_step.is_finite() && perimeter_step > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "perimeter step must be positive, got {perimeter_step}"
        )));
    }
    if spike_spacing.is_nan() || spike_spacing <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "spike spacing must be positive, got {spike_spacing}"
        )));
    }
    let region: &Region = &owner.region;
    let axis = max_diameter_segment(region);
    let (a, b) = axis;
    let span = a.distance(b);
    if span < region.touch_tolerance(d_min_global) {
        let c = region.center();
        return Ok(DetourPlan {
            owner_id: owner.id.clone(),
            axis,
            perimeters: Vec::new(),
            spikes: Vec::new(),
            stitched: vec![c],
            length: 0.0,
        });
    }
    let u = (b - a) / span;
    let e1 = u.any_orthogonal();
    let frame = Frame {
        center: region.center(),
        u,
        e1,
        e2: u.cross(e1),
    };
    let rho = d_min_global / 2.0;
    let probes: Vec<Sample> = match region.shape() {
        Shape::Sampled(s) => {
            let stride = s.points().len().div_ceil(MAX_PROBES);
            region.boundary_samples(0).into_iter().step_by(stride).collect()
        }
        _ => Vec::new(),
    };
    let rings_for = |n: usize, standoff: f64| match region.shape() {
        Shape::Sampled(s) => sampled_rings(&frame, s.points(), s.normals(), standoff, perimeter_step, n),
        _ => exact_rings(&frame, region.outer_radius(), standoff, perimeter_step, n),
    };
    let first = ((span / d_min_global).ceil() as usize).saturating_sub(1).max(1);
    let last = 4 * first + 16;
    let mut best: Option<(bool, f64, Traversal)> = None;
    for standoff in (1..=STANDOFF_STEPS).map(|k| k as f64 / STANDOFF_STEPS as f64 * rho) {
        for n in first..=last {
            let analytic = region
                .is_exact()
                .then(|| rings_cover_sphere(region.outer_radius(), standoff, n, perimeter_step, rho));
            if analytic == Some(false) && (n < last || best.is_some()) {
                continue;
            }
            let t = stitch(&rings_for(n, standoff), standoff, rho, spike_spacing);
            let done = analytic.unwrap_or_else(|| covers(&t.stitched, &probes, rho));
            let len = polyline_length(&t.stitched);
            // Prefer covering traversals, then shorter ones.
            let better = match &best {
                None => true,
                Some((ok, l, _)) => (done && !ok) || (done == *ok && len < *l),
            };
            if better {
                best = Some((done, len, t));
            }
            if done {
                break;
            }
        }
    }
    let (_, _, t) = best.expect("at least one ring count is tried");
    Ok(DetourPlan {
        owner_id: owner.id.clone(),
        axis,
        length: polyline_length(&t.stitched),
        perimeters: t.perimeters,
        spikes: t.spikes,
        stitched: t.stitched,
    })
}
