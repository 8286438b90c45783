use crate::error::{Error, Result};
use crate::geom::{fibonacci_sphere, Point3, Scene, Shape, Tour};
use crate::tsp::TspConfig;

use super::center_visit::visiting_order;

pub const DEFAULT_SAMPLES_PER_REGION: usize = 108;

/// Candidate visiting points of every region: Fibonacci samples of the outer
/// sphere for exact shapes, an evenly strided subset of the cloud otherwise.
fn candidates(scene: &Scene, per_region: usize) -> Vec<Vec<Point3>> {
    let pattern = fibonacci_sphere(per_region);
    scene
        .objects()
        .iter()
        .map(|o| match o.region.shape() {
            Shape::Sampled(s) => {
                let stride = s.points().len().div_ceil(per_region).max(1);
                s.points().iter().step_by(stride).copied().collect()
            }
            _ => {
                let r = o.region.outer_radius();
                pattern.iter().map(|&u| o.region.center() + u * r).collect()
            }
        })
        .collect()
}

/// The α-fat comparison planner: one boundary representative per region,
/// chosen greedily as the sample nearest to the representatives picked so
/// far (the first one nearest the start), then a point tour over them.
pub fn alpha_fat_baseline(start: Point3, scene: &Scene, samples_per_region: usize, tsp: &TspConfig) -> Result<Tour> {
    if samples_per_region < 4 {
        return Err(Error::InvalidConfig(format!(
            "samples per region must be at least 4, got {samples_per_region}"
        )));
    }
    let n = scene.len();
    let cands = candidates(scene, samples_per_region);
    // gap[r][s]: distance from sample s of region r to the nearest representative.
    let mut gap: Vec<Vec<f64>> = cands
        .iter()
        .map(|c| c.iter().map(|p| p.distance(start)).collect())
        .collect();
    let mut chosen: Vec<Option<Point3>> = vec![None; n];
    for _ in 0..n {
        let mut best = (f64::INFINITY, usize::MAX, usize::MAX);
        for (r, row) in gap.iter().enumerate() {
            if chosen[r].is_some() {
                continue;
            }
            for (s, &g) in row.iter().enumerate() {
                if g < best.0 || best.1 == usize::MAX {
                    best = (g, r, s);
                }
            }
        }
        let (_, r, s) = best;
        let rep = cands[r][s];
        chosen[r] = Some(rep);
        for (q, row) in gap.iter_mut().enumerate() {
            if chosen[q].is_some() {
                continue;
            }
            for (g, p) in row.iter_mut().zip(&cands[q]) {
                *g = g.min(p.distance(rep));
            }
        }
    }
    let reps: Vec<Point3> = chosen
        .into_iter()
        .map(|p| p.expect("every region gets a representative"))
        .collect();
    let order = visiting_order(start, &reps, tsp)?;
    let mut tour = Tour::open(vec![start]);
    for i in order {
        tour.push_visit(reps[i], &scene.objects()[i].id);
    }
    Ok(tour)
}
