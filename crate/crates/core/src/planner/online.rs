use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{Point3, Scene, Shape, Tour, Visit};
use crate::tsp::TspConfig;

use super::center_visit::visiting_order;

/// Oracle polling resolution as a fraction of `d_min`.
pub const STEP_FRACTION: f64 = 0.1;

/// Answers whether an object is detected from a given position.
pub trait DetectionOracle {
    fn detects(&mut self, id: &str, position: Point3) -> bool;

    /// Ground-truth detection diameter, when the oracle knows it.
    fn realized_diameter(&self, _id: &str) -> Option<f64> {
        None
    }
}

impl<F: FnMut(&str, Point3) -> bool> DetectionOracle for F {
    fn detects(&mut self, id: &str, position: Point3) -> bool {
        self(id, position)
    }
}

/// Detects an object once the agent is within half its realized diameter of
/// the object's center.
#[derive(Clone, Debug)]
pub struct SimulatedOracle {
    objects: HashMap<String, (Point3, f64)>,
}

impl SimulatedOracle {
    /// Realized diameters drawn uniformly from `[d_min, d_max]` in input order.
    pub fn from_seed(centers: &[(String, Point3)], d_min: f64, d_max: f64, seed: u64) -> SimulatedOracle {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let objects = centers
            .iter()
            .map(|(id, c)| {
                let d = if d_max > d_min {
                    rng.gen_range(d_min..=d_max)
                } else {
                    d_min
                };
                (id.clone(), (*c, d))
            })
            .collect();
        SimulatedOracle { objects }
    }

    /// Fixed realized diameters.
    pub fn from_diameters(objects: impl IntoIterator<Item = (String, Point3, f64)>) -> SimulatedOracle {
        SimulatedOracle {
            objects: objects.into_iter().map(|(id, c, d)| (id, (c, d))).collect(),
        }
    }

    /// Ground truth taken from a scene's sphere and shell regions; the outer
    /// diameter is the detection diameter.
    pub fn from_scene(scene: &Scene) -> Result<SimulatedOracle> {
        let objects = scene
            .objects()
            .iter()
            .map(|o| match o.region.shape() {
                Shape::Sampled(_) => Err(Error::InvalidScene(format!(
                    "object `{}` has a sampled region; the online planner needs ball regions",
                    o.id
                ))),
                _ => Ok((o.id.clone(), (o.region.center(), o.region.d_max()))),
            })
            .collect::<Result<_>>()?;
        Ok(SimulatedOracle { objects })
    }
}

impl DetectionOracle for SimulatedOracle {
    fn detects(&mut self, id: &str, position: Point3) -> bool {
        self.objects
            .get(id)
            .is_some_and(|&(c, d)| position.distance(c) <= d / 2.0)
    }

    fn realized_diameter(&self, id: &str) -> Option<f64> {
        self.objects.get(id).map(|&(_, d)| d)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DetectionOutcome {
    pub object_id: String,
    pub realized_diameter: f64,
    pub detected_at: Point3,
}

/// Approaches each center in point-TSP order, polling the oracle every
/// `d_min / 10`, and stops at the first detecting position.
pub fn plan_online(
    start: Point3,
    centers: &[(String, Point3)],
    d_min: f64,
    d_max: f64,
    oracle: &mut dyn DetectionOracle,
    tsp: &TspConfig,
) -> Result<(Tour, Vec<DetectionOutcome>)> {
    if !(d_min.is_finite() && d_min > 0.0 && d_max.is_finite() && d_min <= d_max) {
        return Err(Error::InvalidConfig(format!(
            "need 0 < d_min ({d_min}) <= d_max ({d_max})"
        )));
    }
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            if centers[i].1.distance(centers[j].1) <= d_max {
                return Err(Error::InvalidScene(format!(
                    "objects `{}` and `{}` are within d_max of each other",
                    centers[i].0, centers[j].0
                )));
            }
        }
    }
    let points: Vec<Point3> = centers.iter().map(|(_, c)| *c).collect();
    let order = visiting_order(start, &points, tsp)?;
    let step = STEP_FRACTION * d_min;
    let mut tour = Tour::open(vec![start]);
    let mut outcomes = Vec::with_capacity(centers.len());
    for i in order {
        let (id, center) = (&centers[i].0, centers[i].1);
        let here = tour.waypoints[tour.waypoints.len() - 1];
        let found = if oracle.detects(id, here) {
            None
        } else {
            let dist = here.distance(center);
            let steps = (dist / step).ceil().max(1.0) as usize;
            let hit = (1..=steps)
                .map(|k| here.lerp(center, (k as f64 * step / dist).min(1.0)))
                .find(|&p| oracle.detects(id, p));
            Some(hit.ok_or_else(|| Error::DegenerateDetection { id: id.clone() })?)
        };
        let at = match found {
            Some(p) => {
                tour.push_visit(p, id);
                p
            }
            None => {
                tour.visits.push(Visit {
                    object_id: id.clone(),
                    waypoint_index: tour.waypoints.len() - 1,
                });
                here
            }
        };
        let realized = oracle
            .realized_diameter(id)
            .unwrap_or_else(|| (2.0 * at.distance(center)).clamp(d_min, d_max));
        outcomes.push(DetectionOutcome {
            object_id: id.clone(),
            realized_diameter: realized,
            detected_at: at,
        });
    }
    Ok((tour, outcomes))
}
