use std::collections::HashSet;

use crate::error::{Error, Result};

use super::point::{closest_on_segment, Point3};
use super::region::{regions_intersect, Region};
use super::tour::Tour;

/// Relative slack when checking per-region diameters against the global bounds.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct SceneObject {
    pub id: String,
    pub region: Region,
}

/// Objects with their regions plus the global diameter bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    objects: Vec<SceneObject>,
    d_min_global: f64,
    d_max_global: f64,
    cube_edge: f64,
}

impl Scene {
    pub fn new(objects: Vec<SceneObject>, d_min_global: f64, d_max_global: f64, cube_edge: f64) -> Result<Scene> {
        if !(d_min_global.is_finite() && d_min_global > 0.0 && d_max_global.is_finite() && d_min_global <= d_max_global)
        {
            return Err(Error::InvalidScene(format!(
                "global bounds must satisfy 0 < d_min ({d_min_global}) <= d_max ({d_max_global})"
            )));
        }
        if !(cube_edge.is_finite() && cube_edge > 0.0) {
            return Err(Error::InvalidScene(format!(
                "cube edge must be positive, got {cube_edge}"
            )));
        }
        let mut seen = HashSet::new();
        let lo = d_min_global * (1.0 - BOUND_SLACK);
        let hi = d_max_global * (1.0 + BOUND_SLACK);
        for o in &objects {
            if !seen.insert(o.id.as_str()) {
                return Err(Error::InvalidScene(format!("duplicate object id `{}`", o.id)));
            }
            let (a, b) = (o.region.d_min(), o.region.d_max());
            if a < lo || b > hi {
                return Err(Error::InvalidScene(format!(
                    "object `{}` has diameters [{a}, {b}] outside the global bounds [{d_min_global}, {d_max_global}]",
                    o.id
                )));
            }
        }
        Ok(Scene {
            objects,
            d_min_global,
            d_max_global,
            cube_edge,
        })
    }

    pub fn objects(&self) -> &[SceneObject] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn d_min_global(&self) -> f64 {
        self.d_min_global
    }

    pub fn d_max_global(&self) -> f64 {
        self.d_max_global
    }

    pub fn cube_edge(&self) -> f64 {
        self.cube_edge
    }

    pub fn object(&self, id: &str) -> Option<&SceneObject> {
        self.objects.iter().find(|o| o.id == id)
    }

    pub fn centers(&self) -> Vec<Point3> {
        self.objects.iter().map(|o| o.region.center()).collect()
    }

    /// Scene restricted to the listed ids, in the given order.
    pub fn subset(&self, ids: &[String]) -> Result<Scene> {
        let objects = ids
            .iter()
            .map(|id| self.object(id).cloned().ok_or_else(|| Error::UnknownObject(id.clone())))
            .collect::<Result<Vec<_>>>()?;
        Scene::new(objects, self.d_min_global, self.d_max_global, self.cube_edge)
    }

    pub fn is_pairwise_disjoint(&self) -> bool {
        let o = &self.objects;
        (0..o.len()).all(|i| (i + 1..o.len()).all(|j| !regions_intersect(&o[i].region, &o[j].region)))
    }

    pub fn touch_tolerance(&self, region: &Region) -> f64 {
        region.touch_tolerance(self.d_min_global)
    }
}

/// Outcome of checking a tour against every object of a scene.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CoverageAudit {
    /// Objects whose region the polyline never enters.
    pub missing: Vec<String>,
    /// Visit annotations whose waypoint lies outside the named region, or
    /// that name an unknown object or waypoint.
    pub bad_visits: Vec<String>,
}

impl CoverageAudit {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty() && self.bad_visits.is_empty()
    }
}

/// Whether the polyline through `waypoints` enters `region` within `tol`.
pub fn polyline_touches(region: &Region, waypoints: &[Point3], tol: f64) -> bool {
    let reach = region.outer_radius() + tol;
    let c = region.center();
    match waypoints {
        [] => false,
        [p] => region.contains(*p, tol),
        _ => waypoints.windows(2).any(|s| {
            let (q, _) = closest_on_segment(s[0], s[1], c);
            q.distance(c) <= reach && region.segment_entry(s[0], s[1], tol).is_some()
        }),
    }
}

/// Checks that every object is entered by the trajectory and that every
/// visit annotation points at a waypoint inside its region.
pub fn audit_coverage(scene: &Scene, tour: &Tour) -> CoverageAudit {
    let mut path = tour.waypoints.clone();
    if tour.closed && path.len() > 1 {
        path.push(path[0]);
    }
    let mut audit = CoverageAudit::default();
    for o in scene.objects() {
        if !polyline_touches(&o.region, &path, scene.touch_tolerance(&o.region)) {
            audit.missing.push(o.id.clone());
        }
    }
    for v in &tour.visits {
        let ok = match (scene.object(&v.object_id), tour.waypoints.get(v.waypoint_index)) {
            (Some(o), Some(&p)) => o.region.contains(p, scene.touch_tolerance(&o.region)),
            _ => false,
        };
        if !ok {
            audit.bad_visits.push(v.object_id.clone());
        }
    }
    audit
}
