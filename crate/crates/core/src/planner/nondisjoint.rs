use std::collections::BTreeMap;

use crate::error::Result;
use crate::geom::{closest_point_on_region, polyline_touches, Point3, Scene, Tour, Visit};
use crate::tsp::TspConfig;

use super::center_visit::{center_visit, visiting_order};
use super::detour::{build_detour_default, DetourPlan};
use super::mis::maximal_independent_set;

/// Center-visit over the independent set, with a detour spliced in at every
/// kept region that absorbed overlapping neighbors.
pub fn plan_nondisjoint(start: Point3, scene: &Scene, tsp: &TspConfig) -> Result<Tour> {
    plan_nondisjoint_with_detours(start, scene, tsp).map(|(tour, _)| tour)
}

/// Like [`plan_nondisjoint`], also returning the spliced detours.
pub fn plan_nondisjoint_with_detours(start: Point3, scene: &Scene, tsp: &TspConfig) -> Result<(Tour, Vec<DetourPlan>)> {
    let mis = maximal_independent_set(scene);
    if mis.assignment.is_empty() {
        return Ok((center_visit(start, scene, tsp)?, Vec::new()));
    }
    let kept = scene.subset(&mis.kept)?;
    let order = visiting_order(start, &kept.centers(), tsp)?;
    let mut tour = Tour::open(vec![start]);
    let mut detours = Vec::new();
    for i in order {
        let o = &kept.objects()[i];
        let last = tour.waypoints[tour.waypoints.len() - 1];
        let touch = closest_point_on_region(&o.region, last)?;
        tour.push_visit(touch, &o.id);
        let neighbors = mis.neighbors_of(&o.id);
        if neighbors.is_empty() {
            continue;
        }
        let plan = build_detour_default(o, scene.d_min_global())?;
        let (head, tail) = (plan.stitched[0], plan.stitched[plan.stitched.len() - 1]);
        let mut path = vec![touch];
        if touch.distance(head) <= touch.distance(tail) {
            path.extend(plan.stitched.iter().copied());
        } else {
            path.extend(plan.stitched.iter().rev().copied());
        }
        // A neighbor the detour misses gets a direct excursion.
        for id in neighbors {
            let region = &scene.object(id).expect("assignment names scene objects").region;
            if !polyline_touches(region, &path, scene.touch_tolerance(region)) {
                let here = path[path.len() - 1];
                path.push(closest_point_on_region(region, here)?);
            }
        }
        tour.waypoints.extend_from_slice(&path[1..]);
        detours.push(plan);
    }
    annotate_removed(scene, &mut tour, mis.assignment.keys());
    Ok((tour, detours))
}

/// Inserts a waypoint where the path first enters each listed object and
/// records it as that object's visit.
fn annotate_removed<'a>(scene: &Scene, tour: &mut Tour, ids: impl Iterator<Item = &'a String>) {
    let w = &tour.waypoints;
    let mut entries: BTreeMap<usize, Vec<(f64, &str)>> = BTreeMap::new();
    for id in ids {
        let region = &scene.object(id).expect("assignment names scene objects").region;
        let tol = scene.touch_tolerance(region);
        // Entering at half the tolerance keeps the recorded point inside
        // despite rounding; grazing contacts fall back to the full tolerance.
        let first_entry = |tol: f64| {
            (0..w.len().saturating_sub(1)).find_map(|i| region.segment_entry(w[i], w[i + 1], tol).map(|t| (i, t)))
        };
        let hit = first_entry(0.5 * tol)
            .or_else(|| first_entry(tol))
            .filter(|&(i, t)| region.contains(w[i].lerp(w[i + 1], t), tol));
        if let Some((i, t)) = hit {
            entries.entry(i).or_default().push((t, id));
        }
    }
    let mut waypoints = Vec::with_capacity(w.len() + entries.len());
    let mut remap = Vec::with_capacity(w.len());
    let mut visits = Vec::new();
    for (i, &p) in w.iter().enumerate() {
        remap.push(waypoints.len());
        waypoints.push(p);
        if let Some(list) = entries.get_mut(&i) {
            list.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(b.1)));
            for &(t, id) in list.iter() {
                waypoints.push(p.lerp(w[i + 1], t));
                visits.push(Visit {
                    object_id: id.to_string(),
                    waypoint_index: waypoints.len() - 1,
                });
            }
        }
    }
    for v in &mut tour.visits {
        v.waypoint_index = remap[v.waypoint_index];
    }
    tour.visits.extend(visits);
    tour.visits.sort_by_key(|v| v.waypoint_index);
    tour.waypoints = waypoints;
}
