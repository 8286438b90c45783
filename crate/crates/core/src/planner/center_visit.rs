use crate::error::Result;
use crate::geom::{closest_point_on_region, polyline_length, Point3, Scene, Tour};
use crate::tsp::{solve_order, TspConfig};

/// Point-TSP order over `points`, rotated so the point nearest `start` comes
/// first and oriented in whichever direction gives the shorter open path.
pub fn visiting_order(start: Point3, points: &[Point3], tsp: &TspConfig) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let order = solve_order(points, tsp)?;
    let mut first = 0;
    for (k, &i) in order.iter().enumerate() {
        let d = start.distance(points[i]);
        let best = start.distance(points[order[first]]);
        if d < best || (d == best && i < order[first]) {
            first = k;
        }
    }
    let mut forward = order[first..].to_vec();
    forward.extend_from_slice(&order[..first]);
    let mut backward = vec![forward[0]];
    backward.extend(forward[1..].iter().rev());
    let path = |o: &[usize]| polyline_length(&o.iter().map(|&i| points[i]).collect::<Vec<_>>());
    if path(&backward) < path(&forward) {
        Ok(backward)
    } else {
        Ok(forward)
    }
}

/// Visits every region at its closest point to the previous waypoint, in the
/// point-TSP order of the region centers.
pub fn center_visit(start: Point3, scene: &Scene, tsp: &TspConfig) -> Result<Tour> {
    let order = visiting_order(start, &scene.centers(), tsp)?;
    let mut tour = Tour::open(vec![start]);
    for i in order {
        let o = &scene.objects()[i];
        let last = tour.waypoints[tour.waypoints.len() - 1];
        tour.push_visit(closest_point_on_region(&o.region, last)?, &o.id);
    }
    Ok(tour)
}
