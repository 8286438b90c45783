use serde::{Deserialize, Serialize};

use super::point::Point3;

/// Marks the waypoint at which an object counts as visited.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Visit {
    pub object_id: String,
    pub waypoint_index: usize,
}

/// Ordered waypoints, optionally closed, with per-object visit annotations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tour {
    pub waypoints: Vec<Point3>,
    pub closed: bool,
    pub visits: Vec<Visit>,
}

impl Tour {
    pub fn open(waypoints: Vec<Point3>) -> Tour {
        Tour {
            waypoints,
            closed: false,
            visits: Vec::new(),
        }
    }

    pub fn closed(waypoints: Vec<Point3>) -> Tour {
        Tour {
            waypoints,
            closed: true,
            visits: Vec::new(),
        }
    }

    pub fn length(&self) -> f64 {
        tour_length(self)
    }

    /// Appends a waypoint and records it as the visit of `object_id`.
    pub fn push_visit(&mut self, p: Point3, object_id: &str) {
        self.waypoints.push(p);
        self.visits.push(Visit {
            object_id: object_id.to_string(),
            waypoint_index: self.waypoints.len() - 1,
        });
    }

    /// Same route walked backwards.
    pub fn reversed(&self) -> Tour {
        let n = self.waypoints.len();
        let mut waypoints = self.waypoints.clone();
        waypoints.reverse();
        let visits = self
            .visits
            .iter()
            .map(|v| Visit {
                object_id: v.object_id.clone(),
                waypoint_index: n - 1 - v.waypoint_index,
            })
            .collect();
        Tour {
            waypoints,
            closed: self.closed,
            visits,
        }
    }

    /// Consecutive segments, including the closing edge of closed tours.
    pub fn segments(&self) -> impl Iterator<Item = (Point3, Point3)> + '_ {
        let w = &self.waypoints;
        let closing = (self.closed && w.len() > 1).then(|| (w[w.len() - 1], w[0]));
        w.windows(2).map(|s| (s[0], s[1])).chain(closing)
    }
}

/// Sum of consecutive Euclidean distances, plus the closing edge iff closed.
pub fn tour_length(tour: &Tour) -> f64 {
    polyline_length(&tour.waypoints)
        + if tour.closed && tour.waypoints.len() > 1 {
            tour.waypoints[tour.waypoints.len() - 1].distance(tour.waypoints[0])
        } else {
            0.0
        }
}

pub fn polyline_length(points: &[Point3]) -> f64 {
    points.windows(2).map(|s| s[0].distance(s[1])).sum()
}
