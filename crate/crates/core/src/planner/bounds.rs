use std::f64::consts::PI;

use serde::Serialize;

use crate::geom::{Scene, Tour};

use super::detour::DetourPlan;

/// Packing constant of the online lower bound.
pub const ALPHA: f64 = 0.4786;

/// Minkowski-sum volume ratio used in the packing argument, taken as given.
pub const BETA: f64 = 5.0 / 12.0;

/// Leading coefficient of the packing bound `N ≤ 27/(20 D_min) (L + 2 D_min)`.
pub const PACKING_COEFFICIENT: f64 = 27.0 / 20.0;

/// Largest object count a tour of length `length` can serve when every
/// region has inscribed diameter at least `d_min`.
pub fn packing_bound(length: f64, d_min: f64) -> f64 {
    PACKING_COEFFICIENT / d_min * (length + 2.0 * d_min)
}

/// Maximum length of the detour around a region of diameter `d_max`.
pub fn detour_length_bound(d_max: f64, d_min: f64) -> f64 {
    3.0 * PI * d_max * d_max / d_min
}

/// Lower bound on any trajectory that detects `n` disjoint hollow-ball objects.
pub fn online_lower_bound(n: usize, d_min: f64) -> f64 {
    0.25 * n as f64 * ALPHA * d_min
}

/// Composed approximation factor for overlapping scenes, given the point-TSP
/// slack `epsilon`.
pub fn approximation_factor(d_max: f64, d_min: f64, epsilon: f64) -> f64 {
    let r = d_max / d_min;
    (1.0 + epsilon) * (1.0 + 27.0 * r / 40.0 + 81.0 * PI * r * r / 20.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DetourBound {
    pub owner_id: String,
    pub limit: f64,
    pub actual: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n_objects: usize,
    pub length: f64,
    pub lemma1_bound: f64,
    /// `None` when the scene is not pairwise disjoint.
    pub lemma1_holds: Option<bool>,
    pub detour_bounds: Vec<DetourBound>,
    pub online_lower_bound: f64,
    pub online_holds: bool,
    /// Achieved length over the larger of the two lower-bound estimates,
    /// `None` when neither estimate is positive.
    pub theorem_factor: Option<f64>,
}

/// Evaluates the packing, detour and online bounds on a planned tour.
pub fn validate_bounds(scene: &Scene, tour: &Tour, detours: &[DetourPlan]) -> BoundReport {
    let n = scene.len();
    let d_min = scene.d_min_global();
    let length = tour.length();
    let bound = packing_bound(length, d_min);
    let disjoint = scene.is_pairwise_disjoint();
    let detour_bounds = detours
        .iter()
        .map(|d| {
            let d_max = scene.object(&d.owner_id).map_or(d.axis_length(), |o| o.region.d_max());
            let limit = detour_length_bound(d_max, d_min);
            DetourBound {
                owner_id: d.owner_id.clone(),
                limit,
                actual: d.length,
                holds: d.length <= limit,
            }
        })
        .collect();
    let online = online_lower_bound(n, d_min);
    // Invert the packing bound for a length estimate: L ≥ 20 N D / 27 − 2 D.
    let packing = n as f64 * d_min / PACKING_COEFFICIENT - 2.0 * d_min;
    let lower = packing.max(online);
    BoundReport {
        n_objects: n,
        length,
        lemma1_bound: bound,
        lemma1_holds: disjoint.then_some(n as f64 <= bound),
        detour_bounds,
        online_lower_bound: online,
        online_holds: online <= length,
        theorem_factor: (lower > 0.0).then(|| length / lower),
    }
}
