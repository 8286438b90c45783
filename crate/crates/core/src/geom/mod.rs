//! Points, regions, scenes and tours.

mod point;
mod region;
mod sampling;
mod scene;
mod tour;

pub use point::{centroid, closest_on_segment, Point3};
pub(crate) use region::farthest_pair;
pub use region::{
    closest_point_on_region, max_diameter_segment, regions_intersect, Region, SampledBoundary, Shape, EPS_TOL,
    EXACT_TOUCH_FRACTION, MIN_SAMPLED_POINTS, SAMPLED_TOUCH_FRACTION,
};
pub use sampling::fibonacci_sphere;
pub use scene::{audit_coverage, polyline_touches, CoverageAudit, Scene, SceneObject};
pub use tour::{polyline_length, tour_length, Tour, Visit};
