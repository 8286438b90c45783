//! Planning algorithms over scenes of detection regions.

mod baseline;
mod bounds;
mod center_visit;
mod detour;
mod mis;
mod nondisjoint;
mod online;

pub use baseline::{alpha_fat_baseline, DEFAULT_SAMPLES_PER_REGION};
pub use bounds::{
    approximation_factor, detour_length_bound, online_lower_bound, packing_bound, validate_bounds, BoundReport,
    DetourBound, ALPHA, BETA, PACKING_COEFFICIENT,
};
pub use center_visit::{center_visit, visiting_order};
pub use detour::{build_detour, build_detour_default, DetourPlan};
pub use mis::{maximal_independent_set, MisResult};
pub use nondisjoint::{plan_nondisjoint, plan_nondisjoint_with_detours};
pub use online::{plan_online, DetectionOracle, DetectionOutcome, SimulatedOracle};
