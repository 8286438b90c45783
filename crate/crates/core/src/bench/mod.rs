//! Random scenes, file formats and the comparison harness.

mod compare;
mod io;
mod profiles;
mod scene_gen;

pub use compare::{run_comparison, Aggregate, ComparisonOptions, ComparisonReport, InvalidRow, Method, Row};
pub use io::{
    read_scene, read_trajectory, scene_from_json, scene_to_json, trajectory_from_json, trajectory_to_json,
    write_aggregates_csv, write_rows_csv, write_scene, write_trajectory,
};
pub use profiles::{profile, Profile, PROFILES};
pub use scene_gen::{generate_scene, SceneConfig, MAX_CONSECUTIVE_REJECTIONS};
