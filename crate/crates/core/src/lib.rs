//! Tour planning over diameter-bounded 3D detection regions.
//!
//! An agent must pass through one "detection region" per object of interest.
//! Each region is a simply connected neighborhood of the object whose
//! inscribed diameter and overall diameter lie within global bounds
//! `[d_min, d_max]`. The crate provides:
//!
//! - [`geom`]: points, regions, closest-point and intersection queries, tours.
//! - [`tsp`]: an exact Held-Karp oracle and a nearest-neighbor + 2-opt heuristic.
//! - [`planner`]: center-visit planning, maximal independent sets, detours
//!   around overlapping regions, the online hollow-ball planner, the α-fat
//!   baseline and the bound validator.
//! - [`viewscore`]: the entropy-based viewing score and region construction
//!   from scored view samples.
//! - [`bench`]: random scenes, file formats and the comparison harness.
//! - [`cli`]: the `tspn` command-line front end.

pub mod bench;
pub mod cli;
pub mod error;
pub mod geom;
pub mod planner;
pub mod tsp;
pub mod viewscore;

pub use error::{Error, Result};
pub use geom::{Point3, Region, Shape, Tour, Visit};
pub use tsp::{Solver, TspConfig};
