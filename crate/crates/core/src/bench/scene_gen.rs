use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point3, Region, Scene, SceneObject};

/// Placement attempts allowed in a row before packing is declared infeasible.
pub const MAX_CONSECUTIVE_REJECTIONS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneConfig {
    pub n_objects: usize,
    pub cube_edge: f64,
    pub d_min: f64,
    pub d_max: f64,
    pub disjoint: bool,
    pub overlap_rate: f64,
    pub seed: u64,
}

impl SceneConfig {
    /// Disjoint scene in a 100 m cube.
    pub fn disjoint(n_objects: usize, d_min: f64, d_max: f64, seed: u64) -> SceneConfig {
        SceneConfig {
            n_objects,
            cube_edge: 100.0,
            d_min,
            d_max,
            disjoint: true,
            overlap_rate: 0.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.d_min.is_finite()
            && self.d_max.is_finite()
            && self.cube_edge.is_finite()
            && 0.0 < self.d_min
            && self.d_min <= self.d_max
            && self.d_max < self.cube_edge;
        if !ok {
            return Err(Error::InvalidConfig(format!(
                "need 0 < d_min ({}) <= d_max ({}) < cube edge ({})",
                self.d_min, self.d_max, self.cube_edge
            )));
        }
        if !(0.0..=1.0).contains(&self.overlap_rate) {
            return Err(Error::InvalidConfig(format!(
                "overlap rate must lie in [0, 1], got {}",
                self.overlap_rate
            )));
        }
        Ok(())
    }
}

fn uniform_in_cube(rng: &mut ChaCha8Rng, edge: f64) -> Point3 {
    Point3::new(
        rng.gen_range(0.0..edge),
        rng.gen_range(0.0..edge),
        rng.gen_range(0.0..edge),
    )
}

fn uniform_in_ball(rng: &mut ChaCha8Rng, center: Point3, radius: f64) -> Point3 {
    loop {
        let v = Point3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.norm_squared() <= 1.0 {
            return center + v * radius;
        }
    }
}

fn inside(p: Point3, edge: f64) -> bool {
    [p.x, p.y, p.z].iter().all(|c| (0.0..=edge).contains(c))
}

/// Random spheres with ground-truth diameters uniform in `[d_min, d_max]`.
///
/// Disjoint scenes keep every pair of centers more than `d_max` apart.
/// Otherwise each object after the first lands, with probability
/// `overlap_rate`, within `d_min` of a random earlier center.
pub fn generate_scene(config: &SceneConfig) -> Result<Scene> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let edge = config.cube_edge;
    let mut centers: Vec<Point3> = Vec::with_capacity(config.n_objects);
    let mut objects = Vec::with_capacity(config.n_objects);
    for i in 0..config.n_objects {
        let diameter = if config.d_max > config.d_min {
            rng.gen_range(config.d_min..=config.d_max)
        } else {
            config.d_min
        };
        let mut rejections = 0;
        let center = loop {
            let candidate = if config.disjoint {
                uniform_in_cube(&mut rng, edge)
            } else if !centers.is_empty() && rng.gen_bool(config.overlap_rate) {
                let anchor = centers[rng.gen_range(0..centers.len())];
                uniform_in_ball(&mut rng, anchor, config.d_min)
            } else {
                uniform_in_cube(&mut rng, edge)
            };
            let ok = inside(candidate, edge)
                && (!config.disjoint || centers.iter().all(|c| c.distance(candidate) > config.d_max));
            if ok {
                break candidate;
            }
            rejections += 1;
            if rejections >= MAX_CONSECUTIVE_REJECTIONS {
                return Err(Error::Capacity {
                    achieved: i,
                    requested: config.n_objects,
                });
            }
        };
        centers.push(center);
        objects.push(SceneObject {
            id: format!("obj{i:04}"),
            region: Region::sphere(center, diameter)?,
        });
    }
    Scene::new(objects, config.d_min, config.d_max, edge)
}
