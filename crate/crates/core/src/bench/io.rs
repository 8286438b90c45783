//! JSON scene and trajectory files, CSV reports.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point3, Region, Scene, SceneObject, Shape, Tour, Visit};

use super::compare::{Aggregate, Row};

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ShapeFile {
    Sphere {
        diameter_m: f64,
    },
    Shell {
        inner_diameter_m: f64,
        outer_diameter_m: f64,
    },
    Sampled {
        d_min_m: f64,
        d_max_m: f64,
        points_m: Vec<Point3>,
        normals: Vec<Point3>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectFile {
    id: String,
    center_m: Point3,
    shape: ShapeFile,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    cube_edge_m: f64,
    d_min_m: f64,
    d_max_m: f64,
    objects: Vec<ObjectFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrajectoryFile {
    length_m: f64,
    waypoints_m: Vec<Point3>,
    visits: Vec<Visit>,
}

fn object_to_file(o: &SceneObject) -> ObjectFile {
    let shape = match o.region.shape() {
        Shape::Sphere { diameter } => ShapeFile::Sphere { diameter_m: *diameter },
        Shape::Shell {
            inner_diameter,
            outer_diameter,
        } => ShapeFile::Shell {
            inner_diameter_m: *inner_diameter,
            outer_diameter_m: *outer_diameter,
        },
        Shape::Sampled(s) => ShapeFile::Sampled {
            d_min_m: s.d_min(),
            d_max_m: s.d_max(),
            points_m: s.points().to_vec(),
            normals: s.normals().to_vec(),
        },
    };
    ObjectFile {
        id: o.id.clone(),
        center_m: o.region.center(),
        shape,
    }
}

fn object_from_file(o: ObjectFile) -> Result<SceneObject> {
    let c = o.center_m;
    let region = match o.shape {
        ShapeFile::Sphere { diameter_m } => Region::sphere(c, diameter_m),
        ShapeFile::Shell {
            inner_diameter_m,
            outer_diameter_m,
        } => Region::shell(c, inner_diameter_m, outer_diameter_m),
        ShapeFile::Sampled {
            d_min_m,
            d_max_m,
            points_m,
            normals,
        } => Region::sampled_about(c, points_m, normals, d_min_m, d_max_m),
    }
    .map_err(|e| Error::InvalidScene(format!("object `{}`: {e}", o.id)))?;
    Ok(SceneObject { id: o.id, region })
}

pub fn scene_to_json(scene: &Scene) -> Result<String> {
    let file = SceneFile {
        cube_edge_m: scene.cube_edge(),
        d_min_m: scene.d_min_global(),
        d_max_m: scene.d_max_global(),
        objects: scene.objects().iter().map(object_to_file).collect(),
    };
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}

pub fn scene_from_json(text: &str) -> Result<Scene> {
    let file: SceneFile = serde_json::from_str(text)?;
    let objects = file.objects.into_iter().map(object_from_file).collect::<Result<_>>()?;
    Scene::new(objects, file.d_min_m, file.d_max_m, file.cube_edge_m)
}

pub fn trajectory_to_json(tour: &Tour) -> Result<String> {
    let file = TrajectoryFile {
        length_m: tour.length(),
        waypoints_m: tour.waypoints.clone(),
        visits: tour.visits.clone(),
    };
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}

/// Parses a trajectory file. The stored length is checked against the
/// waypoints.
pub fn trajectory_from_json(text: &str) -> Result<Tour> {
    let file: TrajectoryFile = serde_json::from_str(text)?;
    if let Some(p) = file.waypoints_m.iter().find(|p| !p.is_finite()) {
        return Err(Error::Format(format!("non-finite waypoint {p}")));
    }
    if let Some(v) = file.visits.iter().find(|v| v.waypoint_index >= file.waypoints_m.len()) {
        return Err(Error::Format(format!(
            "visit of `{}` points at waypoint {} of {}",
            v.object_id,
            v.waypoint_index,
            file.waypoints_m.len()
        )));
    }
    let tour = Tour {
        waypoints: file.waypoints_m,
        closed: false,
        visits: file.visits,
    };
    let len = tour.length();
    if (len - file.length_m).abs() > 1e-6 * len.max(1.0) {
        return Err(Error::Format(format!(
            "stored length {} disagrees with the waypoints ({len})",
            file.length_m
        )));
    }
    Ok(tour)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

pub fn read_scene(path: &Path) -> Result<Scene> {
    scene_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_scene(path: &Path, scene: &Scene) -> Result<()> {
    write_text(path, &scene_to_json(scene)?)
}

pub fn read_trajectory(path: &Path) -> Result<Tour> {
    let reader = BufReader::new(File::open(path)?);
    let text = std::io::read_to_string(reader)?;
    trajectory_from_json(&text)
}

pub fn write_trajectory(path: &Path, tour: &Tour) -> Result<()> {
    write_text(path, &trajectory_to_json(tour)?)
}

/// Per-run rows: `method,n_objects,seed,length_m,runtime_s`.
pub fn write_rows_csv<W: Write>(out: W, rows: &[Row]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    if rows.is_empty() {
        w.write_record(["method", "n_objects", "seed", "length_m", "runtime_s"])?;
    }
    w.flush()?;
    Ok(())
}

/// Aggregates: `method,n_objects,mean_length_m,std_length_m,mean_runtime_s`.
pub fn write_aggregates_csv<W: Write>(out: W, aggregates: &[Aggregate]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for a in aggregates {
        w.serialize(a)?;
    }
    if aggregates.is_empty() {
        w.write_record(["method", "n_objects", "mean_length_m", "std_length_m", "mean_runtime_s"])?;
    }
    w.flush()?;
    Ok(())
}
