use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{audit_coverage, Point3, Scene, Tour};
use crate::planner::{alpha_fat_baseline, center_visit, plan_online, SimulatedOracle, DEFAULT_SAMPLES_PER_REGION};
use crate::tsp::TspConfig;

use super::scene_gen::{generate_scene, SceneConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    CenterVisit,
    AlphaFat,
    Online,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::CenterVisit, Method::AlphaFat, Method::Online];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::CenterVisit => "center-visit",
            Method::AlphaFat => "alpha-fat",
            Method::Online => "online",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonOptions {
    pub start: Point3,
    pub samples_per_region: usize,
    /// Solver settings; the seed is replaced by each run's scene seed.
    pub tsp: TspConfig,
    /// Worker threads; 1 runs every cell on the calling thread.
    pub threads: usize,
}

impl Default for ComparisonOptions {
    fn default() -> Self {
        ComparisonOptions {
            start: Point3::ORIGIN,
            samples_per_region: DEFAULT_SAMPLES_PER_REGION,
            tsp: TspConfig::default(),
            threads: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub method: String,
    pub n_objects: usize,
    pub seed: u64,
    pub length_m: f64,
    pub runtime_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub method: String,
    pub n_objects: usize,
    pub mean_length_m: f64,
    /// Sample standard deviation; empty with fewer than two runs.
    pub std_length_m: Option<f64>,
    pub mean_runtime_s: f64,
}

/// A run that failed to plan or did not touch every object.
#[derive(Clone, Debug, PartialEq)]
pub struct InvalidRow {
    pub method: String,
    pub n_objects: usize,
    pub seed: u64,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComparisonReport {
    pub rows: Vec<Row>,
    pub aggregates: Vec<Aggregate>,
    pub invalid: Vec<InvalidRow>,
}

impl ComparisonReport {
    /// True when any run was excluded for failing planning or coverage.
    pub fn flagged(&self) -> bool {
        !self.invalid.is_empty()
    }

    pub fn aggregate(&self, method: Method, n_objects: usize) -> Option<&Aggregate> {
        self.aggregates
            .iter()
            .find(|a| a.method == method.as_str() && a.n_objects == n_objects)
    }
}

fn plan(method: Method, scene: &Scene, options: &ComparisonOptions, tsp: &TspConfig) -> Result<Tour> {
    match method {
        Method::CenterVisit => center_visit(options.start, scene, tsp),
        Method::AlphaFat => alpha_fat_baseline(options.start, scene, options.samples_per_region, tsp),
        Method::Online => {
            let centers: Vec<(String, Point3)> = scene
                .objects()
                .iter()
                .map(|o| (o.id.clone(), o.region.center()))
                .collect();
            let mut oracle = SimulatedOracle::from_scene(scene)?;
            plan_online(
                options.start,
                &centers,
                scene.d_min_global(),
                scene.d_max_global(),
                &mut oracle,
                tsp,
            )
            .map(|(t, _)| t)
        }
    }
}

fn run_cell(
    config: &SceneConfig,
    seed: u64,
    methods: &[Method],
    options: &ComparisonOptions,
) -> Result<Vec<std::result::Result<Row, InvalidRow>>> {
    let scene = generate_scene(&SceneConfig { seed, ..config.clone() })?;
    let tsp = TspConfig { seed, ..options.tsp };
    Ok(methods
        .iter()
        .map(|&m| {
            let t0 = Instant::now();
            let planned = plan(m, &scene, options, &tsp);
            let runtime_s = t0.elapsed().as_secs_f64();
            let invalid = |reason: String| InvalidRow {
                method: m.as_str().into(),
                n_objects: config.n_objects,
                seed,
                reason,
            };
            match planned {
                Err(e) => Err(invalid(e.to_string())),
                Ok(tour) => {
                    let audit = audit_coverage(&scene, &tour);
                    if audit.is_complete() {
                        Ok(Row {
                            method: m.as_str().into(),
                            n_objects: config.n_objects,
                            seed,
                            length_m: tour.length(),
                            runtime_s,
                        })
                    } else {
                        Err(invalid(format!(
                            "coverage audit failed: {} missed, {} bad visits",
                            audit.missing.len(),
                            audit.bad_visits.len()
                        )))
                    }
                }
            }
        })
        .collect())
}

fn aggregate(rows: &[Row]) -> Vec<Aggregate> {
    let mut keys: Vec<(&str, usize)> = Vec::new();
    for r in rows {
        if !keys.contains(&(r.method.as_str(), r.n_objects)) {
            keys.push((r.method.as_str(), r.n_objects));
        }
    }
    keys.into_iter()
        .map(|(method, n)| {
            let group: Vec<&Row> = rows.iter().filter(|r| r.method == method && r.n_objects == n).collect();
            let k = group.len() as f64;
            let mean = group.iter().map(|r| r.length_m).sum::<f64>() / k;
            let std = (group.len() >= 2)
                .then(|| (group.iter().map(|r| (r.length_m - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt());
            Aggregate {
                method: method.to_string(),
                n_objects: n,
                mean_length_m: mean,
                std_length_m: std,
                mean_runtime_s: group.iter().map(|r| r.runtime_s).sum::<f64>() / k,
            }
        })
        .collect()
}

/// Plans every (configuration, seed, method) cell, audits coverage, and
/// aggregates lengths and runtimes per method and object count. Seeds run
/// from each configuration's own seed upward.
pub fn run_comparison(
    configs: &[SceneConfig],
    methods: &[Method],
    seeds: usize,
    options: &ComparisonOptions,
) -> Result<ComparisonReport> {
    for c in configs {
        c.validate()?;
    }
    let cells: Vec<(&SceneConfig, u64)> = configs
        .iter()
        .flat_map(|c| (0..seeds as u64).map(move |s| (c, c.seed.wrapping_add(s))))
        .collect();
    let results: Vec<Result<_>> = if options.threads <= 1 {
        cells.iter().map(|&(c, s)| run_cell(c, s, methods, options)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| {
            cells
                .par_iter()
                .map(|&(c, s)| run_cell(c, s, methods, options))
                .collect()
        })
    };
    let mut report = ComparisonReport::default();
    for cell in results {
        for r in cell? {
            match r {
                Ok(row) => report.rows.push(row),
                Err(bad) => report.invalid.push(bad),
            }
        }
    }
    report.aggregates = aggregate(&report.rows);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_run_single_row() {
        let cfg = SceneConfig::disjoint(10, 5.4, 8.2, 3);
        let r = run_comparison(&[cfg], &[Method::CenterVisit], 1, &ComparisonOptions::default()).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(!r.flagged());
        assert_eq!(r.aggregates[0].std_length_m, None);
        assert_eq!(r.aggregates[0].mean_length_m, r.rows[0].length_m);
    }

    #[test]
    fn aggregates_are_row_means() {
        let cfg = SceneConfig::disjoint(15, 5.4, 8.2, 11);
        let r = run_comparison(&[cfg], &Method::ALL, 3, &ComparisonOptions::default()).unwrap();
        assert_eq!(r.rows.len(), 9);
        for m in Method::ALL {
            let lens: Vec<f64> = r
                .rows
                .iter()
                .filter(|x| x.method == m.as_str())
                .map(|x| x.length_m)
                .collect();
            let mean = lens.iter().sum::<f64>() / 3.0;
            let a = r.aggregate(m, 15).unwrap();
            assert!((a.mean_length_m - mean).abs() <= 1e-12 * mean);
            assert!(a.std_length_m.is_some());
        }
    }

    #[test]
    fn parallel_lengths_match_sequential() {
        let cfg = SceneConfig::disjoint(12, 5.4, 8.2, 5);
        let seq = run_comparison(
            std::slice::from_ref(&cfg),
            &Method::ALL,
            4,
            &ComparisonOptions::default(),
        )
        .unwrap();
        let par = run_comparison(
            &[cfg],
            &Method::ALL,
            4,
            &ComparisonOptions {
                threads: 3,
                ..ComparisonOptions::default()
            },
        )
        .unwrap();
        let strip = |r: &ComparisonReport| {
            r.rows
                .iter()
                .map(|x| (x.method.clone(), x.seed, x.length_m))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&seq), strip(&par));
    }

    #[test]
    fn online_on_overlapping_scene_is_flagged() {
        let cfg = SceneConfig {
            disjoint: false,
            overlap_rate: 0.6,
            ..SceneConfig::disjoint(20, 2.0, 3.0, 2)
        };
        let r = run_comparison(&[cfg], &[Method::Online], 1, &ComparisonOptions::default()).unwrap();
        assert!(r.flagged());
        assert!(r.rows.is_empty());
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("concorde".parse::<Method>().is_err());
    }
}
