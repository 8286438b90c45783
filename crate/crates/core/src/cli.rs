//! The `tspn` command-line front end.
//!
//! Exit status is 0 on success, 1 for contract and usage errors and 2 for
//! I/O failures.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{
    generate_scene, profile, read_scene, read_trajectory, run_comparison, scene_to_json, trajectory_to_json,
    write_aggregates_csv, write_rows_csv, ComparisonOptions, Method, SceneConfig, PROFILES,
};
use crate::error::{Error, Result};
use crate::geom::{audit_coverage, Point3, Scene, SceneObject};
use crate::planner::{
    alpha_fat_baseline, build_detour, build_detour_default, maximal_independent_set, plan_nondisjoint_with_detours,
    plan_online, validate_bounds, DetourPlan, SimulatedOracle, DEFAULT_SAMPLES_PER_REGION,
};
use crate::tsp::{Solver, TspConfig};
use crate::viewscore::{
    build_region_from_scores, read_mask_pgm, read_pgm, read_scores_csv, viewing_score, DEFAULT_EDGE_FRACTION,
    DEFAULT_THRESHOLD,
};

/// Environment variable capping the worker threads used by `compare`.
pub const THREADS_ENV: &str = "TSPN_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "tspn",
    version,
    about = "Plan short tours through diameter-bounded 3D detection regions",
    long_about = "Plan short tours through diameter-bounded 3D detection regions.\n\n\
Scenes and trajectories are JSON files; reports and score tables are CSV; \
images and masks are binary PGM (P5). Points are written `x,y,z` in meters.\n\n\
Exit status: 0 success, 1 contract or usage error, 2 I/O error."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random scene of spherical regions inside a cube.
    GenScene(GenSceneArgs),
    /// Plan a tour with center-visit, adding detours when regions overlap.
    Plan(PlanArgs),
    /// Plan a tour with the alpha-fat sampling baseline.
    Baseline(BaselineArgs),
    /// Simulate the online hollow-ball planner on a disjoint scene.
    Online(OnlineArgs),
    /// Print the greedy maximal independent set of a scene as JSON.
    Mis(MisArgs),
    /// Build the detour around one region and write it as JSON.
    Detour(DetourArgs),
    /// Print the viewing score of a grayscale image under an object mask.
    Score(ScoreArgs),
    /// Build a sampled region from a table of scored views.
    Region(RegionArgs),
    /// Check a trajectory against a scene and print the bound report.
    Validate(ValidateArgs),
    /// Run the random-scene comparison between planners.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolverArg {
    Exact,
    Heuristic,
}

#[derive(Debug, Args)]
struct TspArgs {
    /// Point-TSP solver used to order region centers.
    #[arg(long, value_enum, default_value = "heuristic")]
    solver: SolverArg,
    /// Largest instance the exact solver accepts (at most 13).
    #[arg(long, default_value_t = 12)]
    exact_max_n: usize,
}

impl TspArgs {
    fn config(&self, seed: u64) -> Result<TspConfig> {
        let config = TspConfig {
            solver: match self.solver {
                SolverArg::Exact => Solver::Exact,
                SolverArg::Heuristic => Solver::Heuristic,
            },
            exact_max_n: self.exact_max_n,
            seed,
            ..TspConfig::default()
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Args)]
struct GenSceneArgs {
    /// Number of objects.
    #[arg(long)]
    n: usize,
    /// Cube edge length in meters.
    #[arg(long, default_value_t = 100.0)]
    cube_edge: f64,
    /// Smallest region diameter in meters.
    #[arg(long)]
    dmin: f64,
    /// Largest region diameter in meters.
    #[arg(long)]
    dmax: f64,
    /// Keep every pair of centers more than dmax apart.
    #[arg(long)]
    disjoint: bool,
    /// Fraction of objects placed to overlap an earlier one (non-disjoint scenes).
    #[arg(long, default_value_t = 0.0)]
    overlap_rate: f64,
    #[arg(long)]
    seed: u64,
    /// Scene JSON output; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PlanArgs {
    /// Scene JSON file.
    #[arg(long)]
    scene: PathBuf,
    /// Start position `x,y,z`.
    #[arg(long, default_value = "0,0,0")]
    start: Point3,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    tsp: TspArgs,
    /// Trajectory JSON output; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the detours used for overlapping regions as JSON.
    #[arg(long)]
    detours: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BaselineArgs {
    /// Scene JSON file.
    #[arg(long)]
    scene: PathBuf,
    /// Start position `x,y,z`.
    #[arg(long, default_value = "0,0,0")]
    start: Point3,
    /// Boundary samples per region.
    #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_REGION)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    tsp: TspArgs,
    /// Trajectory JSON output; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OnlineArgs {
    /// Scene JSON file; regions must be pairwise more than d_max apart.
    #[arg(long)]
    scene: PathBuf,
    /// Start position `x,y,z`.
    #[arg(long, default_value = "0,0,0")]
    start: Point3,
    #[arg(long)]
    seed: u64,
    /// Draw detection diameters uniformly in [d_min, d_max] from the seed
    /// instead of reading them from the scene's regions.
    #[arg(long)]
    random_diameters: bool,
    #[command(flatten)]
    tsp: TspArgs,
    /// Trajectory JSON output; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MisArgs {
    /// Scene JSON file.
    #[arg(long)]
    scene: PathBuf,
    /// JSON output `{"kept": [...], "assignment": {removed: keeper}}`; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DetourArgs {
    /// Scene JSON file.
    #[arg(long)]
    scene: PathBuf,
    /// Id of the region to go around.
    #[arg(long)]
    object: String,
    /// Sampling step along each perimeter in meters; defaults to d_min/32.
    #[arg(long)]
    perimeter_step: Option<f64>,
    /// Arc length between spikes in meters; no spikes when omitted.
    #[arg(long)]
    spike_spacing: Option<f64>,
    /// Detour JSON output; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    /// Grayscale P5 image.
    #[arg(long)]
    image: PathBuf,
    /// P5 mask of the same size; nonzero pixels belong to the object.
    #[arg(long)]
    mask: PathBuf,
    /// Edge pixels have gradient magnitude at least this fraction of the maximum.
    #[arg(long, default_value_t = DEFAULT_EDGE_FRACTION)]
    edge_fraction: f64,
}

#[derive(Debug, Args)]
struct RegionArgs {
    /// CSV with header `azimuth_rad,elevation_rad,distance_m,score`.
    #[arg(long)]
    scores: PathBuf,
    /// Object center `x,y,z`.
    #[arg(long, default_value = "0,0,0")]
    center: Point3,
    /// Views scoring at least this value form the region.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Object id in the output scene.
    #[arg(long, default_value = "obj0000")]
    id: String,
    /// Cube edge recorded in the output scene, in meters.
    #[arg(long, default_value_t = 100.0)]
    cube_edge: f64,
    /// One-object scene JSON output; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Scene JSON file.
    #[arg(long)]
    scene: PathBuf,
    /// Trajectory JSON file.
    #[arg(long)]
    traj: PathBuf,
    /// Exit 1 when coverage is incomplete or any applicable bound fails.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Object profile supplying default diameters.
    #[arg(long, value_parser = profile_names())]
    profile: Option<String>,
    /// Smallest region diameter in meters; overrides the profile.
    #[arg(long)]
    dmin: Option<f64>,
    /// Largest region diameter in meters; overrides the profile.
    #[arg(long)]
    dmax: Option<f64>,
    /// Object counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "100")]
    n: Vec<usize>,
    /// Cube edge length in meters.
    #[arg(long, default_value_t = 100.0)]
    cube_edge: f64,
    /// Seeds per object count; seeds run upward from --seed.
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    #[arg(long)]
    seed: u64,
    /// Methods, comma separated: center-visit, alpha-fat, online.
    #[arg(long, value_delimiter = ',', default_value = "center-visit,alpha-fat")]
    methods: Vec<Method>,
    /// Boundary samples per region for alpha-fat.
    #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_REGION)]
    samples: usize,
    /// Start position `x,y,z`.
    #[arg(long, default_value = "0,0,0")]
    start: Point3,
    /// Worker threads; defaults to the available cores, capped by TSPN_THREADS.
    #[arg(long)]
    threads: Option<usize>,
    /// Per-run CSV `method,n_objects,seed,length_m,runtime_s`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Aggregate CSV `method,n_objects,mean_length_m,std_length_m,mean_runtime_s`;
    /// printed to standard output when omitted.
    #[arg(long)]
    aggregates: Option<PathBuf>,
}

fn profile_names() -> clap::builder::PossibleValuesParser {
    clap::builder::PossibleValuesParser::new(PROFILES.iter().map(|p| p.name))
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return 1;
            }
            let _ = write!(stdout, "{text}");
            return 0;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_io() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match command {
        Command::GenScene(a) => {
            let scene = generate_scene(&SceneConfig {
                n_objects: a.n,
                cube_edge: a.cube_edge,
                d_min: a.dmin,
                d_max: a.dmax,
                disjoint: a.disjoint,
                overlap_rate: a.overlap_rate,
                seed: a.seed,
            })?;
            emit(a.out.as_deref(), &scene_to_json(&scene)?, stdout)?;
        }
        Command::Plan(a) => {
            let scene = read_scene(&a.scene)?;
            let (tour, detours) = plan_nondisjoint_with_detours(a.start, &scene, &a.tsp.config(a.seed)?)?;
            emit(a.out.as_deref(), &trajectory_to_json(&tour)?, stdout)?;
            if let Some(path) = a.detours.as_deref() {
                emit(Some(path), &to_json(&detours)?, stdout)?;
            }
        }
        Command::Baseline(a) => {
            let scene = read_scene(&a.scene)?;
            let tour = alpha_fat_baseline(a.start, &scene, a.samples, &a.tsp.config(a.seed)?)?;
            emit(a.out.as_deref(), &trajectory_to_json(&tour)?, stdout)?;
        }
        Command::Online(a) => {
            let scene = read_scene(&a.scene)?;
            let centers: Vec<(String, Point3)> = scene
                .objects()
                .iter()
                .map(|o| (o.id.clone(), o.region.center()))
                .collect();
            let mut oracle = if a.random_diameters {
                SimulatedOracle::from_seed(&centers, scene.d_min_global(), scene.d_max_global(), a.seed)
            } else {
                SimulatedOracle::from_scene(&scene)?
            };
            let (tour, outcomes) = plan_online(
                a.start,
                &centers,
                scene.d_min_global(),
                scene.d_max_global(),
                &mut oracle,
                &a.tsp.config(a.seed)?,
            )?;
            emit(a.out.as_deref(), &trajectory_to_json(&tour)?, stdout)?;
            writeln!(stderr, "detected {} of {} objects", outcomes.len(), scene.len())?;
        }
        Command::Mis(a) => {
            #[derive(Serialize)]
            struct MisFile<'a> {
                kept: &'a [String],
                assignment: &'a std::collections::BTreeMap<String, String>,
            }
            let scene = read_scene(&a.scene)?;
            let mis = maximal_independent_set(&scene);
            let file = MisFile {
                kept: &mis.kept,
                assignment: &mis.assignment,
            };
            emit(a.out.as_deref(), &to_json(&file)?, stdout)?;
        }
        Command::Detour(a) => {
            let scene = read_scene(&a.scene)?;
            let owner = scene
                .object(&a.object)
                .ok_or_else(|| Error::UnknownObject(a.object.clone()))?;
            let plan: DetourPlan = match (a.perimeter_step, a.spike_spacing) {
                (None, None) => build_detour_default(owner, scene.d_min_global())?,
                (step, spacing) => build_detour(
                    owner,
                    scene.d_min_global(),
                    step.unwrap_or(scene.d_min_global() / 32.0),
                    spacing.unwrap_or(f64::INFINITY),
                )?,
            };
            emit(a.out.as_deref(), &to_json(&plan)?, stdout)?;
        }
        Command::Score(a) => {
            let image = read_pgm(open(&a.image)?)?;
            let mask = read_mask_pgm(open(&a.mask)?)?;
            let s = viewing_score(&image, &mask, a.edge_fraction)?;
            writeln!(stdout, "{s:?}")?;
        }
        Command::Region(a) => {
            let samples = read_scores_csv(open(&a.scores)?)?;
            let region = build_region_from_scores(a.center, &samples, a.threshold)?;
            let (d_min, d_max) = (region.d_min(), region.d_max());
            let scene = Scene::new(vec![SceneObject { id: a.id, region }], d_min, d_max, a.cube_edge)?;
            emit(a.out.as_deref(), &scene_to_json(&scene)?, stdout)?;
        }
        Command::Validate(a) => return validate(&a, stdout),
        Command::Compare(a) => return compare(a, stdout, stderr),
    }
    Ok(0)
}

fn validate(a: &ValidateArgs, stdout: &mut dyn Write) -> Result<i32> {
    let scene = read_scene(&a.scene)?;
    let tour = read_trajectory(&a.traj)?;
    let audit = audit_coverage(&scene, &tour);
    let mis = maximal_independent_set(&scene);
    let mut detours = Vec::new();
    for keeper in &mis.kept {
        if !mis.neighbors_of(keeper).is_empty() {
            let owner = scene.object(keeper).expect("kept ids come from the scene");
            detours.push(build_detour_default(owner, scene.d_min_global())?);
        }
    }
    let report = validate_bounds(&scene, &tour, &detours);
    let opt = |v: Option<bool>| v.map_or("n/a".to_string(), |b| b.to_string());
    writeln!(stdout, "n_objects={}", report.n_objects)?;
    writeln!(stdout, "length_m={}", report.length)?;
    writeln!(stdout, "coverage_complete={}", audit.is_complete())?;
    if !audit.missing.is_empty() {
        writeln!(stdout, "missing={}", audit.missing.join(","))?;
    }
    if !audit.bad_visits.is_empty() {
        writeln!(stdout, "bad_visits={}", audit.bad_visits.join(","))?;
    }
    writeln!(stdout, "lemma1_bound={}", report.lemma1_bound)?;
    writeln!(stdout, "lemma1_holds={}", opt(report.lemma1_holds))?;
    for d in &report.detour_bounds {
        writeln!(
            stdout,
            "detour {} limit_m={} actual_m={} holds={}",
            d.owner_id, d.limit, d.actual, d.holds
        )?;
    }
    writeln!(stdout, "online_lower_bound_m={}", report.online_lower_bound)?;
    writeln!(stdout, "online_holds={}", report.online_holds)?;
    writeln!(
        stdout,
        "theorem_factor={}",
        report.theorem_factor.map_or("n/a".to_string(), |f| f.to_string())
    )?;
    let ok = audit.is_complete()
        && report.lemma1_holds != Some(false)
        && report.detour_bounds.iter().all(|d| d.holds)
        && report.online_holds;
    Ok(if a.strict && !ok { 1 } else { 0 })
}

fn compare(a: CompareArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let prof = a
        .profile
        .as_deref()
        .map(|name| profile(name).expect("clap restricts profile names"));
    let d_min = a.dmin.or(prof.map(|p| p.d_min));
    let d_max = a.dmax.or(prof.map(|p| p.d_max));
    let (Some(d_min), Some(d_max)) = (d_min, d_max) else {
        return Err(Error::InvalidConfig("give --profile or both --dmin and --dmax".into()));
    };
    if a.seeds == 0 {
        return Err(Error::InvalidConfig("--seeds must be at least 1".into()));
    }
    let configs: Vec<SceneConfig> =
        a.n.iter()
            .map(|&n| SceneConfig {
                cube_edge: a.cube_edge,
                ..SceneConfig::disjoint(n, d_min, d_max, a.seed)
            })
            .collect();
    let options = ComparisonOptions {
        start: a.start,
        samples_per_region: a.samples,
        tsp: TspConfig::default(),
        threads: thread_count(a.threads)?,
    };
    let report = run_comparison(&configs, &a.methods, a.seeds, &options)?;
    if let Some(path) = a.out.as_deref() {
        write_rows_csv(create(path)?, &report.rows)?;
    }
    match a.aggregates.as_deref() {
        Some(path) => write_aggregates_csv(create(path)?, &report.aggregates)?,
        None => write_aggregates_csv(&mut *stdout, &report.aggregates)?,
    }
    for bad in &report.invalid {
        writeln!(
            stderr,
            "invalid run: method={} n={} seed={}: {}",
            bad.method, bad.n_objects, bad.seed, bad.reason
        )?;
    }
    Ok(if report.flagged() { 1 } else { 0 })
}

fn thread_count(requested: Option<usize>) -> Result<usize> {
    let cap = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "{THREADS_ENV} must be a positive integer, got `{v}`"
                )))
            }
        },
        Err(_) => None,
    };
    let wanted = match requested {
        Some(0) => return Err(Error::InvalidConfig("--threads must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    Ok(cap.map_or(wanted, |c| wanted.min(c)))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn open(path: &Path) -> Result<io::BufReader<File>> {
    Ok(io::BufReader::new(File::open(path)?))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}
