use std::path::Path;
use std::process::{Command, Output};

use tspn::bench::{read_scene, read_trajectory, trajectory_from_json as read_trajectory_text};
use tspn::geom::audit_coverage;

fn tspn(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tspn"))
        .current_dir(dir)
        .env_remove("TSPN_THREADS")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_pgm(path: &Path, w: usize, h: usize, pixels: &[u8]) {
    let mut bytes = format!("P5\n{w} {h}\n255\n").into_bytes();
    bytes.extend_from_slice(pixels);
    std::fs::write(path, bytes).unwrap();
}

#[test]
fn plan_then_validate_reports_packing_bound() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let gen = tspn(
        p,
        &[
            "gen-scene",
            "--n",
            "100",
            "--cube-edge",
            "100",
            "--dmin",
            "5.4",
            "--dmax",
            "8.2",
            "--disjoint",
            "--seed",
            "7",
            "--out",
            "scene.json",
        ],
    );
    assert_eq!(gen.status.code(), Some(0));
    let scene = read_scene(&p.join("scene.json")).unwrap();
    assert_eq!(scene.len(), 100);
    assert!(scene.is_pairwise_disjoint());

    let plan = tspn(
        p,
        &[
            "plan",
            "--scene",
            "scene.json",
            "--start",
            "0,0,0",
            "--seed",
            "7",
            "--out",
            "traj.json",
        ],
    );
    assert_eq!(plan.status.code(), Some(0));
    let tour = read_trajectory(&p.join("traj.json")).unwrap();
    assert!(audit_coverage(&scene, &tour).is_complete());

    let v = tspn(
        p,
        &["validate", "--scene", "scene.json", "--traj", "traj.json", "--strict"],
    );
    assert_eq!(v.status.code(), Some(0));
    let text = stdout(&v);
    assert!(text.lines().any(|l| l == "lemma1_holds=true"), "{text}");
    assert!(text.lines().any(|l| l == "coverage_complete=true"));
}

#[test]
fn score_of_constant_image_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    write_pgm(&p.join("view.pgm"), 6, 5, &[140; 30]);
    write_pgm(&p.join("mask.pgm"), 6, 5, &[255; 30]);
    let o = tspn(p, &["score", "--image", "view.pgm", "--mask", "mask.pgm"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.0\n");

    write_pgm(&p.join("small.pgm"), 5, 5, &[0; 25]);
    let o = tspn(p, &["score", "--image", "view.pgm", "--mask", "small.pgm"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let missing_seed = tspn(p, &["gen-scene", "--n", "3", "--dmin", "1", "--dmax", "2"]);
    assert_eq!(missing_seed.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing_seed.stderr).contains("--seed"));

    assert_eq!(
        tspn(p, &["plan", "--scene", "absent.json", "--seed", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(tspn(p, &["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        tspn(p, &["plan", "--scene", "x.json", "--seed", "1", "--bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        tspn(
            p,
            &["gen-scene", "--n", "3", "--dmin", "3", "--dmax", "2", "--seed", "1"]
        )
        .status
        .code(),
        Some(1)
    );
    std::fs::write(p.join("bad.json"), "{}").unwrap();
    assert_eq!(
        tspn(p, &["plan", "--scene", "bad.json", "--seed", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(tspn(p, &["--help"]).status.code(), Some(0));
}

#[test]
fn every_subcommand_has_help() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in [
        "gen-scene",
        "plan",
        "baseline",
        "online",
        "mis",
        "detour",
        "score",
        "region",
        "validate",
        "compare",
    ] {
        let o = tspn(dir.path(), &[cmd, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let text = stdout(&o);
        assert!(text.contains("Usage: tspn"), "{cmd}: {text}");
        assert!(text.contains("--"), "{cmd} lists no flags");
    }
}

#[test]
fn overlapping_scene_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let gen = tspn(
        p,
        &[
            "gen-scene",
            "--n",
            "25",
            "--cube-edge",
            "60",
            "--dmin",
            "3.3",
            "--dmax",
            "5.6",
            "--overlap-rate",
            "0.5",
            "--seed",
            "4",
            "--out",
            "s.json",
        ],
    );
    assert_eq!(gen.status.code(), Some(0));
    let mis = tspn(p, &["mis", "--scene", "s.json"]);
    let mis: serde_json::Value = serde_json::from_slice(&mis.stdout).unwrap();
    let removed = mis["assignment"].as_object().unwrap();
    assert!(!removed.is_empty());
    let keeper = removed.values().next().unwrap().as_str().unwrap().to_string();

    let plan = tspn(
        p,
        &[
            "plan",
            "--scene",
            "s.json",
            "--seed",
            "4",
            "--out",
            "t.json",
            "--detours",
            "d.json",
        ],
    );
    assert_eq!(plan.status.code(), Some(0));
    let detours: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p.join("d.json")).unwrap()).unwrap();
    assert!(!detours.as_array().unwrap().is_empty());
    let v = tspn(p, &["validate", "--scene", "s.json", "--traj", "t.json"]);
    assert!(stdout(&v).contains("coverage_complete=true"));
    assert!(stdout(&v).contains("lemma1_holds=n/a"));

    let d = tspn(p, &["detour", "--scene", "s.json", "--object", &keeper]);
    assert_eq!(d.status.code(), Some(0));
    let plan: serde_json::Value = serde_json::from_slice(&d.stdout).unwrap();
    assert_eq!(plan["owner_id"], keeper.as_str());
    assert!(plan["length"].as_f64().unwrap() > 0.0);
    assert_eq!(
        tspn(p, &["detour", "--scene", "s.json", "--object", "nobody"])
            .status
            .code(),
        Some(1)
    );

    // Overlapping regions violate the online planner's separation contract.
    assert_eq!(
        tspn(p, &["online", "--scene", "s.json", "--seed", "1"]).status.code(),
        Some(1)
    );
}

#[test]
fn baseline_and_online_write_trajectories() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    tspn(
        p,
        &[
            "gen-scene",
            "--n",
            "20",
            "--dmin",
            "5.4",
            "--dmax",
            "8.2",
            "--disjoint",
            "--seed",
            "2",
            "--out",
            "s.json",
        ],
    );
    let scene = read_scene(&p.join("s.json")).unwrap();
    for (args, name) in [
        (
            vec![
                "baseline",
                "--scene",
                "s.json",
                "--seed",
                "2",
                "--samples",
                "50",
                "--out",
                "b.json",
            ],
            "b.json",
        ),
        (
            vec!["online", "--scene", "s.json", "--seed", "2", "--out", "o.json"],
            "o.json",
        ),
    ] {
        let o = tspn(p, &args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let t = read_trajectory(&p.join(name)).unwrap();
        assert!(audit_coverage(&scene, &t).is_complete(), "{args:?}");
    }
    // Drawn diameters replace the scene's regions, so only detection is checked.
    let o = tspn(p, &["online", "--scene", "s.json", "--seed", "2", "--random-diameters"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("detected 20 of 20"));
    assert_eq!(read_trajectory_text(&stdout(&o)).unwrap().visits.len(), 20);
}

#[test]
fn region_from_score_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let mut csv = String::from("azimuth_rad,elevation_rad,distance_m,score\n");
    for i in 0..24 {
        for j in -2..=2 {
            let az = i as f64 * std::f64::consts::PI / 12.0;
            let el = j as f64 * 0.5;
            let score = if i < 3 { 0.1 } else { 0.6 };
            csv.push_str(&format!("{az},{el},4.0,{score}\n"));
        }
    }
    std::fs::write(p.join("scores.csv"), csv).unwrap();
    let o = tspn(
        p,
        &[
            "region",
            "--scores",
            "scores.csv",
            "--center",
            "10,10,10",
            "--out",
            "r.json",
        ],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let scene = read_scene(&p.join("r.json")).unwrap();
    let r = &scene.objects()[0].region;
    assert!(r.d_max() <= 8.0 + 1e-9 && r.d_min() <= r.d_max());

    let o = tspn(p, &["region", "--scores", "scores.csv", "--threshold", "0.9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at least 8"));
}

#[test]
fn compare_writes_reports_and_honors_thread_cap() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let o = tspn(
        p,
        &[
            "compare",
            "--profile",
            "chair",
            "--n",
            "10",
            "--seeds",
            "2",
            "--seed",
            "3",
            "--out",
            "rows.csv",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let agg = stdout(&o);
    assert!(agg.starts_with("method,n_objects,mean_length_m,std_length_m,mean_runtime_s\n"));
    assert_eq!(agg.lines().count(), 3);
    let rows = std::fs::read_to_string(p.join("rows.csv")).unwrap();
    assert!(rows.starts_with("method,n_objects,seed,length_m,runtime_s\n"));
    assert_eq!(rows.lines().count(), 5);

    let capped = Command::new(env!("CARGO_BIN_EXE_tspn"))
        .current_dir(p)
        .env("TSPN_THREADS", "zero")
        .args(["compare", "--profile", "car", "--n", "5", "--seeds", "1", "--seed", "1"])
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    assert_eq!(tspn(p, &["compare", "--n", "5", "--seed", "1"]).status.code(), Some(1));
}
