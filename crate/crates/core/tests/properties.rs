mod common;

use proptest::prelude::*;

use tspn::geom::{
    closest_point_on_region, fibonacci_sphere, polyline_touches, regions_intersect, tour_length, Point3, Region,
    SceneObject, Tour,
};
use tspn::planner::{build_detour_default, maximal_independent_set};
use tspn::tsp::{cycle_length, exact_order, heuristic_order, TspConfig};

fn point(range: f64) -> impl Strategy<Value = Point3> {
    (-range..range, -range..range, -range..range).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

fn unit() -> impl Strategy<Value = Point3> {
    point(1.0).prop_filter_map("non-degenerate direction", |v| {
        let n = v.norm();
        (n > 0.1 && n <= 1.0).then(|| v / n)
    })
}

fn exact_region() -> impl Strategy<Value = Region> {
    prop_oneof![
        (point(5.0), 0.5..4.0).prop_map(|(c, d)| Region::sphere(c, d).unwrap()),
        (point(5.0), 0.5..3.0, 0.1..2.0).prop_map(|(c, inner, extra)| Region::shell(c, inner, inner + extra).unwrap()),
    ]
}

/// Rotation about `axis` by `angle`, via Rodrigues' formula.
fn rotate(p: Point3, axis: Point3, angle: f64) -> Point3 {
    let (s, c) = angle.sin_cos();
    p * c + axis.cross(p) * s + axis * (axis.dot(p) * (1.0 - c))
}

/// Ellipsoid with semi-axes `(a, b, c)` as a sampled boundary with normals.
fn sampled_ellipsoid(center: Point3, (a, b, c): (f64, f64, f64)) -> Region {
    let dirs = fibonacci_sphere(2000);
    let points = dirs
        .iter()
        .map(|u| center + Point3::new(a * u.x, b * u.y, c * u.z))
        .collect();
    let normals = dirs
        .iter()
        .map(|u| Point3::new(u.x / a, u.y / b, u.z / c).normalized().unwrap())
        .collect();
    let d_min = 2.0 * a.min(b).min(c);
    let d_max = 2.0 * a.max(b).max(c);
    Region::sampled_about(center, points, normals, d_min, d_max).unwrap()
}

/// Whether the two ellipsoids share a voxel center on a grid of spacing `h`.
fn voxels_overlap(c1: Point3, c2: Point3, axes: (f64, f64, f64), h: f64) -> bool {
    let (a, b, c) = axes;
    let inside = |p: Point3, o: Point3| {
        let d = p - o;
        (d.x / a).powi(2) + (d.y / b).powi(2) + (d.z / c).powi(2) <= 1.0
    };
    let lo = Point3::new(c1.x.min(c2.x) - a, c1.y.min(c2.y) - b, c1.z.min(c2.z) - c);
    let hi = Point3::new(c1.x.max(c2.x) + a, c1.y.max(c2.y) + b, c1.z.max(c2.z) + c);
    let steps = |l: f64, u: f64| ((u - l) / h).ceil() as usize + 1;
    for i in 0..steps(lo.x, hi.x) {
        for j in 0..steps(lo.y, hi.y) {
            for k in 0..steps(lo.z, hi.z) {
                let p = lo + Point3::new(i as f64, j as f64, k as f64) * h;
                if inside(p, c1) && inside(p, c2) {
                    return true;
                }
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_is_symmetric(a in exact_region(), b in exact_region()) {
        prop_assert_eq!(regions_intersect(&a, &b), regions_intersect(&b, &a));
    }

    #[test]
    fn sphere_intersection_matches_center_distance(ca in point(5.0), cb in point(5.0), da in 0.5..4.0f64, db in 0.5..4.0f64) {
        let gap: f64 = ca.distance(cb) - (da + db) / 2.0;
        prop_assume!(gap.abs() > 1e-9);
        let a = Region::sphere(ca, da).unwrap();
        let b = Region::sphere(cb, db).unwrap();
        prop_assert_eq!(regions_intersect(&a, &b), gap < 0.0);
    }

    #[test]
    fn closest_point_is_on_sphere_and_no_sample_is_closer(c in point(5.0), d in 0.5..4.0f64, p in point(10.0)) {
        let r = Region::sphere(c, d).unwrap();
        prop_assume!(p.distance(c) > d / 2.0 + 1e-6);
        let q = closest_point_on_region(&r, p).unwrap();
        prop_assert!((q.distance(c) - d / 2.0).abs() < 1e-9);
        for u in fibonacci_sphere(500) {
            prop_assert!(p.distance(q) <= p.distance(c + u * (d / 2.0)) + 1e-9);
        }
    }

    #[test]
    fn tour_length_survives_rigid_motion_and_reversal(
        pts in prop::collection::vec(point(20.0), 2..20),
        closed in any::<bool>(),
        shift in point(50.0),
        axis in unit(),
        angle in -3.2..3.2f64,
    ) {
        let tour = if closed { Tour::closed(pts.clone()) } else { Tour::open(pts.clone()) };
        let moved_pts: Vec<Point3> = pts.iter().map(|&p| rotate(p, axis, angle) + shift).collect();
        let moved = if closed { Tour::closed(moved_pts) } else { Tour::open(moved_pts) };
        let l = tour_length(&tour);
        prop_assert!((tour_length(&moved) - l).abs() <= 1e-9 * (1.0 + l));
        prop_assert!((tour_length(&tour.reversed()) - l).abs() <= 1e-9 * (1.0 + l));
    }

    #[test]
    fn heuristic_order_is_a_permutation(pts in prop::collection::vec(point(50.0), 0..40), seed in any::<u64>()) {
        let mut order = heuristic_order(&pts, &TspConfig::with_seed(seed));
        order.sort_unstable();
        prop_assert_eq!(order, (0..pts.len()).collect::<Vec<_>>());
    }

    #[test]
    fn exact_optimum_ignores_input_order_and_motion(
        pts in prop::collection::vec(point(50.0), 1..9),
        rot in 0usize..9,
        shift in point(50.0),
        axis in unit(),
        angle in -3.2..3.2f64,
    ) {
        let best = cycle_length(&pts, &exact_order(&pts, 12).unwrap());
        let mut shuffled = pts.clone();
        shuffled.rotate_left(rot % pts.len());
        shuffled.reverse();
        let moved: Vec<Point3> = shuffled.iter().map(|&p| rotate(p, axis, angle) + shift).collect();
        let again = cycle_length(&moved, &exact_order(&moved, 12).unwrap());
        prop_assert!((again - best).abs() <= 1e-9 * (1.0 + best));
        let heur = cycle_length(&pts, &heuristic_order(&pts, &TspConfig::default()));
        prop_assert!(heur >= best - 1e-9 * (1.0 + best));
    }

    #[test]
    fn mis_is_independent_and_maximal(
        spheres in prop::collection::vec((point(15.0), 2.0..4.0), 1..30),
    ) {
        let scene = common::sphere_scene(&spheres, 2.0, 4.0);
        let mis = maximal_independent_set(&scene);
        let meet = |a: &str, b: &str| {
            let (ra, rb) = (&scene.object(a).unwrap().region, &scene.object(b).unwrap().region);
            let (i, j) = (&spheres[a[1..].parse::<usize>().unwrap()], &spheres[b[1..].parse::<usize>().unwrap()]);
            ra.center().distance(rb.center()) <= (i.1 + j.1) / 2.0
        };
        for (k, a) in mis.kept.iter().enumerate() {
            for b in &mis.kept[k + 1..] {
                prop_assert!(!meet(a, b), "kept {} and {} intersect", a, b);
            }
        }
        for (removed, keeper) in &mis.assignment {
            prop_assert!(meet(removed, keeper));
            // The keeper was chosen first: no larger than the removed region.
            let d = |id: &str| spheres[id[1..].parse::<usize>().unwrap()].1;
            prop_assert!(d(keeper) <= d(removed));
        }
        prop_assert_eq!(mis.kept.len() + mis.assignment.len(), scene.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sampled_ellipsoids_match_voxel_oracle(dir in unit(), scale in 0.2..3.0f64) {
        let axes = (3.0, 2.0, 1.5);
        let d_min = 3.0;
        let c1 = Point3::new(1.0, -2.0, 0.5);
        // Translated copies meet exactly when half the offset lies inside
        // the ellipsoid; `scale` is that half-offset's ellipsoidal norm.
        let unit_norm = ((dir.x / axes.0).powi(2) + (dir.y / axes.1).powi(2) + (dir.z / axes.2).powi(2)).sqrt();
        let offset = dir * (2.0 * scale / unit_norm);
        prop_assume!((scale - 1.0).abs() > 0.15);
        let c2 = c1 + offset;
        let a = sampled_ellipsoid(c1, axes);
        let b = sampled_ellipsoid(c2, axes);
        let oracle = voxels_overlap(c1, c2, axes, 0.05 * d_min);
        prop_assert_eq!(oracle, scale < 1.0);
        prop_assert_eq!(regions_intersect(&a, &b), oracle);
        prop_assert_eq!(regions_intersect(&b, &a), oracle);
    }

    #[test]
    fn detour_touches_random_tangent_balls(
        ratio in 1.0..3.0f64,
        dirs in prop::collection::vec(unit(), 5..11),
        depth in prop::collection::vec(0.0..1.0f64, 11),
    ) {
        let d_min = 2.0;
        let d_max = ratio * d_min;
        let owner = SceneObject {
            id: "owner".into(),
            region: Region::sphere(Point3::ORIGIN, d_max).unwrap(),
        };
        let plan = build_detour_default(&owner, d_min).unwrap();
        for (u, t) in dirs.iter().zip(&depth) {
            // From tangent (t = 0) to centered on the owner's surface (t = 1).
            let dist = (d_max + d_min) / 2.0 - t * d_min / 2.0;
            let ball = Region::sphere(*u * dist, d_min).unwrap();
            prop_assert!(polyline_touches(&ball, &plan.stitched, ball.touch_tolerance(d_min)));
        }
    }
}

#[test]
fn halfway_overlap_of_sampled_copies() {
    let axes = (3.0, 2.0, 1.5);
    let a = sampled_ellipsoid(Point3::ORIGIN, axes);
    let b = a.translated(Point3::new(3.0, 0.0, 0.0));
    assert!(voxels_overlap(Point3::ORIGIN, Point3::new(3.0, 0.0, 0.0), axes, 0.15));
    assert!(regions_intersect(&a, &b));
    let far = a.translated(Point3::new(6.6, 0.0, 0.0));
    assert!(!voxels_overlap(Point3::ORIGIN, Point3::new(6.6, 0.0, 0.0), axes, 0.15));
    assert!(!regions_intersect(&a, &far));
}
