#![allow(dead_code)]

use tspn::geom::{Point3, Region, Scene, SceneObject};
use tspn::viewscore::{GrayImage, ObjectMask};

pub fn sphere_scene(spheres: &[(Point3, f64)], d_min: f64, d_max: f64) -> Scene {
    let objects = spheres
        .iter()
        .enumerate()
        .map(|(i, &(c, d))| SceneObject {
            id: format!("s{i:02}"),
            region: Region::sphere(c, d).unwrap(),
        })
        .collect();
    Scene::new(objects, d_min, d_max, 100.0).unwrap()
}

/// A 362×3 strip whose 360 interior Sobel gradients point into 360
/// distinct one-degree bins, each at the bin's center angle.
///
/// Columns are built left to right. With top, middle and bottom rows
/// `T = c - d/2`, `M = (s - 255)/2`, `B = c + d/2`, the gradient at column
/// `x` is `g_x = s[x+1] - s[x-1]` and `g_y = d[x-1] + 2 d[x] + d[x+1]`, so
/// each new column fixes one gradient exactly. Angles and magnitudes are
/// chosen greedily to keep pixels near mid-gray.
pub fn uniform_orientation_image() -> GrayImage {
    const W: usize = 362;
    let mut s = vec![510.0; W];
    let mut d = vec![0.0; W];
    let mut unused: Vec<bool> = vec![true; 360];
    for x in 1..=360 {
        let q = d[x - 1] + 2.0 * d[x];
        let mut best: Option<(f64, usize, f64, f64)> = None;
        for b in (0..360).filter(|&b| unused[b]) {
            let th = (b as f64 + 0.5).to_radians();
            for m in [2.0, 5.0, 10.0, 20.0, 40.0, 60.0, 80.0] {
                let dn = m * th.sin() - q;
                let sn = s[x - 1] + m * th.cos();
                let mut cost = dn.abs() / 100.0 + (sn - 510.0).abs() / 200.0;
                if dn.abs() > 120.0 || (sn - 510.0).abs() > 240.0 {
                    cost += 1000.0;
                }
                if best.is_none_or(|bst| cost < bst.0) {
                    best = Some((cost, b, dn, sn));
                }
            }
        }
        let (_, b, dn, sn) = best.unwrap();
        unused[b] = false;
        d[x + 1] = dn;
        s[x + 1] = sn;
    }
    let mut pixels = vec![0.0; 3 * W];
    for x in 0..W {
        pixels[x] = 127.5 - d[x] / 2.0;
        pixels[W + x] = (s[x] - 255.0) / 2.0;
        pixels[2 * W + x] = 127.5 + d[x] / 2.0;
    }
    GrayImage::new(W, 3, pixels).unwrap()
}

/// Mask whose first `count` pixels in row-major order are object pixels.
pub fn prefix_mask(width: usize, height: usize, count: usize) -> ObjectMask {
    ObjectMask::new(width, height, (0..width * height).map(|i| i < count).collect()).unwrap()
}
