//! Euclidean point-tour solvers.
//!
//! [`exact_tour`] is a Held-Karp dynamic program for small inputs and serves
//! as the optimality oracle. [`heuristic_tour`] builds a nearest-neighbor tour
//! from the first point and improves it with 2-opt and Or-opt; small
//! instances additionally get seeded double-bridge restarts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point3, Tour, Visit};

/// Hard ceiling on `exact_max_n`; the subset table grows as `2^(n-1) · n`.
pub const EXACT_HARD_LIMIT: usize = 13;

/// Instances up to this size get seeded perturbation restarts after the
/// initial local search.
pub const KICK_MAX_N: usize = 64;

/// Number of double-bridge restarts on small instances.
pub const KICKS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TspConfig {
    pub solver: Solver,
    pub exact_max_n: usize,
    pub two_opt_max_passes: usize,
    pub seed: u64,
}

impl Default for TspConfig {
    fn default() -> Self {
        TspConfig {
            solver: Solver::Heuristic,
            exact_max_n: 12,
            two_opt_max_passes: 50,
            seed: 0,
        }
    }
}

impl TspConfig {
    pub fn with_seed(seed: u64) -> Self {
        TspConfig {
            seed,
            ..TspConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.exact_max_n > EXACT_HARD_LIMIT {
            return Err(Error::InvalidConfig(format!(
                "exact_max_n {} exceeds {EXACT_HARD_LIMIT}",
                self.exact_max_n
            )));
        }
        if self.two_opt_max_passes == 0 {
            return Err(Error::InvalidConfig("two_opt_max_passes must be at least 1".into()));
        }
        Ok(())
    }
}

fn distance_matrix(points: &[Point3]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|&p| points.iter().map(|&q| p.distance(q)).collect())
        .collect()
}

/// Length of the closed cycle visiting `points` in `order`.
pub fn cycle_length(points: &[Point3], order: &[usize]) -> f64 {
    if order.len() < 2 {
        return 0.0;
    }
    let mut sum = 0.0;
    for w in order.windows(2) {
        sum += points[w[0]].distance(points[w[1]]);
    }
    sum + points[order[order.len() - 1]].distance(points[order[0]])
}

fn ties(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Optimal cyclic order starting at point 0. Among optimal orders the
/// lexicographically smallest permutation is returned.
pub fn exact_order(points: &[Point3], limit: usize) -> Result<Vec<usize>> {
    let n = points.len();
    let limit = limit.min(EXACT_HARD_LIMIT);
    if n > limit {
        return Err(Error::SizeLimit { n, limit });
    }
    if n <= 3 {
        return Ok((0..n).collect());
    }
    let d = distance_matrix(points);
    // Vertices 1..n map to bits 0..m. cost[s][j]: shortest path that starts
    // at vertex j+1, visits every vertex of s, and returns to vertex 0.
    let m = n - 1;
    let full = (1usize << m) - 1;
    let mut cost = vec![vec![f64::INFINITY; m]; 1 << m];
    for j in 0..m {
        cost[0][j] = d[j + 1][0];
    }
    for s in 1..=full {
        for j in 0..m {
            if s & (1 << j) != 0 {
                continue;
            }
            let mut best = f64::INFINITY;
            let mut rest = s;
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let c = d[j + 1][k + 1] + cost[s & !(1 << k)][k];
                if c < best {
                    best = c;
                }
            }
            cost[s][j] = best;
        }
    }
    let mut order = vec![0];
    let mut remaining = full;
    let mut here = 0;
    while remaining != 0 {
        let mut best = f64::INFINITY;
        let mut choice = usize::MAX;
        for k in 0..m {
            if remaining & (1 << k) == 0 {
                continue;
            }
            let c = d[here][k + 1] + cost[remaining & !(1 << k)][k];
            if choice == usize::MAX || (c < best && !ties(c, best)) {
                best = c;
                choice = k;
            }
        }
        order.push(choice + 1);
        remaining &= !(1 << choice);
        here = choice + 1;
    }
    Ok(order)
}

/// Nearest-neighbor order from point 0 followed by 2-opt.
pub fn heuristic_order(points: &[Point3], config: &TspConfig) -> Vec<usize> {
    let n = points.len();
    if n <= 3 {
        return (0..n).collect();
    }
    let d = distance_matrix(points);
    let passes = config.two_opt_max_passes.max(1);
    let mut order = nearest_neighbor(&d);
    local_search(&d, &mut order, passes);
    if (8..=KICK_MAX_N).contains(&n) {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut best_len = order_length(&d, &order);
        for _ in 0..KICKS {
            let mut trial = double_bridge(&order, &mut rng);
            local_search(&d, &mut trial, passes);
            let len = order_length(&d, &trial);
            if len < best_len - 1e-12 * best_len {
                best_len = len;
                order = trial;
            }
        }
    }
    order
}

fn order_length(d: &[Vec<f64>], order: &[usize]) -> f64 {
    let n = order.len();
    (0..n).map(|k| d[order[k]][order[(k + 1) % n]]).sum()
}

/// Random double-bridge move on positions 1..n, keeping position 0 in place.
fn double_bridge(order: &[usize], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = order.len();
    let mut cuts = rand::seq::index::sample(rng, n - 2, 3).into_vec();
    cuts.sort_unstable();
    let (a, b, c) = (cuts[0] + 1, cuts[1] + 1, cuts[2] + 1);
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&order[..a]);
    out.extend_from_slice(&order[b..c]);
    out.extend_from_slice(&order[a..b]);
    out.extend_from_slice(&order[c..]);
    out
}

/// Alternates 2-opt and Or-opt until neither improves or the pass limit hits.
fn local_search(d: &[Vec<f64>], order: &mut Vec<usize>, max_passes: usize) {
    for _ in 0..max_passes {
        let a = two_opt(d, order, max_passes);
        let b = or_opt(d, order);
        if !a && !b {
            break;
        }
    }
}

/// One sweep of segment relocation (segments of 1 to 3 cities, either
/// orientation). Position 0 never moves. Returns whether anything improved.
fn or_opt(d: &[Vec<f64>], order: &mut Vec<usize>) -> bool {
    let n = order.len();
    let mut improved = false;
    for len in 1..=3usize {
        if n < len + 3 {
            break;
        }
        let mut i = 1;
        while i + len <= n {
            // Segment order[i..i+len], with neighbors p and q.
            let p = order[i - 1];
            let q = order[(i + len) % n];
            let s0 = order[i];
            let s1 = order[i + len - 1];
            let removal = d[p][s0] + d[s1][q] - d[p][q];
            let mut best = (-1e-12 * removal.abs().max(1e-300), usize::MAX, false);
            for j in 0..n {
                // Insert between order[j] and order[j+1], outside the segment.
                let nj = (j + 1) % n;
                if (j + 1 >= i && j < i + len) || j + 1 == i || nj == i {
                    continue;
                }
                let (u, v) = (order[j], order[nj]);
                let fwd = d[u][s0] + d[s1][v] - d[u][v] - removal;
                let rev = d[u][s1] + d[s0][v] - d[u][v] - removal;
                if fwd < best.0 {
                    best = (fwd, j, false);
                }
                if rev < best.0 {
                    best = (rev, j, true);
                }
            }
            if best.1 != usize::MAX {
                let mut seg: Vec<usize> = order.drain(i..i + len).collect();
                if best.2 {
                    seg.reverse();
                }
                let j = best.1;
                let at = if j < i { j + 1 } else { j + 1 - len };
                order.splice(at..at, seg);
                improved = true;
            } else {
                i += 1;
            }
        }
    }
    improved
}

fn nearest_neighbor(d: &[Vec<f64>]) -> Vec<usize> {
    let n = d.len();
    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut here = 0;
    used[0] = true;
    order.push(0);
    for _ in 1..n {
        let mut next = usize::MAX;
        for k in 0..n {
            if !used[k] && (next == usize::MAX || d[here][k] < d[here][next]) {
                next = k;
            }
        }
        used[next] = true;
        order.push(next);
        here = next;
    }
    order
}

/// First-improvement 2-opt. Position 0 never moves. Returns whether any
/// exchange improved the tour.
fn two_opt(d: &[Vec<f64>], order: &mut [usize], max_passes: usize) -> bool {
    let n = order.len();
    let mut any = false;
    for _ in 0..max_passes {
        let mut improved = false;
        for i in 0..n - 2 {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (order[i], order[i + 1]);
                let (c, e) = (order[j], order[(j + 1) % n]);
                let delta = d[a][c] + d[b][e] - d[a][b] - d[c][e];
                if delta < -1e-12 * (d[a][b] + d[c][e]).max(1e-300) {
                    order[i + 1..=j].reverse();
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
        any = true;
    }
    any
}

fn order_to_tour(points: &[Point3], order: &[usize]) -> Tour {
    Tour {
        waypoints: order.iter().map(|&i| points[i]).collect(),
        closed: true,
        visits: order
            .iter()
            .enumerate()
            .map(|(k, &i)| Visit {
                object_id: i.to_string(),
                waypoint_index: k,
            })
            .collect(),
    }
}

/// Minimum-length closed tour. Visit ids are the input indices.
pub fn exact_tour(points: &[Point3], config: &TspConfig) -> Result<Tour> {
    config.validate()?;
    let order = exact_order(points, config.exact_max_n)?;
    Ok(order_to_tour(points, &order))
}

/// Heuristic closed tour. Visit ids are the input indices.
pub fn heuristic_tour(points: &[Point3], config: &TspConfig) -> Tour {
    order_to_tour(points, &heuristic_order(points, config))
}

/// Cyclic visiting order from the configured solver.
pub fn solve_order(points: &[Point3], config: &TspConfig) -> Result<Vec<usize>> {
    config.validate()?;
    match config.solver {
        Solver::Exact => exact_order(points, config.exact_max_n),
        Solver::Heuristic => Ok(heuristic_order(points, config)),
    }
}
