use std::collections::BTreeMap;

use crate::geom::{regions_intersect, Scene};

/// Kept (pairwise disjoint) objects and, for every removed object, the kept
/// object whose region it intersects.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MisResult {
    pub kept: Vec<String>,
    pub assignment: BTreeMap<String, String>,
}

impl MisResult {
    /// Removed objects assigned to `keeper`, in id order.
    pub fn neighbors_of(&self, keeper: &str) -> Vec<&str> {
        self.assignment
            .iter()
            .filter(|(_, k)| k.as_str() == keeper)
            .map(|(r, _)| r.as_str())
            .collect()
    }
}

/// Greedy independent set: repeatedly keep the remaining region with the
/// smallest `d_max` (ties by ascending id) and drop everything it intersects.
pub fn maximal_independent_set(scene: &Scene) -> MisResult {
    let objects = scene.objects();
    let mut order: Vec<usize> = (0..objects.len()).collect();
    order.sort_by(|&a, &b| {
        objects[a]
            .region
            .d_max()
            .total_cmp(&objects[b].region.d_max())
            .then_with(|| objects[a].id.cmp(&objects[b].id))
    });
    let mut alive = vec![true; objects.len()];
    let mut result = MisResult::default();
    for &i in &order {
        if !alive[i] {
            continue;
        }
        alive[i] = false;
        result.kept.push(objects[i].id.clone());
        for &j in &order {
            if alive[j] && regions_intersect(&objects[i].region, &objects[j].region) {
                alive[j] = false;
                result.assignment.insert(objects[j].id.clone(), objects[i].id.clone());
            }
        }
    }
    result
}
