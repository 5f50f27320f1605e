//! `H_j` has a rainbow Hamiltonian cycle: pick a window of the cycle whose
//! far end sees `x` in `G_c` and whose near end sees `y` in `G_j`.

use serde::Serialize;

use super::common::{finish, hypothesis, ConstructionResult, Draft, Frame, LemmaPath, TraceHead};
use crate::graph::GraphCollection;
use crate::path::ColoredCycle;

/// Cycle positions are 1-based: position `i` is `cycle.at(i - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationSets {
    pub j: usize,
    /// Positions `i` with `x` adjacent in `G_c` to position `i + k - 3`.
    pub far_end: Vec<usize>,
    /// Positions `i` with `y` adjacent in `G_j` to position `i`.
    pub near_end: Vec<usize>,
    pub start: usize,
}

pub fn rotation_k_path(
    coll: &GraphCollection,
    frame: &Frame,
    j: usize,
    cycle: &ColoredCycle,
    k: usize,
) -> ConstructionResult<LemmaPath<RotationSets>> {
    frame.check(coll)?;
    frame.check_j(coll, j)?;
    let n = coll.n();
    if !(4..n).contains(&k) {
        return hypothesis(format!("k = {k} outside 4..={}", n - 1));
    }
    if cycle.len() != n - 3 {
        return hypothesis(format!("cycle has {} vertices, expected {}", cycle.len(), n - 3));
    }
    if let Err(v) = cycle.verify(&frame.h_without(coll, j)) {
        return hypothesis(format!("cycle is not a rainbow cycle of H without graph {j}: {v}"));
    }
    let Frame { x, y, c, .. } = *frame;
    let len = cycle.len() as isize;
    let shift = k as isize - 3;
    let far_end: Vec<usize> =
        (0..len).filter(|&i| coll.has_edge(c, x, cycle.at(i + shift))).map(|i| i as usize + 1).collect();
    let near_end: Vec<usize> = (0..len).filter(|&i| coll.has_edge(j, y, cycle.at(i))).map(|i| i as usize + 1).collect();
    let Some(&start) = far_end.iter().find(|i| near_end.contains(i)) else {
        return hypothesis(format!(
            "window ends never match: {} far-end and {} near-end positions on a {len}-cycle",
            far_end.len(),
            near_end.len()
        ));
    };
    let s = start as isize - 1;
    let mut vertices = vec![x];
    let mut colors = vec![c];
    for t in (s..=s + shift).rev() {
        vertices.push(cycle.at(t));
        if t > s {
            colors.push(cycle.color_at(t - 1));
        }
    }
    vertices.push(y);
    colors.push(j);
    let sets = RotationSets { j, far_end, near_end, start };
    let head = TraceHead { lemma: "rotation", case: "window".into(), subcase: None, k };
    finish(coll, head, sets, &[Draft::fixed("window", vertices, colors)], (x, y), Vec::new())
}
