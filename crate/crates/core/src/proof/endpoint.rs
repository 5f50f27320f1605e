//! Degree bounds at the ends of a rainbow Hamiltonian path of `H` when `H`
//! has no long rainbow cycle: the two ends see the path in the two graphs the
//! path misses, and those neighborhoods have interlocking sizes.

use serde::Serialize;

use super::common::{check_no_long_cycles, hypothesis, ConstructionError, ConstructionResult, Frame};
use crate::bitset::BitSet;
use crate::graph::GraphCollection;
use crate::path::{ColoredCycle, ColoredPath};
use crate::search::SearchBudget;

/// Path positions are 1-based: position `i` is `path.vertices[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointBoundReport {
    /// The graphs of `H` unused by the path, smaller first.
    pub missing: (usize, usize),
    pub ends: (usize, usize),
    /// Neighbors of the first end in the first missing graph, within the path.
    pub first_degree: usize,
    pub last_degree: usize,
    /// `i ∈ [1, n-6]` with the first end adjacent to position `i + 1`.
    pub first_positions: Vec<usize>,
    /// `i ∈ [3, n-4]` with the last end adjacent to position `i`.
    pub last_positions: Vec<usize>,
    pub sum_in_range: bool,
    pub each_in_range: bool,
    pub disjoint: bool,
}

impl EndpointBoundReport {
    pub fn holds(&self) -> bool {
        self.sum_in_range && self.each_in_range && self.disjoint
    }
}

/// `path` must be a rainbow Hamiltonian path of `H`; fails with the cycle
/// when `H` has a rainbow cycle on `n - 3` or `n - 4` vertices.
pub fn endpoint_bound_report(
    coll: &GraphCollection,
    frame: &Frame,
    path: &ColoredPath,
    budget: SearchBudget,
) -> ConstructionResult<EndpointBoundReport> {
    frame.check(coll)?;
    let n = coll.n();
    let h = frame.h_view(coll);
    if path.len() != n - 3 {
        return hypothesis(format!("path has {} vertices, expected {}", path.len(), n - 3));
    }
    if let Err(v) = path.verify(&h) {
        return hypothesis(format!("not a rainbow path of H: {v}"));
    }
    check_no_long_cycles(coll, frame, budget)?;
    let missing = h.colors().difference(path.color_set()).to_vec();
    let (f1, f2) = (missing[0], missing[1]);
    let v = &path.vertices;
    let (w1, w2) = (v[0], v[n - 4]);
    let on_path = BitSet::from_iter(v.iter().copied());
    let first_degree = coll.graph(f1).neighbors(w1).intersection(on_path).len();
    let last_degree = coll.graph(f2).neighbors(w2).intersection(on_path).len();
    let first_positions: Vec<usize> = (1..=n - 6).filter(|&i| coll.has_edge(f1, w1, v[i])).collect();
    let last_positions: Vec<usize> = (3..=n - 4).filter(|&i| coll.has_edge(f2, v[i - 1], w2)).collect();
    if let Some(&i) = first_positions.iter().find(|i| last_positions.contains(i)) {
        // v_1 .. v_i, then v_{n-3} back down to v_{i+1}, closing with f1.
        let mut vertices: Vec<usize> = v[..i].to_vec();
        let mut colors: Vec<usize> = path.colors[..i - 1].to_vec();
        colors.push(f2);
        vertices.extend(v[i..].iter().rev());
        colors.extend(path.colors[i..].iter().rev());
        colors.push(f1);
        return Err(ConstructionError::ImpliedCycle {
            reason: format!("end neighborhoods overlap at position {i}"),
            cycle: ColoredCycle::new(vertices, colors),
        });
    }
    let sum = first_degree + last_degree;
    let (lo, hi) = ((n - 5) / 2, (n - 3) / 2);
    Ok(EndpointBoundReport {
        missing: (f1, f2),
        ends: (w1, w2),
        first_degree,
        last_degree,
        first_positions,
        last_positions,
        sum_in_range: (n - 5..=n - 4).contains(&sum),
        each_in_range: [first_degree, last_degree].iter().all(|d| *d == lo || *d == hi),
        disjoint: true,
    })
}
