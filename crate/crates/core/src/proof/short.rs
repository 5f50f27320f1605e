//! Paths on two and three vertices, and the five-vertex case where the frame
//! argument does not apply.

use serde::Serialize;

use super::common::{check_degree_hypotheses, finish, hypothesis, ConstructionResult, Draft, LemmaPath, TraceHead};
use crate::error::Error;
use crate::graph::GraphCollection;
use crate::path::ColoredPath;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortPaths {
    /// `x y` colored by the first graph containing the edge.
    pub two: Option<ColoredPath>,
    /// `x w y` with `xw ∈ G_0` and `wy ∈ G_1`.
    pub three: ColoredPath,
}

pub fn construct_short_paths(coll: &GraphCollection, x: usize, y: usize) -> ConstructionResult<ShortPaths> {
    let n = coll.n();
    if x >= n || y >= n {
        return Err(Error::InvalidQuery(format!("endpoints ({x}, {y}) out of range for n = {n}")).into());
    }
    if x == y {
        return Err(Error::InvalidQuery(format!("endpoints coincide at {x}")).into());
    }
    if coll.m() < 2 {
        return hypothesis("a three-vertex rainbow path needs at least two graphs");
    }
    let two = coll.edge_colors(x, y).first().map(|c| ColoredPath::new(vec![x, y], vec![c]));
    let common = coll.graph(0).neighbors(x).intersection(coll.graph(1).neighbors(y));
    let Some(w) = common.iter().find(|&w| w != x && w != y) else {
        return hypothesis(format!(
            "N_0({x}) ∩ N_1({y}) is empty (degrees {} and {}, n = {n})",
            coll.graph(0).degree(x),
            coll.graph(1).degree(y)
        ));
    };
    Ok(ShortPaths { two, three: ColoredPath::new(vec![x, w, y], vec![0, 1]) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiveVertexSets {
    /// Smallest edge among the other three vertices in the last graph,
    /// oriented so that `x` sees its first end in graph 0.
    pub edge: (usize, usize),
    pub third: usize,
}

/// Rainbow 4-path from `x` to `y` when `n = 5`, `m = 4`, minimum degree ≥ 3.
pub fn five_vertex_path(coll: &GraphCollection, x: usize, y: usize) -> ConstructionResult<LemmaPath<FiveVertexSets>> {
    check_degree_hypotheses(coll)?;
    if coll.n() != 5 {
        return hypothesis(format!("five-vertex construction called with n = {}", coll.n()));
    }
    if x >= 5 || y >= 5 || x == y {
        return Err(Error::InvalidQuery(format!("bad endpoints ({x}, {y})")).into());
    }
    let last = coll.m() - 1;
    let rest: Vec<usize> = (0..5).filter(|&v| v != x && v != y).collect();
    let g = coll.graph(last);
    let edge = [(0, 1), (0, 2), (1, 2)].into_iter().map(|(i, j)| (rest[i], rest[j])).find(|&(p, q)| g.has_edge(p, q));
    let Some((mut p, mut q)) = edge else {
        return hypothesis(format!("graph {last} has no edge among {rest:?}"));
    };
    if !coll.has_edge(0, x, p) {
        std::mem::swap(&mut p, &mut q);
    }
    if !coll.has_edge(0, x, p) {
        return hypothesis(format!("{x} sees neither {p} nor {q} in graph 0"));
    }
    let r = rest.iter().copied().find(|&v| v != p && v != q).unwrap();
    let mut drafts = Vec::new();
    for c in [1, 2] {
        if coll.has_edge(c, q, y) {
            drafts.push(Draft::fixed("direct", vec![x, p, q, y], vec![0, last, c]));
        }
    }
    drafts.push(Draft::fixed("second-graph-middle", vec![x, p, q, y], vec![0, 1, last]));
    drafts.push(Draft::fixed("via-third-vertex", vec![x, q, r, y], vec![1, 2, last]));
    let head = TraceHead { lemma: "five-vertex", case: "four-path".into(), subcase: None, k: 4 };
    finish(coll, head, FiveVertexSets { edge: (p, q), third: r }, &drafts, (x, y), Vec::new())
}
