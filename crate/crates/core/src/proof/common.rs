//! Shared pieces of the constructions: the `(x, y, z, c)` frame, the error
//! type, branch traces, and turning a vertex sequence with color hints into a
//! verified rainbow path.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::error::Error;
use crate::graph::GraphCollection;
use crate::matching::{assign_colors, EdgeColorMatcher};
use crate::path::{ColoredCycle, ColoredPath};
use crate::search::{Outcome, SearchBudget, Searcher};
use crate::view::CollectionView;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    #[error("hypothesis violation: {reason}; rainbow cycle {cycle:?}")]
    ImpliedCycle { reason: String, cycle: ColoredCycle },
    #[error("no candidate path verified: {0}")]
    NoPath(String),
    #[error("search budget exhausted while {0}")]
    Exhausted(String),
    #[error(transparent)]
    Core(#[from] Error),
}

pub type ConstructionResult<T> = std::result::Result<T, ConstructionError>;

pub(crate) fn hypothesis<T>(msg: impl Into<String>) -> ConstructionResult<T> {
    Err(ConstructionError::Hypothesis(msg.into()))
}

/// One construction step as it is recorded in replay certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchTrace {
    pub lemma: String,
    pub case: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcase: Option<String>,
    pub sets: serde_json::Value,
    pub k: usize,
    pub path: Option<ColoredPath>,
    /// `recolored` when the stated colors failed and a matching supplied
    /// others; `unchecked-branch` marks reductions whose details are not
    /// spelled out in the argument being replayed.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// A constructed path with the index sets that selected it.
#[derive(Clone, Debug)]
pub struct LemmaPath<S> {
    pub path: ColoredPath,
    pub sets: S,
    pub trace: BranchTrace,
}

/// The pair `(x, y)` plus a vertex `z` and graph `c` with `xz ∉ G_c`.
/// `H` is the collection with `x, y, z` and graph `c` deleted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub c: usize,
}

impl Frame {
    /// Smallest `z ∉ {x, y}` missing from `x`'s neighborhood in some graph,
    /// and the smallest such graph. `None` when `x` sees every other vertex
    /// (`y` excepted) in every graph.
    pub fn choose(coll: &GraphCollection, x: usize, y: usize) -> Option<Frame> {
        let all = BitSet::full(coll.m());
        (0..coll.n()).filter(|&u| u != x && u != y).find_map(|z| {
            let missing = all.difference(coll.edge_colors(x, z));
            missing.first().map(|c| Frame { x, y, z, c })
        })
    }

    pub fn h_view<'a>(&self, coll: &'a GraphCollection) -> CollectionView<'a> {
        coll.restrict(&[self.x, self.y, self.z], &[self.c])
    }

    /// `H` without graph `j` as well.
    pub fn h_without<'a>(&self, coll: &'a GraphCollection, j: usize) -> CollectionView<'a> {
        self.h_view(coll).restrict(&[], &[j])
    }

    /// Degree and shape preconditions shared by all constructions on `n ≥ 7`.
    pub fn check(&self, coll: &GraphCollection) -> ConstructionResult<()> {
        check_degree_hypotheses(coll)?;
        let n = coll.n();
        if n < 7 {
            return hypothesis(format!("frame constructions need n ≥ 7, got {n}"));
        }
        let ids = [self.x, self.y, self.z];
        if ids.iter().any(|&v| v >= n) || self.x == self.y || self.z == self.x || self.z == self.y {
            return hypothesis(format!("frame vertices {ids:?} must be distinct and below {n}"));
        }
        if self.c >= coll.m() {
            return hypothesis(format!("frame graph {} out of range", self.c));
        }
        if coll.has_edge(self.c, self.x, self.z) {
            return hypothesis(format!("x = {} and z = {} are adjacent in graph {}", self.x, self.z, self.c));
        }
        Ok(())
    }

    pub(crate) fn check_j(&self, coll: &GraphCollection, j: usize) -> ConstructionResult<()> {
        if j >= coll.m() || j == self.c {
            return hypothesis(format!("graph {j} is not one of the graphs of H"));
        }
        Ok(())
    }
}

/// `m = n - 1`, `n` odd and every graph with minimum degree at least `(n+1)/2`.
pub(crate) fn check_degree_hypotheses(coll: &GraphCollection) -> ConstructionResult<()> {
    let (n, m) = (coll.n(), coll.m());
    if n % 2 == 0 || n < 5 {
        return hypothesis(format!("constructions need odd n ≥ 5, got {n}"));
    }
    if m + 1 != n {
        return hypothesis(format!("constructions need m = n - 1 graphs, got m = {m} for n = {n}"));
    }
    let delta = coll.min_degree();
    if 2 * delta < n + 1 {
        return hypothesis(format!("minimum degree {delta} is below (n+1)/2 = {}", (n + 1) / 2));
    }
    Ok(())
}

/// Candidate path: vertex sequence plus an optional prescribed color per edge.
#[derive(Clone, Debug)]
pub(crate) struct Draft {
    pub label: &'static str,
    pub vertices: Vec<usize>,
    pub hints: Vec<Option<usize>>,
}

impl Draft {
    pub fn new(label: &'static str, vertices: Vec<usize>, hints: Vec<Option<usize>>) -> Self {
        debug_assert_eq!(vertices.len(), hints.len() + 1, "{label}");
        Draft { label, vertices, hints }
    }

    /// Every edge colored as given.
    pub fn fixed(label: &'static str, vertices: Vec<usize>, colors: Vec<usize>) -> Self {
        Self::new(label, vertices, colors.into_iter().map(Some).collect())
    }

    pub fn reversed(&self, label: &'static str) -> Self {
        let mut vertices = self.vertices.clone();
        let mut hints = self.hints.clone();
        vertices.reverse();
        hints.reverse();
        Draft { label, vertices, hints }
    }

    fn exact(&self, coll: &GraphCollection) -> Option<ColoredPath> {
        if self.hints.len() + 1 != self.vertices.len() {
            return None;
        }
        let mut seen = BitSet::EMPTY;
        for &v in &self.vertices {
            if v >= coll.n() || seen.contains(v) {
                return None;
            }
            seen.insert(v);
        }
        let mut used = BitSet::EMPTY;
        for (e, hint) in self.hints.iter().enumerate() {
            if let Some(c) = *hint {
                let (u, v) = (self.vertices[e], self.vertices[e + 1]);
                if c >= coll.m() || used.contains(c) || !coll.has_edge(c, u, v) {
                    return None;
                }
                used.insert(c);
            }
        }
        let free = BitSet::full(coll.m()).difference(used);
        let mut matcher = EdgeColorMatcher::new();
        let mut slots = Vec::new();
        for (e, hint) in self.hints.iter().enumerate() {
            if hint.is_none() {
                let (u, v) = (self.vertices[e], self.vertices[e + 1]);
                if !matcher.push(coll.edge_colors(u, v).intersection(free)) {
                    return None;
                }
                slots.push(e);
            }
        }
        let mut colors: Vec<usize> = self.hints.iter().map(|h| h.unwrap_or(usize::MAX)).collect();
        for (e, c) in slots.into_iter().zip(matcher.colors()) {
            colors[e] = c;
        }
        Some(ColoredPath::new(self.vertices.clone(), colors))
    }

    fn recolored(&self, coll: &GraphCollection) -> Option<ColoredPath> {
        match assign_colors(&coll.view(), &self.vertices, BitSet::EMPTY) {
            Ok(Some(colors)) => Some(ColoredPath::new(self.vertices.clone(), colors)),
            _ => None,
        }
    }
}

pub(crate) struct Picked {
    pub path: ColoredPath,
    pub label: &'static str,
    pub recolored: bool,
}

/// First draft whose stated colors work; failing that, the first whose vertex
/// sequence admits any rainbow coloring.
pub(crate) fn pick(coll: &GraphCollection, drafts: &[Draft]) -> Option<Picked> {
    drafts.iter().find_map(|d| d.exact(coll).map(|path| Picked { path, label: d.label, recolored: false })).or_else(
        || drafts.iter().find_map(|d| d.recolored(coll).map(|path| Picked { path, label: d.label, recolored: true })),
    )
}

pub(crate) struct TraceHead<'a> {
    pub lemma: &'a str,
    pub case: String,
    pub subcase: Option<String>,
    pub k: usize,
}

/// Picks among `drafts` and packages the result, checking the endpoints, the
/// length and the rainbow property against the whole collection.
pub(crate) fn finish<S: Serialize>(
    coll: &GraphCollection,
    head: TraceHead<'_>,
    sets: S,
    drafts: &[Draft],
    (x, y): (usize, usize),
    mut notes: Vec<String>,
) -> ConstructionResult<LemmaPath<S>> {
    let Some(picked) = pick(coll, drafts) else {
        let labels: Vec<&str> = drafts.iter().map(|d| d.label).collect();
        return Err(ConstructionError::NoPath(format!(
            "{} {}{}, k = {}: candidates {labels:?} are not rainbow paths",
            head.lemma,
            head.case,
            head.subcase.as_deref().map(|s| format!("/{s}")).unwrap_or_default(),
            head.k
        )));
    };
    let path = picked.path;
    if let Err(v) = path.verify(&coll.view()) {
        return Err(ConstructionError::NoPath(format!("{} produced an invalid path: {v}", head.lemma)));
    }
    if path.len() != head.k || path.first() != x || path.last() != y {
        return Err(ConstructionError::NoPath(format!(
            "{} produced {:?}, expected a {}-path from {x} to {y}",
            head.lemma, path.vertices, head.k
        )));
    }
    if picked.recolored {
        notes.push("recolored".into());
    }
    let mut subcase = head.subcase;
    if drafts.len() > 1 {
        subcase = Some(match subcase {
            Some(s) => format!("{s}/{}", picked.label),
            None => picked.label.to_string(),
        });
    }
    let trace = BranchTrace {
        lemma: head.lemma.to_string(),
        case: head.case,
        subcase,
        sets: serde_json::to_value(&sets).expect("sets serialize"),
        k: head.k,
        path: Some(path.clone()),
        notes,
    };
    Ok(LemmaPath { path, sets, trace })
}

/// Rainbow cycle of the given length in `view`, or `None` if there is none.
pub(crate) fn find_cycle(
    view: &CollectionView<'_>,
    length: usize,
    budget: SearchBudget,
    what: &str,
) -> ConstructionResult<Option<ColoredCycle>> {
    if length < 3 || length > view.vertex_count() {
        return Ok(None);
    }
    match Searcher::new(*view, budget).cycle(length)? {
        Outcome::Found(c) => Ok(Some(c)),
        Outcome::NotFound => Ok(None),
        Outcome::Exhausted => Err(ConstructionError::Exhausted(what.to_string())),
    }
}

/// `H` may contain neither a rainbow `(n-3)`-cycle nor a rainbow `(n-4)`-cycle.
pub(crate) fn check_no_long_cycles(
    coll: &GraphCollection,
    frame: &Frame,
    budget: SearchBudget,
) -> ConstructionResult<()> {
    let h = frame.h_view(coll);
    let n = coll.n();
    for len in [n - 3, n - 4] {
        if let Some(cycle) = find_cycle(&h, len, budget, "checking H for long rainbow cycles")? {
            return Err(ConstructionError::ImpliedCycle { reason: format!("H has a rainbow {len}-cycle"), cycle });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn frame_choice() {
        let mut g = SimpleGraph::complete(5).unwrap();
        let full = GraphCollection::uniform(g.clone(), 4).unwrap();
        assert_eq!(Frame::choose(&full, 0, 1), None);
        g.remove_edge(0, 3);
        let mut graphs = full.into_graphs();
        graphs[2] = g;
        let coll = GraphCollection::new(graphs).unwrap();
        assert_eq!(Frame::choose(&coll, 0, 1), Some(Frame { x: 0, y: 1, z: 3, c: 2 }));
        assert_eq!(Frame::choose(&coll, 1, 0), None);
    }

    #[test]
    fn pick_prefers_hints_then_recolors() {
        let g = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let coll = GraphCollection::uniform(g, 2).unwrap();
        let ok = Draft::fixed("a", vec![0, 1, 2], vec![1, 0]);
        let p = pick(&coll, &[ok]).unwrap();
        assert_eq!(p.path.colors, vec![1, 0]);
        assert!(!p.recolored);
        let clash = Draft::fixed("b", vec![0, 1, 2], vec![0, 0]);
        let p = pick(&coll, &[clash]).unwrap();
        assert!(p.recolored);
        p.path.verify(&coll.view()).unwrap();
        let free = Draft::new("c", vec![0, 1, 2], vec![Some(0), None]);
        assert_eq!(pick(&coll, &[free]).unwrap().path.colors, vec![0, 1]);
        let bad = Draft::new("d", vec![0, 2, 1], vec![None, None]);
        assert!(pick(&coll, &[bad]).is_none());
    }
}
