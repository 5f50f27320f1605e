//! Recognizers for the extremal structures: the F-family (an independent set
//! joined to a graph with a single-edge component), two disjoint cliques, and
//! join partitions with an independent side.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::graph::{GraphCollection, SimpleGraph};
use crate::view::CollectionView;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremalKind {
    FFamily,
    TwoCliques,
    JoinPartition,
    SingleGraphSplit,
}

/// A structural certificate. `partition` lists the parts in a fixed order:
/// `[Q1, Q2]` for the F-family, `[H, I]` for join partitions (with `I`
/// independent) and the two cliques for splits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalWitness {
    pub kind: ExtremalKind,
    pub partition: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub single_edge: Option<(usize, usize)>,
}

impl ExtremalWitness {
    /// Re-checks the claimed structure against every member graph.
    pub fn reverify(&self, coll: &GraphCollection) -> bool {
        let all = BitSet::full(coll.n());
        let parts: Vec<BitSet> = self.partition.iter().map(|p| BitSet::from_iter(p.iter().copied())).collect();
        if parts.len() != 2 || parts[0].intersection(parts[1]) != BitSet::EMPTY || parts[0].union(parts[1]) != all {
            return false;
        }
        match self.kind {
            ExtremalKind::FFamily => {
                coll.all_identical()
                    && f_partition_holds(coll.graph(0), parts[0]).is_some_and(|e| Some(e) == self.single_edge)
            }
            ExtremalKind::TwoCliques | ExtremalKind::SingleGraphSplit => {
                let equal = parts[0].len() == parts[1].len();
                (self.kind == ExtremalKind::TwoCliques) == equal
                    && coll.graphs().iter().all(|g| is_clique_split(g, all, parts[0], parts[1]))
            }
            ExtremalKind::JoinPartition => join_holds(&coll.view(), parts[0], parts[1]),
        }
    }
}

/// Checks whether `q1` is the independent side of an F-family graph; returns
/// the smallest single-edge component of `Q2 = V \ q1` on success.
fn f_partition_holds(g: &SimpleGraph, q1: BitSet) -> Option<(usize, usize)> {
    let n = g.n();
    if n % 2 == 0 || q1.len() != (n - 1) / 2 {
        return None;
    }
    let q2 = BitSet::full(n).difference(q1);
    if !g.is_independent(q1) {
        return None;
    }
    if q1.iter().any(|v| !q2.is_subset(g.neighbors(v))) {
        return None;
    }
    let comps = g.components(q2);
    if comps.iter().any(|c| c.len() < 2) {
        return None;
    }
    comps.iter().find(|c| c.len() == 2).map(|c| {
        let v = c.to_vec();
        (v[0], v[1])
    })
}

fn f_witness(q1: BitSet, n: usize, edge: (usize, usize)) -> ExtremalWitness {
    ExtremalWitness {
        kind: ExtremalKind::FFamily,
        partition: vec![q1.to_vec(), BitSet::full(n).difference(q1).to_vec()],
        single_edge: Some(edge),
    }
}

/// F-family recognition with a reason on failure.
pub fn recognize_f_family_explained(coll: &GraphCollection) -> Result<ExtremalWitness, String> {
    let n = coll.n();
    if n % 2 == 0 {
        return Err(format!("n = {n} is even"));
    }
    if n < 3 {
        return Err(format!("n = {n} is too small"));
    }
    if !coll.all_identical() {
        let i = (1..coll.m()).find(|&i| coll.graph(i) != coll.graph(0)).unwrap();
        return Err(format!("graph {i} differs from graph 0"));
    }
    let g = coll.graph(0);
    let all = BitSet::full(n);
    // Q1 vertices are exactly those whose neighborhood is the complement of their class.
    let mut tried = BitSet::EMPTY;
    for v in 0..n {
        if tried.contains(v) {
            continue;
        }
        let nb = g.neighbors(v);
        let class = BitSet::from_iter((0..n).filter(|&u| g.neighbors(u) == nb));
        tried = tried.union(class);
        if class.len() == (n - 1) / 2 && nb == all.difference(class) {
            if let Some(e) = f_partition_holds(g, class) {
                return Ok(f_witness(class, n, e));
            }
        }
    }
    if n <= 11 {
        if let Some(w) = recognize_f_family_exhaustive(coll) {
            return Ok(w);
        }
    }
    Err("no independent class of size (n-1)/2 joined to a Q2 with a single-edge component".into())
}

pub fn recognize_f_family(coll: &GraphCollection) -> Option<ExtremalWitness> {
    recognize_f_family_explained(coll).ok()
}

/// Tries every vertex subset of size `(n-1)/2` as Q1 (feasible for small `n`).
pub fn recognize_f_family_exhaustive(coll: &GraphCollection) -> Option<ExtremalWitness> {
    let n = coll.n();
    if n % 2 == 0 || !coll.all_identical() {
        return None;
    }
    let g = coll.graph(0);
    let size = (n - 1) / 2;
    subsets(n, size).into_iter().find_map(|q1| f_partition_holds(g, q1).map(|e| f_witness(q1, n, e)))
}

/// All `size`-subsets of `0..n` in increasing bitmask order.
pub(crate) fn subsets(n: usize, size: usize) -> Vec<BitSet> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    fn rec(start: usize, n: usize, left: usize, cur: BitSet, out: &mut Vec<BitSet>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for v in start..=n - left {
            let mut next = cur;
            next.insert(v);
            rec(v + 1, n, left - 1, next, out);
        }
    }
    rec(0, n, size, BitSet::EMPTY, &mut out);
    out
}

fn is_clique(g: &SimpleGraph, set: BitSet) -> bool {
    set.iter().all(|v| set.difference(BitSet::singleton(v)).is_subset(g.neighbors(v)))
}

/// `g[within]` is exactly the disjoint union of cliques on `a` and `b`.
fn is_clique_split(g: &SimpleGraph, within: BitSet, a: BitSet, b: BitSet) -> bool {
    is_clique(g, a)
        && is_clique(g, b)
        && a.iter().all(|v| g.neighbors(v).intersection(within).intersection(b).is_empty())
}

/// Two-clique split of a view: every surviving graph restricted to the view's
/// vertices is the same disjoint union of two nonempty cliques.
pub fn find_clique_split(view: &CollectionView<'_>) -> Option<(BitSet, BitSet)> {
    let within = view.vertices();
    let first = view.colors().first()?;
    let g0 = view.base().graph(first);
    let v0 = within.first()?;
    let a = g0.neighbors(v0).intersection(within).union(BitSet::singleton(v0));
    let b = within.difference(a);
    if b.is_empty() {
        return None;
    }
    view.colors().iter().all(|c| is_clique_split(view.base().graph(c), within, a, b)).then_some((a, b))
}

/// Clique-split recognizer for a whole collection (any part sizes).
pub fn recognize_clique_split(coll: &GraphCollection) -> Option<ExtremalWitness> {
    let (a, b) = find_clique_split(&coll.view())?;
    let kind = if a.len() == b.len() { ExtremalKind::TwoCliques } else { ExtremalKind::SingleGraphSplit };
    Some(ExtremalWitness { kind, partition: vec![a.to_vec(), b.to_vec()], single_edge: None })
}

fn join_holds(view: &CollectionView<'_>, h: BitSet, i: BitSet) -> bool {
    view.colors().iter().all(|c| i.iter().all(|v| view.neighbors(c, v) == h))
}

/// Partition `(H, I)` of the view's vertices with `|I| = independent_size`,
/// `I` independent and completely joined to `H` in every surviving graph.
pub fn find_join_partition(view: &CollectionView<'_>, independent_size: usize) -> Option<(BitSet, BitSet)> {
    let within = view.vertices();
    if independent_size == 0 || independent_size >= within.len() {
        return None;
    }
    let first = view.colors().first()?;
    let mut tried = BitSet::EMPTY;
    for v in within {
        if tried.contains(v) {
            continue;
        }
        let nb = view.neighbors(first, v);
        let class = BitSet::from_iter(within.iter().filter(|&u| view.neighbors(first, u) == nb));
        tried = tried.union(class);
        if class.len() == independent_size && nb == within.difference(class) && join_holds(view, nb, class) {
            return Some((nb, class));
        }
    }
    None
}

/// Exhaustive counterpart of [`find_join_partition`] over all subsets.
pub fn find_join_partition_exhaustive(view: &CollectionView<'_>, independent_size: usize) -> Option<(BitSet, BitSet)> {
    let within = view.vertices().to_vec();
    if independent_size == 0 || independent_size >= within.len() {
        return None;
    }
    for mask in subsets(within.len(), independent_size) {
        let i = BitSet::from_iter(mask.iter().map(|k| within[k]));
        let h = view.vertices().difference(i);
        if join_holds(view, h, i) {
            return Some((h, i));
        }
    }
    None
}

/// Join-partition recognizer for a whole collection with `|I| = (n+2)/2` (n even).
pub fn recognize_join_partition(coll: &GraphCollection) -> Option<ExtremalWitness> {
    let n = coll.n();
    if n % 2 == 1 {
        return None;
    }
    let size = (n + 2) / 2;
    let (h, i) = find_join_partition(&coll.view(), size).or_else(|| {
        if n <= 12 {
            find_join_partition_exhaustive(&coll.view(), size)
        } else {
            None
        }
    })?;
    Some(ExtremalWitness {
        kind: ExtremalKind::JoinPartition,
        partition: vec![h.to_vec(), i.to_vec()],
        single_edge: None,
    })
}
