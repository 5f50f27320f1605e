//! `H_j` has a rainbow Hamiltonian path `P = u_1 … u_{n-3}` but `H` has no
//! long rainbow cycle. With `a` the graph of `H_j` unused by `P` and `b = j`,
//! the positions `u_1` sees in `G_a` form one or two blocks; the block shape
//! picks how to cut `P` and splice in `x` and `y`.
//!
//! Indices below are 1-based path positions, `col(i)` is the color of
//! `u_i u_{i+1}`.

use serde::Serialize;

use super::common::{check_no_long_cycles, finish, hypothesis, ConstructionResult, Draft, Frame, LemmaPath, TraceHead};
use crate::bitset::BitSet;
use crate::graph::GraphCollection;
use crate::path::ColoredPath;
use crate::search::SearchBudget;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathEndSets {
    /// `(a, b)` after normalization.
    pub end_colors: (usize, usize),
    /// The path after normalization.
    pub path: ColoredPath,
    /// Positions `i ∈ [2, n-5]` with `u_1 u_i ∈ G_a`.
    pub first_end: Vec<usize>,
    /// Positions `i ∈ [3, n-4]` with `u_i u_{n-3} ∈ G_b`.
    pub last_end: Vec<usize>,
    /// Maximal runs of `first_end` as `(min, max)`.
    pub blocks: Vec<(usize, usize)>,
    /// Reversals and recolorings applied before the case split.
    pub relabels: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    /// One block starting at 3.
    LateBlock,
    /// Two blocks, the first starting at 2.
    TwoBlocks { a1: usize, b1: usize },
    /// One block starting at 2, last end seeing `(n-3)/2` positions.
    EarlyBlockFull,
    /// One block starting at 2, last end missing position `(n-3)/2`; `d` is
    /// the color of the final path edge and `x, y` both see `u_{n-3}` in it.
    EarlyBlockGap { d: usize },
}

#[derive(Clone, Debug)]
struct Ends {
    n: usize,
    /// `u[i]` for `i ∈ 1..=n-3`; slot 0 unused.
    u: Vec<usize>,
    /// `col[i]` for `i ∈ 1..=n-4`; slot 0 unused.
    col: Vec<usize>,
    a: usize,
    b: usize,
}

impl Ends {
    fn reverse_swap(&mut self) {
        self.u[1..].reverse();
        self.col[1..].reverse();
        std::mem::swap(&mut self.a, &mut self.b);
    }

    fn first_end(&self, coll: &GraphCollection) -> Vec<usize> {
        (2..=self.n - 5).filter(|&i| coll.has_edge(self.a, self.u[1], self.u[i])).collect()
    }

    fn last_end(&self, coll: &GraphCollection) -> Vec<usize> {
        let last = self.u[self.n - 3];
        (3..=self.n - 4).filter(|&i| coll.has_edge(self.b, self.u[i], last)).collect()
    }

    fn path(&self) -> ColoredPath {
        ColoredPath::new(self.u[1..].to_vec(), self.col[1..].to_vec())
    }

    /// Vertices `u_i ..= u_j` and the colors between them.
    fn seg(&self, i: usize, j: usize) -> (Vec<usize>, Vec<usize>) {
        (self.u[i..=j].to_vec(), self.col[i..j].to_vec())
    }
}

fn blocks(set: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &i in set {
        match out.last_mut() {
            Some(last) if last.1 + 1 == i => last.1 = i,
            _ => out.push((i, i)),
        }
    }
    out
}

/// Same sequence with `x` and `y` trading places: interior and hints reversed.
fn mirrored(d: &Draft) -> Draft {
    let last = d.vertices.len() - 1;
    let mut vertices = d.vertices.clone();
    vertices[1..last].reverse();
    let mut hints = d.hints.clone();
    hints.reverse();
    Draft { label: "mirrored", vertices, hints }
}

fn with_mirror(d: Draft) -> Vec<Draft> {
    let m = mirrored(&d);
    vec![d, m]
}

/// Normalized path, its index sets and the block shape; reusable for every `k`.
#[derive(Clone, Debug)]
pub struct PathEndsPlan {
    frame: Frame,
    ends: Ends,
    shape: Shape,
    sets: PathEndSets,
    notes: Vec<String>,
}

impl PathEndsPlan {
    pub fn new(
        coll: &GraphCollection,
        frame: &Frame,
        j: usize,
        path: &ColoredPath,
        budget: SearchBudget,
    ) -> ConstructionResult<Self> {
        frame.check(coll)?;
        frame.check_j(coll, j)?;
        let n = coll.n();
        let hj = frame.h_without(coll, j);
        if path.len() != n - 3 {
            return hypothesis(format!("path has {} vertices, expected {}", path.len(), n - 3));
        }
        if let Err(v) = path.verify(&hj) {
            return hypothesis(format!("not a rainbow path of H without graph {j}: {v}"));
        }
        check_no_long_cycles(coll, frame, budget)?;
        let a = hj.colors().difference(path.color_set()).first().expect("one unused graph");
        let mut ends = Ends {
            n,
            u: std::iter::once(usize::MAX).chain(path.vertices.iter().copied()).collect(),
            col: std::iter::once(usize::MAX).chain(path.colors.iter().copied()).collect(),
            a,
            b: j,
        };
        let mut relabels = Vec::new();
        let mut notes = Vec::new();
        let (lo, hi) = ((n - 5) / 2, (n - 3) / 2);
        for _ in 0..4 {
            let mut first = ends.first_end(coll);
            if first.len() != lo {
                ends.reverse_swap();
                relabels.push(format!("reversed: first end saw {} positions", first.len()));
                first = ends.first_end(coll);
                if first.len() != lo {
                    return hypothesis(format!("neither path end sees {lo} positions in its missing graph"));
                }
            }
            let bl = blocks(&first);
            let shape = match (bl[0].0, bl.len()) {
                (3, 1) => Shape::LateBlock,
                (2, 2) => Shape::TwoBlocks { a1: bl[0].1, b1: bl[1].0 },
                (2, 1) => {
                    let last = ends.last_end(coll);
                    if last.iter().any(|&i| i < hi) {
                        return hypothesis(format!("last end sees position {} below {hi}", last[0]));
                    }
                    if last.len() == hi {
                        if n == 7 {
                            return hypothesis("last end sees both interior positions when n = 7");
                        }
                        Shape::EarlyBlockFull
                    } else if last.len() == lo {
                        let q = (hi..=n - 4).find(|i| !last.contains(i)).unwrap();
                        if q == n - 4 {
                            ends.reverse_swap();
                            relabels.push("reversed: last end misses its neighbor".into());
                            continue;
                        }
                        if q > hi {
                            ends.reverse_swap();
                            relabels.push(format!("reversed: last end misses interior position {q}"));
                            notes.push("unchecked-branch".into());
                            continue;
                        }
                        let d = ends.col[n - 4];
                        let tail = ends.u[n - 3];
                        let on_path = BitSet::from_iter(ends.u[1..].iter().copied());
                        if coll.graph(d).neighbors(tail).intersection(on_path).len() == hi {
                            ends.col[n - 4] = ends.b;
                            ends.b = d;
                            relabels
                                .push(format!("recolored last edge with {}, last-end graph now {d}", ends.col[n - 4]));
                            continue;
                        }
                        let (x, y) = (frame.x, frame.y);
                        if !coll.has_edge(d, x, tail) || !coll.has_edge(d, y, tail) {
                            return hypothesis(format!("x and y do not both see the path's last vertex in graph {d}"));
                        }
                        Shape::EarlyBlockGap { d }
                    } else {
                        return hypothesis(format!("last end sees {} positions, expected {lo} or {hi}", last.len()));
                    }
                }
                (s, l) => return hypothesis(format!("first-end positions start at {s} in {l} blocks")),
            };
            let sets = PathEndSets {
                end_colors: (ends.a, ends.b),
                path: ends.path(),
                first_end: first,
                last_end: ends.last_end(coll),
                blocks: bl,
                relabels,
            };
            return Ok(PathEndsPlan { frame: *frame, ends, shape, sets, notes });
        }
        hypothesis("relabeling the path did not settle on a block shape")
    }

    pub fn sets(&self) -> &PathEndSets {
        &self.sets
    }

    fn short(&self, k: usize) -> Vec<Draft> {
        let e = &self.ends;
        let (mut v, mut c) = e.seg(1, k - 2);
        v.insert(0, self.frame.x);
        v.push(self.frame.y);
        c.insert(0, e.a);
        c.push(e.col[k - 2]);
        with_mirror(Draft::fixed("forward", v, c))
    }

    /// `x`, the `lead` vertices, `u_from ..= u_to`, `u_{n-3}`, `y`; `lead_colors`
    /// colors the edges from `x` up to `u_from`, `tail` the last two.
    fn spliced(
        &self,
        label: &'static str,
        lead: &[usize],
        lead_colors: &[usize],
        (from, to): (usize, usize),
        tail: [usize; 2],
    ) -> Vec<Draft> {
        debug_assert_eq!(lead.len() + 1, lead_colors.len());
        let e = &self.ends;
        let (seg_v, seg_c) = e.seg(from, to);
        let mut v = vec![self.frame.x];
        v.extend(lead);
        v.extend(seg_v);
        v.extend([e.u[e.n - 3], self.frame.y]);
        let mut c = lead_colors.to_vec();
        c.extend(seg_c);
        c.extend(tail);
        with_mirror(Draft::fixed(label, v, c))
    }

    pub fn k_path(&self, coll: &GraphCollection, k: usize) -> ConstructionResult<LemmaPath<PathEndSets>> {
        let n = coll.n();
        if !(4..n).contains(&k) {
            return hypothesis(format!("k = {k} outside 4..={}", n - 1));
        }
        let e = &self.ends;
        let Frame { x, y, z, .. } = self.frame;
        let (a, b) = (e.a, e.b);
        let last_col = e.col[n - 4];
        let t = self.sets.first_end.last().copied().unwrap_or(0);
        let full = |e: &Ends| {
            let (mut v, mut c) = e.seg(1, n - 3);
            v.insert(0, x);
            v.push(y);
            c.insert(0, e.a);
            c.push(e.b);
            with_mirror(Draft::fixed("whole-path", v, c))
        };
        let (case, sub, drafts): (&str, &str, Vec<Draft>) = match self.shape {
            Shape::LateBlock => {
                if k == n - 1 {
                    ("late-block", "whole-path", full(e))
                } else if k <= (n + 1) / 2 {
                    ("late-block", "prefix", self.short(k))
                } else {
                    ("late-block", "skip-first", self.spliced("skip-first", &[], &[a], (2, k - 2), [b, last_col]))
                }
            }
            Shape::TwoBlocks { a1, b1 } => {
                if (3..=a1 + 1).contains(&k) || (b1 + 1..=t + 1).contains(&k) {
                    ("two-blocks", "prefix", self.short(k))
                } else if (t + 3..n).contains(&k) || (a1 + 3..=b1).contains(&k) {
                    ("two-blocks", "jump-to-end", self.spliced("jump-to-end", &[], &[a], (1, k - 3), [b, last_col]))
                } else if k == t + 2 || (k == a1 + 2 && a1 + 2 < b1) {
                    ("two-blocks", "skip-first", self.spliced("skip-first", &[], &[a], (2, k - 2), [b, last_col]))
                } else {
                    // a1 + 2 = b1: rotate at the gap and run to the end.
                    let s = n - k;
                    let lead_col = e.col[s - 1];
                    let (seg_v, seg_c) = e.seg(s, n - 3);
                    let mut v = vec![x];
                    v.extend(seg_v);
                    v.push(y);
                    let mut c1 = vec![lead_col];
                    c1.extend(&seg_c[..seg_c.len() - 1]);
                    c1.extend([b, last_col]);
                    let mut c2 = vec![lead_col];
                    c2.extend(&seg_c);
                    c2.push(b);
                    let d1 = Draft::fixed("gap-rotation", v.clone(), c1);
                    let d2 = Draft::fixed("gap-rotation-plain", v, c2);
                    let (m1, m2) = (mirrored(&d1), mirrored(&d2));
                    ("two-blocks", "gap-rotation", vec![d1, m1, d2, m2])
                }
            }
            Shape::EarlyBlockFull => {
                if k <= (n - 1) / 2 {
                    ("early-block-full", "prefix", self.short(k))
                } else if k <= n - 2 {
                    // u_1 u_3 reuses the color of the skipped edge u_1 u_2.
                    let drafts = self.spliced("skip-second", &[e.u[1]], &[a, e.col[1]], (3, k - 2), [b, last_col]);
                    ("early-block-full", "skip-second", drafts)
                } else {
                    ("early-block-full", "whole-path", full(e))
                }
            }
            Shape::EarlyBlockGap { d } => {
                let two_hop =
                    |from: usize, to: usize| self.spliced("two-hop", &[e.u[1]], &[e.col[1], a], (from, to), [b, d]);
                if k <= (n - 1) / 2 {
                    ("early-block-gap", "prefix", self.short(k))
                } else if k >= (n + 5) / 2 {
                    ("early-block-gap", "jump-to-end", self.spliced("jump-to-end", &[], &[a], (1, k - 3), [b, d]))
                } else if k == (n + 1) / 2 {
                    match n {
                        7 => {
                            let d1 = Draft::fixed("down", vec![x, e.u[2], e.u[1], y], vec![b, e.col[1], a]);
                            let d2 = Draft::fixed("up", vec![x, e.u[1], e.u[2], y], vec![a, e.col[1], b]);
                            ("early-block-gap", "middle-low", vec![d1, d2])
                        }
                        9 => {
                            let v = vec![x, e.u[1], z, e.u[n - 3], y];
                            (
                                "early-block-gap",
                                "middle-low",
                                with_mirror(Draft::fixed("via-z", v, vec![e.col[1], a, b, d])),
                            )
                        }
                        _ => ("early-block-gap", "middle-low", two_hop((n - 3) / 2, n - 6)),
                    }
                } else if n == 7 {
                    let v = vec![x, e.u[1], z, e.u[n - 3], y];
                    ("early-block-gap", "middle-high", with_mirror(Draft::fixed("via-z", v, vec![e.col[1], a, b, d])))
                } else {
                    ("early-block-gap", "middle-high", two_hop((n - 3) / 2, n - 5))
                }
            }
        };
        let head = TraceHead { lemma: "path-ends", case: case.into(), subcase: Some(sub.into()), k };
        finish(coll, head, self.sets.clone(), &drafts, (x, y), self.notes.clone())
    }
}

pub fn ham_path_k_path(
    coll: &GraphCollection,
    frame: &Frame,
    j: usize,
    path: &ColoredPath,
    k: usize,
    budget: SearchBudget,
) -> ConstructionResult<LemmaPath<PathEndSets>> {
    PathEndsPlan::new(coll, frame, j, path, budget)?.k_path(coll, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_split_runs() {
        assert_eq!(blocks(&[2, 3, 5, 6, 7]), vec![(2, 3), (5, 7)]);
        assert_eq!(blocks(&[3]), vec![(3, 3)]);
        assert!(blocks(&[]).is_empty());
    }

    #[test]
    fn mirror_swaps_roles_of_the_ends() {
        let d = Draft::fixed("f", vec![0, 5, 6, 7, 1], vec![10, 11, 12, 13]);
        let m = mirrored(&d);
        assert_eq!(m.vertices, vec![0, 7, 6, 5, 1]);
        assert_eq!(m.hints, vec![Some(13), Some(12), Some(11), Some(10)]);
    }
}
