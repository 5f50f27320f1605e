//! `H_j` has a rainbow cycle `C` missing exactly one vertex `w` of `H`. With
//! `a` the graph of `H_j` unused by `C` and `b = j`, the attachments of `w` to
//! `C` in `G_a` and `G_b` pin down an alternating split `U1 ∪ U2` of `C`; the
//! paths run `x`, an arc of `C` ending in `U1`, `w`, `y`.

use serde::Serialize;

use super::common::{finish, hypothesis, ConstructionError, ConstructionResult, Draft, Frame, LemmaPath, TraceHead};
use crate::bitset::BitSet;
use crate::graph::GraphCollection;
use crate::path::ColoredCycle;

/// Cycle positions are 1-based: position `i` is `cycle.at(i - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleAttachSets {
    pub j: usize,
    /// The vertex of `H` off the cycle.
    pub outside: usize,
    /// `(a, b)`: the graph of `H_j` unused by the cycle, and `j`.
    pub attach_colors: (usize, usize),
    /// Positions `s` with `w` adjacent in `G_a` to position `s + 1`.
    pub after: Vec<usize>,
    /// Positions `s` with `w` adjacent in `G_b` to position `s`.
    pub at: Vec<usize>,
    /// The one position in neither set.
    pub excluded: usize,
    pub u1: Vec<usize>,
    pub u2: Vec<usize>,
}

/// Cycle relabeled so that `u(1) .. u(L)` runs forward from just past the
/// excluded position, which becomes `u(L - 1)`; indices wrap modulo `L`.
struct Labels<'c> {
    cycle: &'c ColoredCycle,
    base: isize,
}

impl Labels<'_> {
    fn u(&self, i: isize) -> usize {
        self.cycle.at(self.base + i)
    }

    /// Color of the edge `u(i) u(i+1)`.
    fn col(&self, i: isize) -> usize {
        self.cycle.color_at(self.base + i)
    }

    fn walk(&self, start: isize, count: usize, forward: bool) -> (Vec<usize>, Vec<usize>) {
        let step = if forward { 1 } else { -1 };
        let vertices = (0..count as isize).map(|t| self.u(start + step * t)).collect();
        let colors = (0..count as isize - 1)
            .map(|t| if forward { self.col(start + t) } else { self.col(start - t - 1) })
            .collect();
        (vertices, colors)
    }
}

fn attach<'c>(
    coll: &GraphCollection,
    frame: &Frame,
    j: usize,
    cycle: &'c ColoredCycle,
) -> ConstructionResult<(CycleAttachSets, Labels<'c>)> {
    frame.check(coll)?;
    frame.check_j(coll, j)?;
    let n = coll.n();
    let len = n - 4;
    let hj = frame.h_without(coll, j);
    if cycle.len() != len {
        return hypothesis(format!("cycle has {} vertices, expected {len}", cycle.len()));
    }
    if let Err(v) = cycle.verify(&hj) {
        return hypothesis(format!("cycle is not a rainbow cycle of H without graph {j}: {v}"));
    }
    let on_cycle = BitSet::from_iter(cycle.vertices.iter().copied());
    let w = hj.vertices().difference(on_cycle).first().expect("H has one more vertex than the cycle");
    let a = hj.colors().difference(BitSet::from_iter(cycle.colors.iter().copied())).first().expect("one unused graph");
    let b = j;
    let l = len as isize;
    let after: Vec<isize> = (0..l).filter(|&s| coll.has_edge(a, w, cycle.at(s + 1))).collect();
    let at: Vec<isize> = (0..l).filter(|&s| coll.has_edge(b, w, cycle.at(s))).collect();
    if let Some(&s) = after.iter().find(|s| at.contains(s)) {
        let mut vertices = vec![w];
        let mut colors = vec![b];
        for t in (s + 1..=s + l).rev() {
            vertices.push(cycle.at(t));
            colors.push(if t > s + 1 { cycle.color_at(t - 1) } else { a });
        }
        return Err(ConstructionError::ImpliedCycle {
            reason: format!("the outside vertex closes a Hamiltonian cycle of H at position {}", s + 1),
            cycle: ColoredCycle::new(vertices, colors),
        });
    }
    let half = (n - 5) / 2;
    if after.len() != half || at.len() != half {
        return hypothesis(format!(
            "attachment sets of the outside vertex have sizes {} and {}, expected {half} each",
            after.len(),
            at.len()
        ));
    }
    for (name, set) in [("after", &after), ("at", &at)] {
        if let Some(&s) = set.iter().find(|&&s| set.contains(&((s + 1) % l))) {
            return hypothesis(format!(
                "attachment set `{name}` contains consecutive positions {} and {}",
                s + 1,
                (s + 1) % l + 1
            ));
        }
    }
    let s0 = (0..l).find(|s| !after.contains(s) && !at.contains(s)).expect("sizes leave one position");
    if !at.contains(&((s0 - 1).rem_euclid(l))) || !after.contains(&((s0 + 1) % l)) {
        return hypothesis(format!("excluded position {} is not flanked by the attachment sets", s0 + 1));
    }
    let u1_a = BitSet::from_iter(after.iter().map(|&s| cycle.at(s + 1)));
    let u1_b = BitSet::from_iter(at.iter().map(|&s| cycle.at(s)));
    if u1_a != u1_b {
        return hypothesis(format!("outside vertex sees different cycle vertices in graphs {a} and {b}"));
    }
    let positions = |v: &[isize]| v.iter().map(|&s| s as usize + 1).collect();
    let sets = CycleAttachSets {
        j,
        outside: w,
        attach_colors: (a, b),
        after: positions(&after),
        at: positions(&at),
        excluded: s0 as usize + 1,
        u1: u1_a.to_vec(),
        u2: on_cycle.difference(u1_a).to_vec(),
    };
    Ok((sets, Labels { cycle, base: s0 + 1 }))
}

/// Parity table for the arc start when `x` misses both ends of the doubled
/// `U2` pair: returns (case label, start the table picks, walk forward?).
fn arc_choice(n: isize, count: isize, p: isize, q: isize) -> (&'static str, isize, bool) {
    let lo = (n - 5) / 2;
    let hi = (n - 3) / 2;
    let ahead = |r: isize| n - 4 - r;
    match (count % 2 == 0, lo % 2 == 1) {
        (true, true) if count <= hi => ("even-arc-odd-half", q, ahead(q) > hi),
        (true, true) => ("even-arc-odd-half", p, ahead(p) <= hi),
        (true, false) if count <= lo => ("even-arc-even-half", q, ahead(q) >= hi),
        (true, false) => ("even-arc-even-half", p, ahead(p) < hi),
        (false, true) if count <= lo => ("odd-arc-odd-half", p, ahead(p) >= hi),
        (false, true) => ("odd-arc-odd-half", q, ahead(q) < hi),
        (false, false) if count <= hi => ("odd-arc-even-half", p, ahead(p) > hi),
        (false, false) => ("odd-arc-even-half", q, ahead(q) <= hi),
    }
}

pub fn near_cycle_k_path(
    coll: &GraphCollection,
    frame: &Frame,
    j: usize,
    cycle: &ColoredCycle,
    k: usize,
) -> ConstructionResult<LemmaPath<CycleAttachSets>> {
    let (sets, lab) = attach(coll, frame, j, cycle)?;
    let n = coll.n() as isize;
    if !(4..n as usize).contains(&k) {
        return hypothesis(format!("k = {k} outside 4..={}", n - 1));
    }
    let Frame { x, y, z, c } = *frame;
    let w = sets.outside;
    let (a, b) = sets.attach_colors;
    let u1 = BitSet::from_iter(sets.u1.iter().copied());
    let sees_x = |v: usize| coll.has_edge(c, x, v);
    let lab_u = |i: isize| lab.u(i);

    if k == 4 {
        let odd = || (1..=n - 6).step_by(2);
        let (sub, draft) = if let Some(i) = odd().find(|&i| sees_x(lab_u(i))) {
            ("x-sees-u1", Draft::fixed("x-sees-u1", vec![x, lab.u(i), w, y], vec![c, a, b]))
        } else if let Some(i) = odd().find(|&i| coll.has_edge(a, y, lab_u(i))) {
            ("y-sees-u1", Draft::fixed("y-sees-u1", vec![x, lab.u(i + 1), lab.u(i), y], vec![c, lab.col(i), a]))
        } else if coll.has_edge(a, y, z) {
            ("through-z", Draft::fixed("through-z", vec![x, w, z, y], vec![c, b, a]))
        } else {
            let d = Draft::fixed("doubled-pair", vec![x, lab.u(n - 4), lab.u(n - 5), y], vec![c, lab.col(n - 5), a]);
            ("doubled-pair", d)
        };
        let head = TraceHead { lemma: "near-cycle", case: "k4".into(), subcase: Some(sub.into()), k };
        return finish(coll, head, sets, &[draft], (x, y), Vec::new());
    }

    let count = k - 3;
    let arc = |start: isize, forward: bool, label: &'static str| {
        let (mut vertices, mut colors) = lab.walk(start, count, forward);
        vertices.insert(0, x);
        colors.insert(0, c);
        vertices.extend([w, y]);
        colors.extend([a, b]);
        Draft::fixed(label, vertices, colors)
    };
    let ends_in_u1 = |start: isize, forward: bool| {
        let step = if forward { 1 } else { -1 };
        u1.contains(lab.u(start + step * (count as isize - 1)))
    };
    let (case, subcase, drafts) = if sees_x(lab.u(n - 4)) || sees_x(lab.u(n - 5)) {
        let start = if sees_x(lab.u(n - 4)) { n - 4 } else { n - 5 };
        let forward = ends_in_u1(start, true);
        let label = if forward { "forward" } else { "backward" };
        let sub = if start == n - 4 { "last-end" } else { "first-end" };
        ("x-sees-pair", sub.to_string(), vec![arc(start, forward, label)])
    } else {
        let p = (1..=n - 6).step_by(2).find(|&i| sees_x(lab.u(i)));
        let q = (2..=n - 7).step_by(2).find(|&i| sees_x(lab.u(i)));
        let (Some(p), Some(q)) = (p, q) else {
            return hypothesis(format!(
                "x has no G_{c} neighbor in {} of the cycle",
                if p.is_none() { "U1" } else { "the interior of U2" }
            ));
        };
        let (sub, start, forward) = arc_choice(n, count as isize, p, q);
        let mut drafts = vec![arc(start, forward, "table")];
        for (r, f) in [(p, true), (p, false), (q, true), (q, false)] {
            if (r, f) != (start, forward) {
                drafts.push(arc(r, f, "other-start"));
            }
        }
        ("x-misses-pair", sub.to_string(), drafts)
    };
    let head = TraceHead { lemma: "near-cycle", case: case.into(), subcase: Some(subcase), k };
    finish(coll, head, sets, &drafts, (x, y), Vec::new())
}

/// Index sets and the split of the cycle, without building a path.
pub fn cycle_attach_sets(
    coll: &GraphCollection,
    frame: &Frame,
    j: usize,
    cycle: &ColoredCycle,
) -> ConstructionResult<CycleAttachSets> {
    attach(coll, frame, j, cycle).map(|(sets, _)| sets)
}
