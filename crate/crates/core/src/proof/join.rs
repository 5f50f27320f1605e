//! `H` is the join of an independent set `I` of size `(n-1)/2` and the rest
//! `F`. Paths alternate between `I` and `F ∪ {z}`; they need either an edge
//! inside `I` in `G_c` or an edge from `x` or `y` into `F ∪ {z}`. With
//! neither, the collection is the exceptional family.

use serde::Serialize;

use super::common::{finish, hypothesis, ConstructionResult, Draft, Frame, LemmaPath, TraceHead};
use crate::analysis::{recognize_f_family, ExtremalKind, ExtremalWitness};
use crate::bitset::BitSet;
use crate::graph::GraphCollection;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinSets {
    pub independent: Vec<usize>,
    pub rest: Vec<usize>,
    /// Edge of `G_c` inside the independent side.
    pub inner_edge: Option<(usize, usize)>,
    /// `(end, vertex, graph)`: an end of the pair adjacent to `F ∪ {z}`.
    pub cross_edge: Option<(usize, usize, usize)>,
}

#[derive(Clone, Debug)]
pub enum JoinOutcome {
    Path(Box<LemmaPath<JoinSets>>),
    /// Neither kind of edge exists: the structure of the exceptional family.
    /// `recognized` tells whether the family recognizer accepts the collection.
    Exceptional {
        witness: ExtremalWitness,
        recognized: bool,
        sets: JoinSets,
    },
}

fn check_partition(coll: &GraphCollection, frame: &Frame, f: BitSet, i: BitSet) -> ConstructionResult<()> {
    let h = frame.h_view(coll);
    let n = coll.n();
    if i.len() != (n - 1) / 2 || f.len() != (n - 5) / 2 || f.union(i) != h.vertices() || !f.intersection(i).is_empty() {
        return hypothesis(format!("{f:?} and {i:?} are not a partition of H with |I| = {}", (n - 1) / 2));
    }
    for color in h.colors() {
        let g = coll.graph(color);
        for v in i {
            if !g.neighbors(v).intersection(i).is_empty() {
                return hypothesis(format!("partition re-verification failed: I has an edge at {v} in graph {color}"));
            }
            if !f.is_subset(g.neighbors(v)) {
                return hypothesis(format!("partition re-verification failed: {v} misses part of F in graph {color}"));
            }
        }
    }
    let outside = f.union(BitSet::from_iter([frame.x, frame.y, frame.z]));
    for color in 0..coll.m() {
        for v in i {
            if !outside.is_subset(coll.graph(color).neighbors(v)) {
                return hypothesis(format!("{v} does not see all of F ∪ {{x, y, z}} in graph {color}"));
            }
        }
    }
    Ok(())
}

/// Alternating sequence `w_1 v_1 w_2 v_2 …` of the given length.
fn alternate(first: &[usize], second: &[usize], len: usize) -> Vec<usize> {
    (0..len).map(|t| if t % 2 == 0 { first[t / 2] } else { second[t / 2] }).collect()
}

pub fn join_partition_k_path(
    coll: &GraphCollection,
    frame: &Frame,
    parts: (&[usize], &[usize]),
    k: usize,
) -> ConstructionResult<JoinOutcome> {
    frame.check(coll)?;
    let n = coll.n();
    if !(4..n).contains(&k) {
        return hypothesis(format!("k = {k} outside 4..={}", n - 1));
    }
    let f = BitSet::from_iter(parts.0.iter().copied());
    let ind = BitSet::from_iter(parts.1.iter().copied());
    check_partition(coll, frame, f, ind)?;
    let Frame { x, y, z, c } = *frame;
    let gc = coll.graph(c);
    let inner_edge = ind.iter().find_map(|p| gc.neighbors(p).intersection(ind).iter().find(|&q| q > p).map(|q| (p, q)));
    let rest = f.union(BitSet::singleton(z));
    let cross_edge = [x, y].into_iter().find_map(|end| {
        (0..coll.m())
            .find_map(|color| coll.graph(color).neighbors(end).intersection(rest).first().map(|v| (end, v, color)))
    });
    let mut sets = JoinSets { independent: ind.to_vec(), rest: rest.to_vec(), inner_edge, cross_edge };

    let (case, draft) = if let Some((p, q)) = inner_edge {
        let mut w: Vec<usize> = ind.iter().filter(|&v| v != p && v != q).collect();
        w.extend([p, q]);
        let fv = f.to_vec();
        let mut v = vec![x];
        let mut hints = vec![None; k - 1];
        if k % 2 == 1 {
            v.extend(alternate(&w, &fv, k - 2));
        } else {
            v.extend(alternate(&w, &fv, k - 4));
            v.extend([p, q]);
            hints[k - 3] = Some(c);
        }
        v.push(y);
        sets.independent = w;
        ("inner-edge", Draft::new("inner-edge", v, hints))
    } else if let Some((end, special, color)) = cross_edge {
        let other = if end == x { y } else { x };
        let mut order = vec![special];
        order.extend(f.iter().filter(|&v| v != special));
        if special != z {
            order.push(z);
        }
        let w = ind.to_vec();
        let mut v = vec![end];
        let mut hints = vec![None; k - 1];
        if k % 2 == 1 {
            v.extend(alternate(&w, &order, k - 2));
        } else {
            v.extend(alternate(&order, &w, k - 2));
            hints[0] = Some(color);
        }
        v.push(other);
        sets.rest = order;
        let mut d = Draft::new("cross-edge", v, hints);
        if end == y {
            d = d.reversed("cross-edge");
        }
        ("cross-edge", d)
    } else if k % 2 == 1 {
        let mut v = vec![x];
        v.extend(alternate(&ind.to_vec(), &sets.rest, k - 2));
        v.push(y);
        ("alternating", Draft::new("alternating", v, vec![None; k - 1]))
    } else {
        let mut q2: Vec<usize> = sets.rest.clone();
        q2.extend([x, y]);
        q2.sort_unstable();
        let witness = ExtremalWitness {
            kind: ExtremalKind::FFamily,
            partition: vec![sets.independent.clone(), q2],
            single_edge: Some((x.min(y), x.max(y))),
        };
        let recognized = recognize_f_family(coll).is_some();
        return Ok(JoinOutcome::Exceptional { witness, recognized, sets });
    };
    let head = TraceHead { lemma: "join-partition", case: case.into(), subcase: None, k };
    finish(coll, head, sets, &[draft], (x, y), Vec::new()).map(|p| JoinOutcome::Path(Box::new(p)))
}
