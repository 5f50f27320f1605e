//! `H_j` splits into two cliques `U1, U2` of size `(n-3)/2` with no edges
//! between them in any graph but `j`. Short paths stay inside `U1`; longer
//! ones cross to `U2` by a `G_j` edge, or through `z` when `G_j` has none.

use serde::Serialize;

use super::common::{finish, hypothesis, ConstructionResult, Draft, Frame, LemmaPath, TraceHead};
use crate::bitset::BitSet;
use crate::graph::GraphCollection;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoCliqueSets {
    pub j: usize,
    /// `U1` ordered so the crossing vertex comes last.
    pub u1: Vec<usize>,
    /// `U2` ordered so the crossing vertex comes first.
    pub u2: Vec<usize>,
    pub cross_edge: Option<(usize, usize)>,
}

fn check_split(coll: &GraphCollection, frame: &Frame, j: usize, u1: BitSet, u2: BitSet) -> ConstructionResult<()> {
    let hj = frame.h_without(coll, j);
    let half = (coll.n() - 3) / 2;
    if u1.len() != half || u2.len() != half || !u1.intersection(u2).is_empty() || u1.union(u2) != hj.vertices() {
        return hypothesis(format!("{u1:?} and {u2:?} do not split H into halves of size {half}"));
    }
    for color in hj.colors() {
        for part in [u1, u2] {
            for v in part {
                let nb = coll.graph(color).neighbors(v);
                if !part.difference(BitSet::singleton(v)).is_subset(nb) {
                    return hypothesis(format!("{part:?} is not a clique in graph {color}"));
                }
                if !nb.intersection(u1.union(u2).difference(part)).is_empty() {
                    return hypothesis(format!("graph {color} has an edge between the halves at {v}"));
                }
            }
        }
    }
    Ok(())
}

pub fn two_clique_k_path(
    coll: &GraphCollection,
    frame: &Frame,
    j: usize,
    halves: (&[usize], &[usize]),
    k: usize,
) -> ConstructionResult<LemmaPath<TwoCliqueSets>> {
    frame.check(coll)?;
    frame.check_j(coll, j)?;
    let n = coll.n();
    if !(4..n).contains(&k) {
        return hypothesis(format!("k = {k} outside 4..={}", n - 1));
    }
    let (s1, s2) = (BitSet::from_iter(halves.0.iter().copied()), BitSet::from_iter(halves.1.iter().copied()));
    check_split(coll, frame, j, s1, s2)?;
    let Frame { x, y, z, .. } = *frame;
    let gj = coll.graph(j);
    let cross = s1.iter().find_map(|p| s2.iter().find(|&q| gj.has_edge(p, q)).map(|q| (p, q)));
    let mut u1: Vec<usize> = s1.to_vec();
    let mut u2: Vec<usize> = s2.to_vec();
    if let Some((p, q)) = cross {
        u1.retain(|&v| v != p);
        u1.push(p);
        u2.retain(|&v| v != q);
        u2.insert(0, q);
    }
    let half = u1.len();
    let inner = k - 2;
    let (case, draft) = if inner <= half {
        let mut v = vec![x];
        v.extend(&u1[..inner]);
        v.push(y);
        ("one-side", Draft::new("one-side", v, vec![None; k - 1]))
    } else if cross.is_some() {
        let mut v = vec![x];
        v.extend(&u1);
        v.extend(&u2[..inner - half]);
        v.push(y);
        let mut hints = vec![None; k - 1];
        hints[half] = Some(j);
        ("cross-edge", Draft::new("cross-edge", v, hints))
    } else {
        // One fewer vertex of U1 when the detour alone reaches the length.
        let take = if inner == half + 1 { half - 1 } else { half };
        let mut v = vec![x];
        v.extend(&u1[..take]);
        v.push(z);
        v.extend(&u2[..inner - take - 1]);
        v.push(y);
        let mut hints = vec![None; k - 1];
        hints[take] = Some(j);
        ("through-z", Draft::new("through-z", v, hints))
    };
    let sets = TwoCliqueSets { j, u1, u2, cross_edge: cross };
    let head = TraceHead { lemma: "two-cliques", case: case.into(), subcase: None, k };
    finish(coll, head, sets, &[draft], (x, y), Vec::new())
}
