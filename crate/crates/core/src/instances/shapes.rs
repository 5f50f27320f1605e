//! Planted instances for the individual path constructions.
//!
//! Every shape satisfies `m = n - 1`, `δ ≥ (n+1)/2`, uses the pair
//! `x = 0, y = 1`, and makes `z = 2` the first vertex that `x` misses in some
//! graph. The remaining `n - 3` vertices form `H` and receive their roles from
//! a seeded shuffle. Hypotheses that only hold "by the shape" (no long rainbow
//! cycles in `H`, ...) are re-verified by the constructions themselves, not
//! trusted from here.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::random::{gen_random_collection, repair_min_degree};
use super::{rng, STRUCTURE_STREAM};
use crate::bitset::MAX_ELEMENTS;
use crate::error::{Error, Result};
use crate::graph::{GraphCollection, SimpleGraph};
use crate::path::{ColoredCycle, ColoredPath};

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaShape {
    /// Dense random collection with a planted Hamiltonian cycle in one `H_j`.
    Rotation,
    /// `H` has an `(n-4)`-cycle alternating between `U1` and `U2` and no
    /// Hamiltonian cycle; the left-over vertex sees exactly `U1`.
    NearCycle,
    /// `H` is two cliques joined by a bridge: Hamiltonian paths but no long cycles.
    PathEnds,
    /// Two cliques in every graph but one, which has edges across.
    TwoCliquesCrossEdge,
    /// Two cliques in every graph; the path must detour through `z`.
    TwoCliquesDetour,
    /// Independent set joined to the rest, with an edge inside it in `x`'s missing graph.
    JoinIndependentEdge,
    /// Independent set joined to the rest, with an edge from `x` or `y` into the rest.
    JoinCrossEdge,
    /// The exceptional family itself.
    JoinExtremal,
}

impl LemmaShape {
    pub const ALL: [LemmaShape; 8] = [
        LemmaShape::Rotation,
        LemmaShape::NearCycle,
        LemmaShape::PathEnds,
        LemmaShape::TwoCliquesCrossEdge,
        LemmaShape::TwoCliquesDetour,
        LemmaShape::JoinIndependentEdge,
        LemmaShape::JoinCrossEdge,
        LemmaShape::JoinExtremal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaShape::Rotation => "rotation",
            LemmaShape::NearCycle => "near-cycle",
            LemmaShape::PathEnds => "path-ends",
            LemmaShape::TwoCliquesCrossEdge => "two-cliques-cross-edge",
            LemmaShape::TwoCliquesDetour => "two-cliques-detour",
            LemmaShape::JoinIndependentEdge => "join-independent-edge",
            LemmaShape::JoinCrossEdge => "join-cross-edge",
            LemmaShape::JoinExtremal => "join-extremal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Construction the proof replay is expected to dispatch to.
    pub fn route(self) -> &'static str {
        match self {
            LemmaShape::Rotation => "rotation",
            LemmaShape::NearCycle => "near-cycle",
            LemmaShape::PathEnds => "path-ends",
            LemmaShape::TwoCliquesCrossEdge | LemmaShape::TwoCliquesDetour => "two-cliques",
            LemmaShape::JoinIndependentEdge | LemmaShape::JoinCrossEdge | LemmaShape::JoinExtremal => "join-partition",
        }
    }
}

/// Generated instance plus the structures planted in it.
#[derive(Clone, Debug, Serialize)]
pub struct PlantedInstance {
    pub shape: LemmaShape,
    #[serde(skip)]
    pub collection: GraphCollection,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// Graph in which `x` misses `z`.
    pub c: usize,
    /// Graph left out of `H` for the planted cycle, path or split.
    pub j: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<ColoredCycle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<ColoredPath>,
    /// `[U1, U2]`, `[F, I]` or the two cliques, depending on the shape.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
}

struct Builder {
    graphs: Vec<SimpleGraph>,
}

impl Builder {
    fn new(n: usize, m: usize) -> Self {
        Builder { graphs: (0..m).map(|_| SimpleGraph::empty(n).expect("n validated")).collect() }
    }

    fn everywhere(&mut self, u: usize, v: usize) {
        self.graphs.iter_mut().for_each(|g| g.add_edge(u, v));
    }

    fn clique(&mut self, color: usize, set: &[usize]) {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                self.graphs[color].add_edge(u, v);
            }
        }
    }

    fn biclique(&mut self, color: usize, a: &[usize], b: &[usize]) {
        for &u in a {
            for &v in b {
                self.graphs[color].add_edge(u, v);
            }
        }
    }

    /// x, y, z adjacent to all of `h` and to each other, except `xz` in `c`.
    fn attach_xyz(&mut self, h: &[usize], c: usize) {
        for &u in h {
            for t in [X, Y, Z] {
                self.everywhere(t, u);
            }
        }
        self.everywhere(X, Y);
        self.everywhere(Y, Z);
        self.everywhere(X, Z);
        self.graphs[c].remove_edge(X, Z);
    }

    fn min_degree(&self) -> usize {
        self.graphs.iter().map(SimpleGraph::min_degree).min().unwrap_or(0)
    }

    fn finish(self) -> GraphCollection {
        GraphCollection::new(self.graphs).expect("shape sizes validated")
    }
}

fn planted(shape: LemmaShape, collection: GraphCollection, c: usize, j: usize) -> PlantedInstance {
    PlantedInstance { shape, collection, x: X, y: Y, z: Z, c, j, cycle: None, path: None, parts: Vec::new(), w: None }
}

/// Generates the planted instance for `shape` on `n` vertices (odd, `7 ≤ n ≤ 64`).
pub fn gen_lemma_shape(shape: LemmaShape, n: usize, seed: u64) -> Result<PlantedInstance> {
    if n % 2 == 0 || !(7..=MAX_ELEMENTS).contains(&n) {
        return Err(Error::Infeasible(format!(
            "lemma shapes need odd n in [7, {MAX_ELEMENTS}] (n = 5 has its own construction), got {n}"
        )));
    }
    let mut r = rng(seed, STRUCTURE_STREAM);
    let mut h: Vec<usize> = (3..n).collect();
    h.shuffle(&mut r);
    let p = match shape {
        LemmaShape::Rotation => rotation(n, seed, &h, &mut r)?,
        LemmaShape::NearCycle => near_cycle(n, &h, &mut r),
        LemmaShape::PathEnds => path_ends(n, &h, &mut r),
        LemmaShape::TwoCliquesCrossEdge => two_cliques(shape, n, &h, true, &mut r),
        LemmaShape::TwoCliquesDetour => two_cliques(shape, n, &h, false, &mut r),
        LemmaShape::JoinIndependentEdge | LemmaShape::JoinCrossEdge | LemmaShape::JoinExtremal => {
            join(shape, n, &h, &mut r)
        }
    };
    debug_assert!(2 * p.collection.min_degree() >= n + 1);
    Ok(p)
}

fn rotation(n: usize, seed: u64, h: &[usize], r: &mut impl Rng) -> Result<PlantedInstance> {
    let m = n - 1;
    let c = m - 1;
    let floor = (n + 1) / 2;
    let mut graphs = gen_random_collection(n, m, floor, seed)?.into_graphs();
    for g in graphs.iter_mut() {
        for u in 2..n {
            g.add_edge(X, u);
        }
    }
    graphs[c].remove_edge(X, Z);
    let repaired = repair_min_degree(&mut graphs[c], floor, &[(X, Z)], r);
    debug_assert!(repaired);
    // Hamiltonian cycle of H_0 through h in order, using every H_0 color once.
    let j = 0;
    let mut colors: Vec<usize> = (1..c).collect();
    colors.shuffle(r);
    let l = h.len();
    for i in 0..l {
        graphs[colors[i]].add_edge(h[i], h[(i + 1) % l]);
    }
    let mut p = planted(LemmaShape::Rotation, GraphCollection::new(graphs)?, c, j);
    p.cycle = Some(ColoredCycle::new(h.to_vec(), colors));
    Ok(p)
}

fn near_cycle(n: usize, h: &[usize], r: &mut impl Rng) -> PlantedInstance {
    let m = n - 1;
    let c = m - 1;
    let l = n - 4;
    let cyc = &h[..l];
    let w = h[l];
    // position i (0-based) holds u_{i+1}; U1 = u_1, u_3, ..., u_{n-6}
    let u1: Vec<usize> = (0..l - 2).step_by(2).map(|i| cyc[i]).collect();
    let u2: Vec<usize> = cyc.iter().copied().filter(|v| !u1.contains(v)).collect();
    let (end_a, end_b) = (cyc[l - 2], cyc[l - 1]);
    let mut b = Builder::new(n, m);
    for color in 0..c {
        b.biclique(color, &u1, &u2);
        b.biclique(color, &[w], &u1);
        b.graphs[color].add_edge(end_a, end_b);
    }
    b.clique(c, h);
    b.attach_xyz(h, c);

    // x's neighborhood in G_c decides which k = 4 / k ≥ 5 branch applies
    let mode = if n >= 9 { r.gen_range(0..3) } else { r.gen_range(0..2) };
    match mode {
        0 => {
            for &v in h {
                if r.gen_bool(0.3) && b.graphs[c].degree(X) > (n + 1) / 2 {
                    b.graphs[c].remove_edge(X, v);
                }
            }
        }
        1 => u1.iter().for_each(|&v| b.graphs[c].remove_edge(X, v)),
        _ => [end_a, end_b].iter().for_each(|&v| b.graphs[c].remove_edge(X, v)),
    }
    // y loses some U1 and z edges so every k = 4 alternative gets exercised
    for color in 0..c {
        for &v in u1.iter().chain([Z].iter()) {
            if r.gen_bool(0.5) {
                b.graphs[color].remove_edge(Y, v);
            }
        }
    }
    debug_assert!(2 * b.min_degree() >= n + 1);
    let mut p = planted(LemmaShape::NearCycle, b.finish(), c, 0);
    p.cycle = Some(ColoredCycle::new(cyc.to_vec(), (1..=l).collect()));
    p.parts = vec![u1, u2];
    p.w = Some(w);
    p
}

fn path_ends(n: usize, h: &[usize], r: &mut impl Rng) -> PlantedInstance {
    let m = n - 1;
    let c = m - 1;
    let half = (n - 3) / 2;
    let (a, bside) = h.split_at(half);
    let (p_end, q_end) = (a[half - 1], bside[0]);
    let floor = (n + 1) / 2;
    let mut b = Builder::new(n, m);
    for color in 0..m {
        b.clique(color, a);
        b.clique(color, bside);
        b.graphs[color].add_edge(p_end, q_end);
    }
    b.attach_xyz(h, c);
    // each bridge end misses one of x, y, z in every graph
    for color in 0..m {
        loop {
            let drops = [(p_end, [X, Y, Z][r.gen_range(0..3)]), (q_end, [X, Y, Z][r.gen_range(0..3)])];
            let mut g = b.graphs[color].clone();
            drops.iter().for_each(|&(u, t)| g.remove_edge(u, t));
            if g.min_degree() >= floor {
                b.graphs[color] = g;
                break;
            }
        }
    }
    let order: Vec<usize> = a.iter().chain(bside).copied().collect();
    let mut p = planted(LemmaShape::PathEnds, b.finish(), c, 0);
    p.path = Some(ColoredPath::new(order, (1..n - 3).collect()));
    p.parts = vec![a.to_vec(), bside.to_vec()];
    p
}

fn two_cliques(shape: LemmaShape, n: usize, h: &[usize], cross: bool, r: &mut impl Rng) -> PlantedInstance {
    let m = n - 1;
    let c = m - 1;
    let half = (n - 3) / 2;
    let (u1, u2) = h.split_at(half);
    let mut b = Builder::new(n, m);
    for color in 0..m {
        b.clique(color, u1);
        b.clique(color, u2);
    }
    b.attach_xyz(h, c);
    let j = if cross { r.gen_range(0..c) } else { 0 };
    if cross {
        let count = r.gen_range(1..=half);
        for _ in 0..count {
            let (&u, &v) = (u1.choose(r).expect("nonempty"), u2.choose(r).expect("nonempty"));
            b.graphs[j].add_edge(u, v);
        }
    }
    let mut p = planted(shape, b.finish(), c, j);
    p.parts = vec![u1.to_vec(), u2.to_vec()];
    p
}

/// Random graph on `set` without isolated vertices (`|set| ≥ 2`).
fn random_covering(g: &mut SimpleGraph, set: &[usize], r: &mut impl Rng) {
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if r.gen_bool(0.4) {
                g.add_edge(u, v);
            }
        }
    }
    for &u in set {
        if set.iter().all(|&v| !g.has_edge(u, v)) {
            let &v = set.iter().filter(|&&v| v != u).collect::<Vec<_>>().choose(r).expect("two vertices");
            g.add_edge(u, *v);
        }
    }
}

fn join(shape: LemmaShape, n: usize, h: &[usize], r: &mut impl Rng) -> PlantedInstance {
    let m = n - 1;
    let f_size = (n - 5) / 2;
    let (f, i) = h.split_at(f_size);
    let mut rest: Vec<usize> = f.to_vec();
    rest.push(Z);
    let mut b = Builder::new(n, m);
    for color in 0..m {
        b.biclique(color, i, f);
        b.biclique(color, i, &[X, Y, Z]);
    }
    b.everywhere(X, Y);
    if shape == LemmaShape::JoinExtremal {
        let mut q = SimpleGraph::empty(n).expect("n validated");
        random_covering(&mut q, &rest, r);
        for (u, v) in q.edges() {
            b.everywhere(u, v);
        }
    } else {
        for color in 0..m {
            random_covering(&mut b.graphs[color], &rest, r);
        }
    }
    // x never meets z, so the first graph is the one x misses z in
    let c = 0;
    match shape {
        LemmaShape::JoinIndependentEdge => {
            let mut pair: Vec<usize> = i.to_vec();
            pair.shuffle(r);
            b.graphs[c].add_edge(pair[0], pair[1]);
        }
        LemmaShape::JoinCrossEdge => {
            let choices: Vec<(usize, usize)> =
                rest.iter().flat_map(|&v| [(X, v), (Y, v)]).filter(|&e| e != (X, Z)).collect();
            let &(t, v) = choices.choose(r).expect("F nonempty");
            let color = r.gen_range(0..m);
            b.graphs[color].add_edge(t, v);
        }
        _ => {}
    }
    let mut p = planted(shape, b.finish(), c, 0);
    p.parts = vec![f.to_vec(), i.to_vec()];
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{find_clique_split, find_join_partition, recognize_f_family};

    fn h_view(p: &PlantedInstance) -> crate::view::CollectionView<'_> {
        p.collection.restrict(&[p.x, p.y, p.z], &[p.c])
    }

    #[test]
    fn all_shapes_meet_degree_floor() {
        for shape in LemmaShape::ALL {
            for n in [7, 9, 11] {
                for seed in 0..10 {
                    let p = gen_lemma_shape(shape, n, seed).unwrap();
                    assert_eq!(p.collection.m(), n - 1);
                    assert!(2 * p.collection.min_degree() >= n + 1, "{shape:?} n = {n} seed = {seed}");
                    assert!(!p.collection.has_edge(p.c, p.x, p.z));
                }
            }
        }
    }

    #[test]
    fn planted_cycles_and_paths_are_rainbow() {
        for seed in 0..10 {
            let p = gen_lemma_shape(LemmaShape::Rotation, 9, seed).unwrap();
            let view = h_view(&p).restrict(&[], &[p.j]);
            assert_eq!(p.cycle.as_ref().unwrap().len(), 6);
            p.cycle.as_ref().unwrap().verify(&view).unwrap();

            let p = gen_lemma_shape(LemmaShape::NearCycle, 9, seed).unwrap();
            let view = h_view(&p).restrict(&[], &[p.j]);
            p.cycle.as_ref().unwrap().verify(&view).unwrap();

            let p = gen_lemma_shape(LemmaShape::PathEnds, 9, seed).unwrap();
            let view = h_view(&p).restrict(&[], &[p.j]);
            p.path.as_ref().unwrap().verify(&view).unwrap();
        }
    }

    #[test]
    fn splits_and_partitions_recognized() {
        for seed in 0..10 {
            let p = gen_lemma_shape(LemmaShape::TwoCliquesCrossEdge, 9, seed).unwrap();
            assert!(find_clique_split(&h_view(&p).restrict(&[], &[p.j])).is_some());
            assert!(find_clique_split(&h_view(&p)).is_none());
            let p = gen_lemma_shape(LemmaShape::JoinCrossEdge, 9, seed).unwrap();
            assert!(find_join_partition(&h_view(&p), 4).is_some());
            let p = gen_lemma_shape(LemmaShape::JoinExtremal, 9, seed).unwrap();
            assert!(recognize_f_family(&p.collection).is_some());
        }
    }

    #[test]
    fn names_roundtrip_and_small_n_rejected() {
        for s in LemmaShape::ALL {
            assert_eq!(LemmaShape::from_name(s.name()), Some(s));
        }
        assert!(gen_lemma_shape(LemmaShape::Rotation, 5, 0).is_err());
        assert!(gen_lemma_shape(LemmaShape::Rotation, 8, 0).is_err());
    }

    #[test]
    fn deterministic() {
        for s in LemmaShape::ALL {
            let a = gen_lemma_shape(s, 9, 4).unwrap();
            let b = gen_lemma_shape(s, 9, 4).unwrap();
            assert_eq!(a.collection.to_text(), b.collection.to_text());
        }
    }
}
