//! The exceptional family and the two Hamiltonian-path obstructions, each
//! under a random vertex labeling.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{rng, LABEL_STREAM, STRUCTURE_STREAM};
use crate::bitset::{BitSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::graph::{GraphCollection, SimpleGraph};

fn random_labeling(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng(seed, LABEL_STREAM));
    perm
}

/// Checks the Q2 clauses on local indices; returns the adjacency as a graph.
fn validate_q2(size: usize, edges: &[(usize, usize)]) -> Result<SimpleGraph> {
    let q2 =
        SimpleGraph::from_edges(size, edges).map_err(|e| Error::Infeasible(format!("Q2 edge list invalid: {e}")))?;
    if let Some(v) = (0..size).find(|&v| q2.degree(v) == 0) {
        return Err(Error::Infeasible(format!("Q2 vertex {v} is isolated; Q2 needs minimum degree at least 1")));
    }
    if !q2.components(BitSet::full(size)).iter().any(|c| c.len() == 2) {
        return Err(Error::Infeasible("no component of Q2 is a single edge".into()));
    }
    Ok(q2)
}

/// Random Q2: a single edge {0, 1} plus a random graph without isolated
/// vertices on the remaining `size - 2 ≥ 2` vertices.
fn random_q2(size: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut r = rng(seed, STRUCTURE_STREAM);
    let mut g = SimpleGraph::empty(size).expect("size is small");
    g.add_edge(0, 1);
    for u in 2..size {
        for v in u + 1..size {
            if r.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    for u in 2..size {
        if g.degree(u) == 0 {
            let others: Vec<usize> = (2..size).filter(|&v| v != u).collect();
            g.add_edge(u, *others.choose(&mut r).expect("at least two vertices"));
        }
    }
    g.edges()
}

/// `m` identical copies of `Q1 ∨ Q2` where Q1 is independent on `(n-1)/2`
/// vertices. With `q2_edges = None` a random valid Q2 is drawn from the seed.
pub fn gen_extremal_family(
    n: usize,
    m: usize,
    q2_edges: Option<&[(usize, usize)]>,
    seed: u64,
) -> Result<GraphCollection> {
    if n % 2 == 0 {
        return Err(Error::Infeasible(format!("the exceptional family needs odd n, got {n}")));
    }
    if n == 5 {
        return Err(Error::Infeasible(
            "n = 5: Q2 has 3 vertices, and beside a single-edge component the last vertex cannot reach degree 1".into(),
        ));
    }
    if !(7..=MAX_ELEMENTS).contains(&n) {
        return Err(Error::Infeasible(format!("the exceptional family needs odd n in [7, {MAX_ELEMENTS}], got {n}")));
    }
    if m == 0 || m > MAX_ELEMENTS {
        return Err(Error::BadGraphCount(m));
    }
    let q1_size = (n - 1) / 2;
    let q2_size = n - q1_size;
    let edges = match q2_edges {
        Some(e) => e.to_vec(),
        None => random_q2(q2_size, seed),
    };
    let q2 = validate_q2(q2_size, &edges)?;
    let perm = random_labeling(n, seed);
    let (q1, q2_labels) = perm.split_at(q1_size);
    let mut g = SimpleGraph::empty(n)?;
    for &a in q1 {
        for &b in q2_labels {
            g.add_edge(a, b);
        }
    }
    for (u, v) in q2.edges() {
        g.add_edge(q2_labels[u], q2_labels[v]);
    }
    GraphCollection::uniform(g, m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionShape {
    /// Every graph is `K_{n/2} ∪ K_{n/2}`.
    TwoCliques,
    /// Independent `I` (`(n+2)/2` vertices) completely joined to `H`, random inside `H`.
    JoinPartition,
}

/// `n` graphs on `n` vertices (n even) with no rainbow Hamiltonian path.
pub fn gen_ham_path_obstruction(n: usize, shape: ObstructionShape, seed: u64) -> Result<GraphCollection> {
    if n % 2 == 1 || !(4..=MAX_ELEMENTS).contains(&n) {
        return Err(Error::Infeasible(format!("obstruction families need even n in [4, {MAX_ELEMENTS}], got {n}")));
    }
    let perm = random_labeling(n, seed);
    match shape {
        ObstructionShape::TwoCliques => {
            let (a, b) = perm.split_at(n / 2);
            let g = SimpleGraph::clique_union(n, &[a.to_vec(), b.to_vec()])?;
            GraphCollection::uniform(g, n)
        }
        ObstructionShape::JoinPartition => {
            let (h, i) = perm.split_at((n - 2) / 2);
            let graphs = (0..n)
                .map(|c| {
                    let mut r = rng(seed, c as u64);
                    let mut g = SimpleGraph::empty(n).expect("n validated");
                    for &u in h {
                        for &w in i {
                            g.add_edge(u, w);
                        }
                    }
                    for (k, &u) in h.iter().enumerate() {
                        for &v in &h[k + 1..] {
                            if r.gen_bool(0.5) {
                                g.add_edge(u, v);
                            }
                        }
                    }
                    g
                })
                .collect();
            GraphCollection::new(graphs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{recognize_clique_split, recognize_f_family, recognize_join_partition};

    #[test]
    fn extremal_two_edges_at_seven() {
        let c = gen_extremal_family(7, 6, Some(&[(0, 1), (2, 3)]), 1).unwrap();
        assert_eq!(c.min_degree(), 4);
        let w = recognize_f_family(&c).unwrap();
        assert!(w.reverify(&c));
        assert_eq!(w.partition[0].len(), 3);
    }

    #[test]
    fn extremal_edge_plus_triangle_at_nine() {
        let c = gen_extremal_family(9, 8, Some(&[(0, 1), (2, 3), (3, 4), (2, 4)]), 5).unwrap();
        assert!(recognize_f_family(&c).is_some());
    }

    #[test]
    fn extremal_rejections() {
        let e = gen_extremal_family(5, 4, None, 0).unwrap_err();
        assert!(e.to_string().contains("degree 1"), "{e}");
        assert!(gen_extremal_family(8, 7, None, 0).is_err());
        let e = gen_extremal_family(7, 6, Some(&[(0, 1), (1, 2), (2, 3)]), 0).unwrap_err();
        assert!(e.to_string().contains("single edge"), "{e}");
        let e = gen_extremal_family(9, 8, Some(&[(0, 1), (2, 3)]), 0).unwrap_err();
        assert!(e.to_string().contains("isolated"), "{e}");
    }

    #[test]
    fn random_q2_always_valid() {
        for n in [7, 9, 11] {
            for seed in 0..30 {
                let c = gen_extremal_family(n, n - 1, None, seed).unwrap();
                assert!(recognize_f_family(&c).is_some(), "n = {n}, seed = {seed}");
            }
        }
    }

    #[test]
    fn obstructions_recognized() {
        for n in [4, 6, 8] {
            let c = gen_ham_path_obstruction(n, ObstructionShape::TwoCliques, 3).unwrap();
            assert!(recognize_clique_split(&c).is_some());
            let c = gen_ham_path_obstruction(n, ObstructionShape::JoinPartition, 3).unwrap();
            assert!(recognize_join_partition(&c).is_some());
            assert!(2 * c.min_degree() + 2 >= n);
        }
        assert!(gen_ham_path_obstruction(7, ObstructionShape::TwoCliques, 0).is_err());
    }
}
