//! Random collections with a minimum-degree floor.
//!
//! Not uniform over collections meeting the floor: edges are first included
//! independently with probability `(δ+1)/n`, then deficient vertices gain
//! random incident edges. The statements being tested are universal, so any
//! sampler is a valid counterexample search.

use rand::seq::SliceRandom;
use rand::Rng;

use super::rng;
use crate::bitset::{BitSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::graph::{GraphCollection, SimpleGraph};

pub fn gen_random_collection(n: usize, m: usize, min_degree: usize, seed: u64) -> Result<GraphCollection> {
    if n == 0 || n > MAX_ELEMENTS {
        return Err(Error::BadVertexCount(n));
    }
    if m == 0 || m > MAX_ELEMENTS {
        return Err(Error::BadGraphCount(m));
    }
    if min_degree >= n {
        return Err(Error::Infeasible(format!("minimum degree {min_degree} needs more than {n} vertices")));
    }
    let p = ((min_degree + 1) as f64 / n as f64).min(1.0);
    let graphs = (0..m)
        .map(|i| {
            let mut r = rng(seed, i as u64);
            let mut g = SimpleGraph::empty(n).expect("n validated");
            for u in 0..n {
                for v in u + 1..n {
                    if r.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            repair_min_degree(&mut g, min_degree, &[], &mut r);
            g
        })
        .collect();
    GraphCollection::new(graphs)
}

/// Adds random edges at deficient vertices (in increasing id order) until
/// every degree reaches `min_degree`, never adding a `forbidden` pair.
/// Returns `false` if some vertex cannot be repaired.
pub fn repair_min_degree(
    g: &mut SimpleGraph,
    min_degree: usize,
    forbidden: &[(usize, usize)],
    r: &mut impl Rng,
) -> bool {
    let n = g.n();
    let mut ok = true;
    for v in 0..n {
        while g.degree(v) < min_degree {
            let mut candidates: Vec<usize> = BitSet::full(n)
                .difference(g.neighbors(v))
                .iter()
                .filter(|&u| u != v && !forbidden.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)))
                .collect();
            // prefer partners that are themselves short of the floor
            let short: Vec<usize> = candidates.iter().copied().filter(|&u| g.degree(u) < min_degree).collect();
            if !short.is_empty() {
                candidates = short;
            }
            match candidates.choose(r) {
                Some(&u) => g.add_edge(u, v),
                None => {
                    ok = false;
                    break;
                }
            }
        }
    }
    ok
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meets_degree_floor() {
        for seed in 0..20 {
            let c = gen_random_collection(7, 6, 4, seed).unwrap();
            assert!(c.graphs().iter().all(|g| g.min_degree() >= 4));
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = gen_random_collection(9, 8, 5, 1).unwrap();
        let b = gen_random_collection(9, 8, 5, 1).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_ne!(a.to_text(), gen_random_collection(9, 8, 5, 2).unwrap().to_text());
    }

    #[test]
    fn infeasible_degree_rejected() {
        assert!(matches!(gen_random_collection(7, 6, 7, 1), Err(Error::Infeasible(_))));
        assert!(gen_random_collection(7, 6, 6, 1).unwrap().graphs().iter().all(SimpleGraph::is_complete));
    }

    #[test]
    fn repair_respects_forbidden() {
        let mut g = SimpleGraph::empty(4).unwrap();
        let mut r = rng(0, 0);
        assert!(!repair_min_degree(&mut g, 3, &[(0, 1)], &mut r));
        assert!(!g.has_edge(0, 1));
        assert_eq!(g.degree(2), 3);
    }
}
