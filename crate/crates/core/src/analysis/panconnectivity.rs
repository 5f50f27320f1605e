//! Panconnectivity and Hamiltonian-connectivity checkers with certificates.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::extremal::ExtremalWitness;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{GraphCollection, SimpleGraph};
use crate::path::{ColoredPath, PathViolation};
use crate::search::{Outcome, SearchBudget, SearchStats, Searcher};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FailingTriple {
    pub x: usize,
    pub y: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub x: usize,
    pub y: usize,
    /// Rainbow distance in edges; `None` when no rainbow path joins the pair.
    pub distance: Option<usize>,
    /// Witness path for each vertex count `k` that was found.
    pub witnesses: BTreeMap<usize, ColoredPath>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub missing: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub undecided: Vec<usize>,
}

/// Result of a panconnectivity check. Pairs are unordered (`x < y`) and
/// listed lexicographically; the largest path length examined is `k_cap`,
/// which is `min(n, m + 1)` because a rainbow path uses each color at most once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PanconnectivityCertificate {
    pub n: usize,
    pub m: usize,
    pub verdict: Verdict,
    pub pairs: Vec<PairRecord>,
    pub failure: Option<FailingTriple>,
    pub extremal: Option<ExtremalWitness>,
    pub k_cap: usize,
    #[serde(skip)]
    pub stats: SearchStats,
}

impl PanconnectivityCertificate {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// Re-verifies every witness against the collection and checks that each
    /// record covers the expected range; returns the first problem found.
    pub fn check(&self, coll: &GraphCollection) -> std::result::Result<(), String> {
        let view = coll.view();
        for p in &self.pairs {
            for (&k, path) in &p.witnesses {
                path.verify(&view).map_err(|e: PathViolation| format!("pair ({}, {}) k = {k}: {e}", p.x, p.y))?;
                if path.len() != k || path.first() != p.x || path.last() != p.y {
                    return Err(format!("pair ({}, {}) k = {k}: witness has wrong shape", p.x, p.y));
                }
            }
            if self.verdict == Verdict::Holds {
                let d = p.distance.ok_or_else(|| format!("pair ({}, {}) has no distance", p.x, p.y))?;
                if (d + 1..=self.k_cap).any(|k| !p.witnesses.contains_key(&k)) {
                    return Err(format!("pair ({}, {}) lacks a witness", p.x, p.y));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn check_pair(
    coll: &GraphCollection,
    x: usize,
    y: usize,
    k_cap: usize,
    budget: SearchBudget,
) -> Result<(PairRecord, SearchStats)> {
    let mut s = Searcher::new(coll.view(), budget);
    let mut rec = PairRecord { x, y, distance: None, witnesses: BTreeMap::new(), missing: vec![], undecided: vec![] };
    match s.distance(x, y)? {
        Outcome::Found((d, p)) => {
            rec.distance = Some(d);
            rec.witnesses.insert(d + 1, p);
            for k in d + 2..=k_cap {
                match s.path(x, y, k, BitSet::EMPTY)? {
                    Outcome::Found(p) => {
                        rec.witnesses.insert(k, p);
                    }
                    Outcome::NotFound => rec.missing.push(k),
                    Outcome::Exhausted => rec.undecided.push(k),
                }
            }
        }
        // no rainbow path at all: already the 2-vertex query fails
        Outcome::NotFound => rec.missing.push(2),
        Outcome::Exhausted => rec.undecided.push(2),
    }
    Ok((rec, s.stats()))
}

/// Decides rainbow panconnectivity. A definite failure anywhere gives
/// `Fails` (with the lexicographically smallest definite failing triple);
/// otherwise any exhausted subquery gives `Unknown`.
pub fn is_rainbow_panconnected(coll: &GraphCollection, budget: SearchBudget) -> Result<PanconnectivityCertificate> {
    let n = coll.n();
    let k_cap = n.min(coll.m() + 1);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    // order-preserving parallel map, so the certificate is independent of scheduling
    let results: Vec<Result<(PairRecord, SearchStats)>> =
        pairs.par_iter().map(|&(x, y)| check_pair(coll, x, y, k_cap, budget)).collect();
    let mut records = Vec::with_capacity(results.len());
    let mut stats = SearchStats::default();
    for r in results {
        let (rec, st) = r?;
        stats.merge(&st);
        records.push(rec);
    }
    let failure = records.iter().filter_map(|r| r.missing.first().map(|&k| FailingTriple { x: r.x, y: r.y, k })).min();
    let verdict = if failure.is_some() {
        Verdict::Fails
    } else if records.iter().any(|r| !r.undecided.is_empty()) {
        Verdict::Unknown
    } else {
        Verdict::Holds
    };
    Ok(PanconnectivityCertificate { n, m: coll.m(), verdict, pairs: records, failure, extremal: None, k_cap, stats })
}

/// Classical panconnectivity of one graph, checked as `n - 1` identical colors
/// (with that many colors the rainbow constraint is vacuous for paths).
pub fn is_panconnected_single(g: &SimpleGraph, budget: SearchBudget) -> Result<Verdict> {
    if g.n() < 2 {
        return Err(Error::BadVertexCount(g.n()));
    }
    let coll = GraphCollection::uniform(g.clone(), g.n() - 1)?;
    Ok(is_rainbow_panconnected(&coll, budget)?.verdict)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamConnectivityReport {
    pub verdict: Verdict,
    pub witnesses: Vec<ColoredPath>,
    pub failure: Option<(usize, usize)>,
    #[serde(skip)]
    pub stats: SearchStats,
}

/// Rainbow Hamiltonian connectivity: a rainbow path through all vertices
/// joins every pair.
pub fn is_rainbow_ham_connected(coll: &GraphCollection, budget: SearchBudget) -> Result<HamConnectivityReport> {
    let n = coll.n();
    if coll.m() + 1 < n {
        return Err(Error::Precondition(format!("{} graphs cannot color a path on {n} vertices", coll.m())));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let run = |&(x, y): &(usize, usize)| {
        let mut s = Searcher::new(coll.view(), budget);
        s.ham_path(x, y).map(|o| (o, s.stats()))
    };
    let outcomes: Vec<Result<(Outcome<ColoredPath>, SearchStats)>> = pairs.par_iter().map(run).collect();
    let mut witnesses = Vec::new();
    let mut failure = None;
    let mut unknown = false;
    let mut stats = SearchStats::default();
    for (&(x, y), o) in pairs.iter().zip(outcomes) {
        let (o, st) = o?;
        stats.merge(&st);
        match o {
            Outcome::Found(p) => witnesses.push(p),
            Outcome::NotFound => {
                failure.get_or_insert((x, y));
            }
            Outcome::Exhausted => unknown = true,
        }
    }
    let verdict = if failure.is_some() {
        Verdict::Fails
    } else if unknown {
        Verdict::Unknown
    } else {
        Verdict::Holds
    };
    Ok(HamConnectivityReport { verdict, witnesses, failure, stats })
}
