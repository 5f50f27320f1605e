//! Replays the constructive argument for every pair and every length,
//! checking each emitted path and comparing failures with exhaustive search.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::common::{
    check_degree_hypotheses, find_cycle, hypothesis, BranchTrace, ConstructionError, ConstructionResult, Draft, Frame,
    TraceHead,
};
use super::join::{join_partition_k_path, JoinOutcome};
use super::near_cycle::near_cycle_k_path;
use super::path_ends::PathEndsPlan;
use super::rotation::rotation_k_path;
use super::short::{construct_short_paths, five_vertex_path};
use super::two_cliques::two_clique_k_path;
use crate::analysis::{find_clique_split, find_join_partition, find_join_partition_exhaustive, ExtremalWitness};
use crate::bitset::BitSet;
use crate::error::Error;
use crate::graph::GraphCollection;
use crate::path::{ColoredCycle, ColoredPath};
use crate::search::{Outcome, SearchBudget, Searcher};

/// Which construction covers the lengths strictly between 3 and `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Even `n`: every length is settled by search.
    Search,
    FiveVertex,
    /// `x` sees every other vertex in every graph: cut a Hamiltonian path.
    TruncatedHamPath,
    Rotation,
    NearCycle,
    TwoCliques,
    PathEnds,
    JoinPartition,
    /// None of the structures applied; every length fell back to search.
    Unclassified,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Search => "search",
            Route::FiveVertex => "five-vertex",
            Route::TruncatedHamPath => "truncated-ham-path",
            Route::Rotation => "rotation",
            Route::NearCycle => "near-cycle",
            Route::TwoCliques => "two-cliques",
            Route::PathEnds => "path-ends",
            Route::JoinPartition => "join-partition",
            Route::Unclassified => "unclassified",
        }
    }
}

/// A length where the construction failed but search found a path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub k: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalReport {
    pub witness: ExtremalWitness,
    /// Whether the family recognizer accepts the collection as well.
    pub recognized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReplay {
    pub x: usize,
    pub y: usize,
    pub route: Route,
    pub frame: Option<Frame>,
    /// The graph left out of `H` by the chosen construction, if any.
    pub j: Option<usize>,
    pub paths: BTreeMap<usize, ColoredPath>,
    pub traces: Vec<BranchTrace>,
    pub discrepancies: Vec<Discrepancy>,
    /// Lengths in `3..=n` with no rainbow path at all.
    pub missing: Vec<usize>,
    /// Lengths where search ran out of budget.
    pub inconclusive: Vec<usize>,
    pub exceptional: Option<ExceptionalReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplayVerdict {
    /// Every pair has a path of every length in `3..=n`.
    Constructed,
    /// Some pair ran into the exceptional structure and lacks a length.
    Exceptional,
    /// Even `n`: no construction applies, search settled every length.
    Delegated,
    /// A length is missing with no exceptional structure in sight.
    Violated,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayCertificate {
    pub n: usize,
    pub m: usize,
    pub verdict: ReplayVerdict,
    pub discrepancy_count: usize,
    pub routes: BTreeMap<String, usize>,
    pub pairs: Vec<PairReplay>,
}

enum Plan {
    Search,
    FiveVertex,
    Truncated(Option<ColoredPath>),
    Rotation { frame: Frame, j: usize, cycle: ColoredCycle },
    NearCycle { frame: Frame, j: usize, cycle: ColoredCycle },
    TwoCliques { frame: Frame, j: usize, halves: (Vec<usize>, Vec<usize>) },
    PathEnds { frame: Frame, j: usize, plan: Box<ConstructionResult<PathEndsPlan>> },
    Join { frame: Frame, parts: (Vec<usize>, Vec<usize>) },
    Unclassified { frame: Frame, reason: String },
}

impl Plan {
    fn route(&self) -> Route {
        match self {
            Plan::Search => Route::Search,
            Plan::FiveVertex => Route::FiveVertex,
            Plan::Truncated(_) => Route::TruncatedHamPath,
            Plan::Rotation { .. } => Route::Rotation,
            Plan::NearCycle { .. } => Route::NearCycle,
            Plan::TwoCliques { .. } => Route::TwoCliques,
            Plan::PathEnds { .. } => Route::PathEnds,
            Plan::Join { .. } => Route::JoinPartition,
            Plan::Unclassified { .. } => Route::Unclassified,
        }
    }

    fn frame_and_j(&self) -> (Option<Frame>, Option<usize>) {
        match self {
            Plan::Rotation { frame, j, .. } | Plan::NearCycle { frame, j, .. } | Plan::TwoCliques { frame, j, .. } => {
                (Some(*frame), Some(*j))
            }
            Plan::PathEnds { frame, j, .. } => (Some(*frame), Some(*j)),
            Plan::Join { frame, .. } | Plan::Unclassified { frame, .. } => (Some(*frame), None),
            _ => (None, None),
        }
    }
}

/// Picks the construction for the pair, in the order the argument tries them.
fn plan(
    coll: &GraphCollection,
    x: usize,
    y: usize,
    ham: Option<&ColoredPath>,
    budget: SearchBudget,
) -> ConstructionResult<Plan> {
    let n = coll.n();
    if n % 2 == 0 {
        return Ok(Plan::Search);
    }
    if n == 5 {
        return Ok(Plan::FiveVertex);
    }
    let Some(frame) = Frame::choose(coll, x, y) else {
        return Ok(Plan::Truncated(ham.cloned()));
    };
    let h = frame.h_view(coll);
    let js: Vec<usize> = h.colors().to_vec();
    for &j in &js {
        if let Some(cycle) =
            find_cycle(&frame.h_without(coll, j), n - 3, budget, "looking for a Hamiltonian cycle of H")?
        {
            return Ok(Plan::Rotation { frame, j, cycle });
        }
    }
    for &j in &js {
        if let Some(cycle) =
            find_cycle(&frame.h_without(coll, j), n - 4, budget, "looking for a near-Hamiltonian cycle of H")?
        {
            return Ok(Plan::NearCycle { frame, j, cycle });
        }
    }
    let half = (n - 3) / 2;
    for &j in &js {
        if let Some((a, b)) = find_clique_split(&frame.h_without(coll, j)) {
            if a.len() == half && b.len() == half {
                return Ok(Plan::TwoCliques { frame, j, halves: (a.to_vec(), b.to_vec()) });
            }
        }
    }
    for &j in &js {
        match Searcher::new(frame.h_without(coll, j), budget).any_ham_path()? {
            Outcome::Found(path) => {
                let plan = PathEndsPlan::new(coll, &frame, j, &path, budget);
                return Ok(Plan::PathEnds { frame, j, plan: Box::new(plan) });
            }
            Outcome::NotFound => {}
            Outcome::Exhausted => {
                return Err(ConstructionError::Exhausted("looking for a Hamiltonian path of H".into()))
            }
        }
    }
    let size = (n - 1) / 2;
    if let Some((f, i)) = find_join_partition(&h, size).or_else(|| find_join_partition_exhaustive(&h, size)) {
        return Ok(Plan::Join { frame, parts: (f.to_vec(), i.to_vec()) });
    }
    Ok(Plan::Unclassified { frame, reason: "H matches none of the covered structures".into() })
}

enum Step {
    Built(ColoredPath, BranchTrace),
    Exceptional(ExceptionalReport),
}

fn trace_of<S>(lp: super::common::LemmaPath<S>) -> Step {
    Step::Built(lp.path, lp.trace)
}

fn step(coll: &GraphCollection, plan: &Plan, x: usize, y: usize, k: usize) -> ConstructionResult<Step> {
    match plan {
        Plan::Search => unreachable!("even n never constructs"),
        Plan::FiveVertex => five_vertex_path(coll, x, y).map(trace_of),
        Plan::Truncated(None) => Err(ConstructionError::NoPath("no rainbow Hamiltonian path to truncate".into())),
        Plan::Truncated(Some(ham)) => {
            let n = coll.n();
            let mut vertices = vec![x];
            vertices.extend(&ham.vertices[n - k + 1..]);
            let mut hints = vec![None];
            hints.extend(ham.colors[n - k + 1..].iter().map(|&c| Some(c)));
            let draft = Draft::new("suffix", vertices, hints);
            let head = TraceHead { lemma: "truncated-ham-path", case: "suffix".into(), subcase: None, k };
            super::common::finish(coll, head, serde_json::json!({ "ham_path": ham }), &[draft], (x, y), Vec::new())
                .map(trace_of)
        }
        Plan::Rotation { frame, j, cycle } => rotation_k_path(coll, frame, *j, cycle, k).map(trace_of),
        Plan::NearCycle { frame, j, cycle } => near_cycle_k_path(coll, frame, *j, cycle, k).map(trace_of),
        Plan::TwoCliques { frame, j, halves } => {
            two_clique_k_path(coll, frame, *j, (&halves.0, &halves.1), k).map(trace_of)
        }
        Plan::PathEnds { plan, .. } => match plan.as_ref() {
            Ok(p) => p.k_path(coll, k).map(trace_of),
            Err(e) => Err(e.clone()),
        },
        Plan::Join { frame, parts } => match join_partition_k_path(coll, frame, (&parts.0, &parts.1), k)? {
            JoinOutcome::Path(lp) => Ok(trace_of(*lp)),
            JoinOutcome::Exceptional { witness, recognized, .. } => {
                Ok(Step::Exceptional(ExceptionalReport { witness, recognized }))
            }
        },
        Plan::Unclassified { reason, .. } => Err(ConstructionError::NoPath(reason.clone())),
    }
}

fn check_pair(coll: &GraphCollection, x: usize, y: usize) -> ConstructionResult<()> {
    let n = coll.n();
    if x >= n || y >= n || x == y {
        return Err(Error::InvalidQuery(format!("bad endpoints ({x}, {y}) for n = {n}")).into());
    }
    Ok(())
}

fn check_replay_hypotheses(coll: &GraphCollection) -> ConstructionResult<()> {
    let n = coll.n();
    if n % 2 == 1 {
        return check_degree_hypotheses(coll);
    }
    if n < 4 || coll.m() + 1 != n || 2 * coll.min_degree() < n + 1 {
        return hypothesis(format!(
            "replay needs m = n - 1 and minimum degree ≥ (n+1)/2 (n = {n}, m = {}, δ = {})",
            coll.m(),
            coll.min_degree()
        ));
    }
    Ok(())
}

struct Recorder<'a> {
    coll: &'a GraphCollection,
    budget: SearchBudget,
    rep: PairReplay,
}

impl Recorder<'_> {
    fn built(&mut self, k: usize, path: ColoredPath, trace: BranchTrace) {
        let ok = path.verify(&self.coll.view()).is_ok()
            && path.len() == k
            && path.first() == self.rep.x
            && path.last() == self.rep.y;
        if ok {
            self.rep.paths.insert(k, path);
            self.rep.traces.push(trace);
        } else {
            self.fallback(k, Some(format!("emitted path {:?} does not verify", path.vertices)));
        }
    }

    /// Exhaustive search for length `k`; `reason` is why no construction is
    /// available, and becomes a discrepancy if search succeeds.
    fn fallback(&mut self, k: usize, reason: Option<String>) {
        let (x, y) = (self.rep.x, self.rep.y);
        let outcome = Searcher::new(self.coll.view(), self.budget).path(x, y, k, BitSet::EMPTY);
        let mut trace = BranchTrace {
            lemma: "search".into(),
            case: "fallback".into(),
            subcase: None,
            sets: serde_json::Value::Null,
            k,
            path: None,
            notes: reason.iter().cloned().collect(),
        };
        match outcome {
            Ok(Outcome::Found(path)) => {
                if let Some(reason) = reason {
                    self.rep.discrepancies.push(Discrepancy { k, reason });
                }
                trace.path = Some(path.clone());
                self.rep.paths.insert(k, path);
            }
            Ok(Outcome::NotFound) => self.rep.missing.push(k),
            Ok(Outcome::Exhausted) | Err(_) => self.rep.inconclusive.push(k),
        }
        self.rep.traces.push(trace);
    }
}

/// Builds a rainbow path of every length `3..=n` (and 2 when adjacent)
/// between `x` and `y` by the explicit constructions.
pub fn constructive_panconnect(
    coll: &GraphCollection,
    x: usize,
    y: usize,
    budget: SearchBudget,
) -> ConstructionResult<PairReplay> {
    check_replay_hypotheses(coll)?;
    check_pair(coll, x, y)?;
    let n = coll.n();
    let rep = PairReplay {
        x,
        y,
        route: Route::Search,
        frame: None,
        j: None,
        paths: BTreeMap::new(),
        traces: Vec::new(),
        discrepancies: Vec::new(),
        missing: Vec::new(),
        inconclusive: Vec::new(),
        exceptional: None,
    };
    let mut rec = Recorder { coll, budget, rep };

    if let Some(c) = coll.edge_colors(x, y).first() {
        let path = ColoredPath::new(vec![x, y], vec![c]);
        let trace = simple_trace("short", "edge", 2, &path);
        rec.built(2, path, trace);
    }

    let ham = match Searcher::new(coll.view(), budget).ham_path(x, y)? {
        Outcome::Found(p) => Some(p),
        _ => None,
    };

    let plan = match plan(coll, x, y, ham.as_ref(), budget) {
        Ok(p) => p,
        Err(ConstructionError::Exhausted(what)) => {
            for k in 3..=n {
                rec.fallback(k, None);
            }
            rec.rep.traces.push(BranchTrace {
                lemma: "dispatch".into(),
                case: "exhausted".into(),
                subcase: None,
                sets: serde_json::Value::Null,
                k: 0,
                path: None,
                notes: vec![what],
            });
            rec.rep.route = Route::Unclassified;
            return Ok(rec.rep);
        }
        Err(e) => return Err(e),
    };
    rec.rep.route = plan.route();
    (rec.rep.frame, rec.rep.j) = plan.frame_and_j();

    if matches!(plan, Plan::Search) {
        for k in 3..=n {
            rec.fallback(k, None);
        }
        return Ok(rec.rep);
    }

    match construct_short_paths(coll, x, y) {
        Ok(sp) => {
            let trace = simple_trace("short", "common-neighbor", 3, &sp.three);
            rec.built(3, sp.three, trace);
        }
        Err(e) => rec.fallback(3, Some(e.to_string())),
    }
    for k in 4..n {
        match step(coll, &plan, x, y, k) {
            Ok(Step::Built(path, trace)) => rec.built(k, path, trace),
            Ok(Step::Exceptional(report)) => {
                rec.rep.exceptional = Some(report);
                rec.fallback(k, None);
            }
            Err(ConstructionError::Exhausted(_)) => rec.fallback(k, None),
            Err(e) => rec.fallback(k, Some(e.to_string())),
        }
    }
    match ham {
        Some(p) => {
            let trace = simple_trace("search", "hamiltonian", n, &p);
            rec.built(n, p, trace);
        }
        None => rec.fallback(n, None),
    }
    Ok(rec.rep)
}

fn simple_trace(lemma: &str, case: &str, k: usize, path: &ColoredPath) -> BranchTrace {
    BranchTrace {
        lemma: lemma.into(),
        case: case.into(),
        subcase: None,
        sets: serde_json::Value::Null,
        k,
        path: Some(path.clone()),
        notes: Vec::new(),
    }
}

/// Replays every pair `x < y`.
pub fn replay_proof(coll: &GraphCollection, budget: SearchBudget) -> ConstructionResult<ReplayCertificate> {
    check_replay_hypotheses(coll)?;
    let n = coll.n();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let pairs: Vec<PairReplay> = pairs
        .into_par_iter()
        .map(|(x, y)| constructive_panconnect(coll, x, y, budget))
        .collect::<ConstructionResult<_>>()?;
    let discrepancy_count = pairs.iter().map(|p| p.discrepancies.len()).sum();
    let mut routes = BTreeMap::new();
    for p in &pairs {
        *routes.entry(p.route.name().to_string()).or_insert(0) += 1;
    }
    let missing = pairs.iter().any(|p| !p.missing.is_empty());
    let verdict = if pairs.iter().any(|p| !p.inconclusive.is_empty()) {
        ReplayVerdict::Inconclusive
    } else if n % 2 == 0 {
        if missing {
            ReplayVerdict::Violated
        } else {
            ReplayVerdict::Delegated
        }
    } else if !missing {
        ReplayVerdict::Constructed
    } else if pairs.iter().all(|p| p.missing.is_empty() || p.exceptional.is_some()) {
        ReplayVerdict::Exceptional
    } else {
        ReplayVerdict::Violated
    };
    Ok(ReplayCertificate { n, m: coll.m(), verdict, discrepancy_count, routes, pairs })
}
