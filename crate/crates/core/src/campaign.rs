//! Seeded verification campaigns: many generated instances per order `n`,
//! each checked against one statement, tallied into a reproducible report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    classify_ham_path_obstruction, is_rainbow_ham_connected, is_rainbow_panconnected, verify_dichotomy,
    DichotomyVerdict, ObstructionCase, Verdict,
};
use crate::error::{Error, Result};
use crate::graph::GraphCollection;
use crate::instances::{
    gen_ham_path_obstruction, gen_lemma_shape, gen_random_collection, split_seed, LemmaShape, ObstructionShape,
};
use crate::proof::{endpoint_bound_report, five_vertex_path, replay_proof, ConstructionError, Frame, ReplayVerdict};
use crate::search::{Outcome, SearchBudget, SearchStats, Searcher};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CampaignId {
    /// Single graphs with `δ ≥ (n+2)/2` are panconnected.
    SinglePanconnected,
    /// `n - 1` graphs with `δ ≥ (n+1)/2`: rainbow panconnected or the exceptional family.
    Dichotomy,
    /// Same hypothesis: a rainbow Hamiltonian path joins every pair.
    HamConnected,
    /// `n = 5`, four graphs with `δ ≥ 3`: panconnected, and the explicit 4-path construction works.
    FiveVertex,
    /// Degree bounds at the ends of a long rainbow path when `H` has no long rainbow cycle.
    EndpointBounds,
    /// `n` graphs with `δ ≥ n/2 - 1`: a rainbow Hamiltonian path or one of two obstructions.
    HamPathTrichotomy,
    /// The explicit constructions agree with exhaustive search.
    ProofReplay,
}

impl CampaignId {
    pub const ALL: [CampaignId; 7] = [
        CampaignId::SinglePanconnected,
        CampaignId::Dichotomy,
        CampaignId::HamConnected,
        CampaignId::FiveVertex,
        CampaignId::EndpointBounds,
        CampaignId::HamPathTrichotomy,
        CampaignId::ProofReplay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CampaignId::SinglePanconnected => "single-panconnected",
            CampaignId::Dichotomy => "dichotomy",
            CampaignId::HamConnected => "ham-connected",
            CampaignId::FiveVertex => "five-vertex",
            CampaignId::EndpointBounds => "endpoint-bounds",
            CampaignId::HamPathTrichotomy => "ham-path-trichotomy",
            CampaignId::ProofReplay => "proof-replay",
        }
    }

    fn check_n(self, n: usize) -> Result<()> {
        let ok = match self {
            CampaignId::SinglePanconnected | CampaignId::HamPathTrichotomy => (2..=16).contains(&n),
            CampaignId::Dichotomy | CampaignId::HamConnected => (3..=16).contains(&n),
            CampaignId::FiveVertex => n == 5,
            CampaignId::EndpointBounds => n >= 7 && n % 2 == 1 && n <= 15,
            CampaignId::ProofReplay => (4..=13).contains(&n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidQuery(format!("campaign {self} does not run at n = {n}")))
        }
    }
}

impl fmt::Display for CampaignId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CampaignId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CampaignId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidQuery(format!("unknown campaign `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialStatus {
    Pass,
    Fail,
    Inconclusive,
    /// The generated instance does not meet the statement's hypothesis.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub status: TrialStatus,
    pub detail: String,
    /// Command that reruns exactly this trial.
    pub reproducer: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub n: usize,
    pub trials: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetStats {
    pub node_limit: u64,
    /// Nodes and searches counted by the panconnectivity checks.
    pub searches: u64,
    pub nodes: u64,
    pub max_nodes: u64,
    pub exhausted: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: CampaignId,
    pub seed: u64,
    pub per_n: Vec<Tally>,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub skipped: usize,
    /// Failing and inconclusive trials; empty on a clean pass.
    pub failures: Vec<TrialRecord>,
    pub budget: BudgetStats,
    pub wall_time_ms: u64,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.fail == 0 && self.inconclusive == 0
    }

    /// JSON with the wall time zeroed, for determinism comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time_ms = 0;
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} pass, {} fail, {} inconclusive, {} skipped in {} ms\n",
            self.campaign, self.pass, self.fail, self.inconclusive, self.skipped, self.wall_time_ms
        );
        for t in &self.per_n {
            s += &format!(
                "  n = {:2}: {} trials, {} pass, {} fail, {} inconclusive, {} skipped\n",
                t.n, t.trials, t.pass, t.fail, t.inconclusive, t.skipped
            );
        }
        for f in &self.failures {
            s +=
                &format!("  {:?} n = {} seed = {}: {}\n    rerun: {}\n", f.status, f.n, f.seed, f.detail, f.reproducer);
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub campaign: CampaignId,
    pub ns: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub budget: SearchBudget,
}

/// Seed of trial `t` at order `n`; independent of the other orders requested.
pub fn trial_seed(base: u64, n: usize, t: usize) -> u64 {
    split_seed(split_seed(base, n as u64), t as u64)
}

struct TrialOutcome {
    status: TrialStatus,
    detail: String,
    stats: SearchStats,
}

fn outcome(status: TrialStatus, detail: impl Into<String>) -> TrialOutcome {
    TrialOutcome { status, detail: detail.into(), stats: SearchStats::default() }
}

/// Runs one trial. Generation errors are reported as inconclusive rather
/// than failures: no statement was checked.
pub fn run_trial(campaign: CampaignId, n: usize, seed: u64, budget: SearchBudget) -> (TrialStatus, String) {
    let o = trial(campaign, n, seed, budget);
    (o.status, o.detail)
}

fn trial(campaign: CampaignId, n: usize, seed: u64, budget: SearchBudget) -> TrialOutcome {
    match trial_inner(campaign, n, seed, budget) {
        Ok(o) => o,
        Err(e) => outcome(TrialStatus::Inconclusive, format!("error: {e}")),
    }
}

fn from_verdict(v: Verdict, what: &str) -> TrialOutcome {
    match v {
        Verdict::Holds => outcome(TrialStatus::Pass, ""),
        Verdict::Fails => outcome(TrialStatus::Fail, format!("{what} fails")),
        Verdict::Unknown => outcome(TrialStatus::Inconclusive, format!("{what}: search budget exhausted")),
    }
}

fn trial_inner(campaign: CampaignId, n: usize, seed: u64, budget: SearchBudget) -> Result<TrialOutcome> {
    Ok(match campaign {
        CampaignId::SinglePanconnected => {
            // δ ≥ (n+2)/2, rounded up
            let delta = (n + 3) / 2;
            let g = gen_random_collection(n, 1, delta, seed)?.into_graphs().remove(0);
            let coll = GraphCollection::uniform(g, n - 1)?;
            let cert = is_rainbow_panconnected(&coll, budget)?;
            let mut o = from_verdict(cert.verdict, "panconnectivity");
            if let Some(f) = cert.failure {
                o.detail = format!("no {}-path between {} and {}", f.k, f.x, f.y);
            }
            o.stats = cert.stats;
            o
        }
        CampaignId::Dichotomy => {
            let coll = gen_random_collection(n, n - 1, (n + 2) / 2, seed)?;
            let (verdict, cert) = verify_dichotomy(&coll, budget)?;
            let mut o = match verdict {
                DichotomyVerdict::HoldsPanconnected | DichotomyVerdict::HoldsExtremal { .. } => {
                    outcome(TrialStatus::Pass, "")
                }
                DichotomyVerdict::Violated { failure, recognition } => outcome(
                    TrialStatus::Fail,
                    format!(
                        "no {}-path between {} and {}; not exceptional: {recognition}",
                        failure.k, failure.x, failure.y
                    ),
                ),
                DichotomyVerdict::Inconclusive => outcome(TrialStatus::Inconclusive, "search budget exhausted"),
            };
            o.stats = cert.stats;
            o
        }
        CampaignId::HamConnected => {
            let coll = gen_random_collection(n, n - 1, (n + 2) / 2, seed)?;
            let report = is_rainbow_ham_connected(&coll, budget)?;
            let mut o = from_verdict(report.verdict, "Hamiltonian connectivity");
            if let Some((x, y)) = report.failure {
                o.detail = format!("no rainbow Hamiltonian path between {x} and {y}");
            }
            o.stats = report.stats;
            o
        }
        CampaignId::FiveVertex => {
            let coll = gen_random_collection(5, 4, 3, seed)?;
            let cert = is_rainbow_panconnected(&coll, budget)?;
            let mut o = from_verdict(cert.verdict, "panconnectivity");
            o.stats = cert.stats;
            if o.status == TrialStatus::Pass {
                for x in 0..5 {
                    for y in (0..5).filter(|&y| y != x) {
                        if let Err(e) = five_vertex_path(&coll, x, y) {
                            return Ok(outcome(TrialStatus::Fail, format!("4-path construction for ({x}, {y}): {e}")));
                        }
                    }
                }
            }
            o
        }
        CampaignId::EndpointBounds => {
            let planted = gen_lemma_shape(LemmaShape::PathEnds, n, seed)?;
            let coll = &planted.collection;
            let frame = Frame { x: planted.x, y: planted.y, z: planted.z, c: planted.c };
            let path = planted.path.as_ref().expect("path-ends instances carry their path");
            match endpoint_bound_report(coll, &frame, path, budget) {
                Ok(r) if r.holds() => outcome(TrialStatus::Pass, ""),
                Ok(r) => outcome(
                    TrialStatus::Fail,
                    format!("end degrees {} and {} violate the bounds", r.first_degree, r.last_degree),
                ),
                Err(ConstructionError::ImpliedCycle { reason, .. }) => outcome(TrialStatus::Skipped, reason),
                Err(ConstructionError::Exhausted(w)) => outcome(TrialStatus::Inconclusive, w),
                Err(e) => outcome(TrialStatus::Fail, e.to_string()),
            }
        }
        CampaignId::HamPathTrichotomy => trichotomy_trial(n, seed, budget)?,
        CampaignId::ProofReplay => {
            let coll = gen_random_collection(n, n - 1, (n + 2) / 2, seed)?;
            let cert = replay_proof(&coll, budget).map_err(|e| Error::Precondition(e.to_string()))?;
            if cert.discrepancy_count > 0 {
                let first = cert.pairs.iter().flat_map(|p| p.discrepancies.iter().map(move |d| (p.x, p.y, d))).next();
                let (x, y, d) = first.expect("counted");
                outcome(
                    TrialStatus::Fail,
                    format!("{} discrepancies; ({x}, {y}) k = {}: {}", cert.discrepancy_count, d.k, d.reason),
                )
            } else {
                match cert.verdict {
                    ReplayVerdict::Constructed | ReplayVerdict::Exceptional | ReplayVerdict::Delegated => {
                        outcome(TrialStatus::Pass, "")
                    }
                    ReplayVerdict::Violated => outcome(TrialStatus::Fail, "a pair lacks a path length"),
                    ReplayVerdict::Inconclusive => outcome(TrialStatus::Inconclusive, "search budget exhausted"),
                }
            }
        }
    })
}

/// Trials cycle through a random instance and, for even `n`, the two
/// constructed obstructions.
fn trichotomy_trial(n: usize, seed: u64, budget: SearchBudget) -> Result<TrialOutcome> {
    let kind = if n % 2 == 0 && n >= 4 { seed % 3 } else { 0 };
    let (coll, expected) = match kind {
        0 => {
            // δ ≥ n/2 - 1, rounded up
            let delta = ((n + 1) / 2).saturating_sub(1).max(1);
            (gen_random_collection(n, n, delta, seed)?, None)
        }
        1 => (gen_ham_path_obstruction(n, ObstructionShape::TwoCliques, seed)?, Some(ObstructionCase::TwoCliques)),
        _ => {
            (gen_ham_path_obstruction(n, ObstructionShape::JoinPartition, seed)?, Some(ObstructionCase::JoinPartition))
        }
    };
    let report = classify_ham_path_obstruction(&coll, budget)?;
    Ok(match (expected, report.case) {
        (_, ObstructionCase::Inconclusive) => outcome(TrialStatus::Inconclusive, "search budget exhausted"),
        (None, ObstructionCase::Unresolved) => {
            outcome(TrialStatus::Fail, "no rainbow Hamiltonian path and no recognized obstruction")
        }
        (None, _) => outcome(TrialStatus::Pass, ""),
        (Some(want), got) if want != got => {
            outcome(TrialStatus::Fail, format!("classified {got:?}, expected {want:?}"))
        }
        (Some(_), _) => match Searcher::new(coll.view(), budget).any_ham_path()? {
            Outcome::NotFound => outcome(TrialStatus::Pass, ""),
            Outcome::Found(p) => {
                outcome(TrialStatus::Fail, format!("obstruction has a rainbow Hamiltonian path {:?}", p.vertices))
            }
            Outcome::Exhausted => outcome(TrialStatus::Inconclusive, "search budget exhausted"),
        },
    })
}

pub fn reproducer(campaign: CampaignId, n: usize, seed: u64, budget: SearchBudget) -> String {
    format!("rainbow verify --campaign {campaign} --n {n} --trial-seed {seed} --budget {}", budget.node_limit())
}

/// Runs `trials` trials for every `n` in parallel; output order and content
/// depend only on the configuration.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    for &n in &config.ns {
        config.campaign.check_n(n)?;
    }
    let start = Instant::now();
    let jobs: Vec<(usize, usize, u64)> = config
        .ns
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t, trial_seed(config.seed, n, t))))
        .collect();
    let results: Vec<TrialOutcome> =
        jobs.par_iter().map(|&(n, _, seed)| trial(config.campaign, n, seed, config.budget)).collect();
    Ok(assemble(config, &jobs, results, start))
}

/// A single trial with an explicit seed, as printed in reproducers.
pub fn run_single_trial(campaign: CampaignId, n: usize, seed: u64, budget: SearchBudget) -> Result<CampaignReport> {
    campaign.check_n(n)?;
    let config = CampaignConfig { campaign, ns: vec![n], trials: 1, seed, budget };
    let start = Instant::now();
    let jobs = vec![(n, 0, seed)];
    let results = vec![trial(campaign, n, seed, budget)];
    Ok(assemble(&config, &jobs, results, start))
}

fn assemble(
    config: &CampaignConfig,
    jobs: &[(usize, usize, u64)],
    results: Vec<TrialOutcome>,
    start: Instant,
) -> CampaignReport {
    let mut per_n: Vec<Tally> = config.ns.iter().map(|&n| Tally { n, ..Tally::default() }).collect();
    let mut failures = Vec::new();
    let mut budget = BudgetStats { node_limit: config.budget.node_limit(), ..BudgetStats::default() };
    for (&(n, t, seed), o) in jobs.iter().zip(results) {
        let tally = per_n.iter_mut().find(|x| x.n == n).expect("n listed");
        tally.trials += 1;
        match o.status {
            TrialStatus::Pass => tally.pass += 1,
            TrialStatus::Fail => tally.fail += 1,
            TrialStatus::Inconclusive => tally.inconclusive += 1,
            TrialStatus::Skipped => tally.skipped += 1,
        }
        budget.searches += o.stats.searches;
        budget.nodes += o.stats.nodes;
        budget.max_nodes = budget.max_nodes.max(o.stats.max_nodes);
        budget.exhausted += o.stats.exhausted;
        if matches!(o.status, TrialStatus::Fail | TrialStatus::Inconclusive) {
            failures.push(TrialRecord {
                n,
                trial: t,
                seed,
                status: o.status,
                detail: o.detail,
                reproducer: reproducer(config.campaign, n, seed, config.budget),
            });
        }
    }
    let sum = |f: fn(&Tally) -> usize| per_n.iter().map(f).sum();
    CampaignReport {
        campaign: config.campaign,
        seed: config.seed,
        pass: sum(|t| t.pass),
        fail: sum(|t| t.fail),
        inconclusive: sum(|t| t.inconclusive),
        skipped: sum(|t| t.skipped),
        per_n,
        failures,
        budget,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(campaign: CampaignId, ns: Vec<usize>, trials: usize) -> CampaignConfig {
        CampaignConfig { campaign, ns, trials, seed: 5, budget: SearchBudget::default() }
    }

    #[test]
    fn ids_round_trip() {
        for c in CampaignId::ALL {
            assert_eq!(c.name().parse::<CampaignId>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
        assert!("panconnected".parse::<CampaignId>().is_err());
    }

    #[test]
    fn small_campaigns_pass() {
        for (c, ns) in [
            (CampaignId::SinglePanconnected, vec![4, 5, 6]),
            (CampaignId::Dichotomy, vec![5, 7]),
            (CampaignId::HamConnected, vec![5, 7]),
            (CampaignId::FiveVertex, vec![5]),
            (CampaignId::EndpointBounds, vec![7, 9]),
            (CampaignId::HamPathTrichotomy, vec![4, 6]),
            (CampaignId::ProofReplay, vec![7]),
        ] {
            let r = run_campaign(&config(c, ns.clone(), 6)).unwrap();
            assert!(r.passed(), "{}", r.summary());
            assert_eq!(r.pass + r.skipped, 6 * ns.len(), "{c}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let c = config(CampaignId::Dichotomy, vec![5, 7], 5);
        assert_eq!(run_campaign(&c).unwrap().canonical_json(), run_campaign(&c).unwrap().canonical_json());
    }

    #[test]
    fn exhausted_budget_is_inconclusive_with_reproducer() {
        let mut c = config(CampaignId::HamConnected, vec![7], 3);
        c.budget = SearchBudget::new(1).unwrap();
        let r = run_campaign(&c).unwrap();
        assert!(!r.passed());
        assert_eq!(r.inconclusive, 3);
        let f = &r.failures[0];
        assert_eq!(
            f.reproducer,
            format!("rainbow verify --campaign ham-connected --n 7 --trial-seed {} --budget 1", f.seed)
        );
        let again = run_single_trial(CampaignId::HamConnected, 7, f.seed, c.budget).unwrap();
        assert_eq!(again.inconclusive, 1);
    }

    #[test]
    fn per_n_seeds_do_not_depend_on_other_orders() {
        assert_eq!(trial_seed(3, 7, 2), trial_seed(3, 7, 2));
        assert_ne!(trial_seed(3, 7, 2), trial_seed(3, 9, 2));
        let a = run_campaign(&config(CampaignId::Dichotomy, vec![7], 3)).unwrap();
        let b = run_campaign(&config(CampaignId::Dichotomy, vec![5, 7], 3)).unwrap();
        assert_eq!(a.per_n[0], b.per_n[1]);
    }

    #[test]
    fn rejects_orders_outside_a_campaign() {
        assert!(run_campaign(&config(CampaignId::FiveVertex, vec![7], 1)).is_err());
        assert!(run_campaign(&config(CampaignId::EndpointBounds, vec![8], 1)).is_err());
    }
}
