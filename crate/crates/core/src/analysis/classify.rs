//! Hamiltonian-path obstruction classification and the panconnectivity
//! dichotomy check for `n - 1` graphs of high minimum degree.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::extremal::{
    recognize_clique_split, recognize_f_family_explained, recognize_join_partition, ExtremalWitness,
};
use super::panconnectivity::{is_rainbow_panconnected, FailingTriple, PanconnectivityCertificate, Verdict};
use crate::error::{Error, Result};
use crate::graph::GraphCollection;
use crate::path::ColoredPath;
use crate::search::{Outcome, SearchBudget, Searcher};

/// Which alternative of the Hamiltonian-path trichotomy applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionCase {
    /// A rainbow Hamiltonian path exists.
    HamPath,
    /// Every graph is the same union of two disjoint cliques.
    TwoCliques,
    /// An independent set `I` with `|I| = |H| + 2` is joined to the rest `H`.
    JoinPartition,
    /// No rainbow Hamiltonian path and no recognized structure.
    Unresolved,
    /// The search budget ran out.
    Inconclusive,
}

impl fmt::Display for ObstructionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObstructionCase::HamPath => "(i)",
            ObstructionCase::TwoCliques => "(ii)",
            ObstructionCase::JoinPartition => "(iii)",
            ObstructionCase::Unresolved => "unresolved",
            ObstructionCase::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub case: ObstructionCase,
    /// `false` when some graph has minimum degree below `n/2 - 1`.
    pub within_hypothesis: bool,
    pub witness: Option<ExtremalWitness>,
    pub path: Option<ColoredPath>,
}

/// Classifies a collection of `n` graphs on `n` vertices: structural
/// recognizers run first, then a rainbow Hamiltonian path search.
pub fn classify_ham_path_obstruction(coll: &GraphCollection, budget: SearchBudget) -> Result<ObstructionReport> {
    let n = coll.n();
    if coll.m() != n {
        return Err(Error::Precondition(format!("expected {n} graphs on {n} vertices, got {}", coll.m())));
    }
    let within_hypothesis = 2 * coll.min_degree() + 2 >= n;
    let report = |case, witness, path| ObstructionReport { case, within_hypothesis, witness, path };
    if let Some(w) = recognize_clique_split(coll) {
        return Ok(report(ObstructionCase::TwoCliques, Some(w), None));
    }
    if let Some(w) = recognize_join_partition(coll) {
        return Ok(report(ObstructionCase::JoinPartition, Some(w), None));
    }
    Ok(match Searcher::new(coll.view(), budget).any_ham_path()? {
        Outcome::Found(p) => report(ObstructionCase::HamPath, None, Some(p)),
        Outcome::NotFound => report(ObstructionCase::Unresolved, None, None),
        Outcome::Exhausted => report(ObstructionCase::Inconclusive, None, None),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DichotomyVerdict {
    /// Every pair has its full range of rainbow paths.
    HoldsPanconnected,
    /// Not panconnected, but the collection is the exceptional family.
    HoldsExtremal {
        witness: ExtremalWitness,
        failure: Option<FailingTriple>,
    },
    /// Neither alternative: a counterexample.
    Violated {
        failure: FailingTriple,
        recognition: String,
    },
    Inconclusive,
}

impl DichotomyVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, DichotomyVerdict::HoldsPanconnected | DichotomyVerdict::HoldsExtremal { .. })
    }
}

/// Checks that `n - 1` graphs with minimum degree at least `(n+1)/2` are
/// rainbow panconnected unless they form the exceptional family. Returns the
/// verdict together with the underlying certificate.
pub fn verify_dichotomy(
    coll: &GraphCollection,
    budget: SearchBudget,
) -> Result<(DichotomyVerdict, PanconnectivityCertificate)> {
    let n = coll.n();
    if coll.m() + 1 != n {
        return Err(Error::Precondition(format!("need {} graphs, got {}", n - 1, coll.m())));
    }
    let delta = coll.min_degree();
    if 2 * delta < n + 1 {
        return Err(Error::Precondition(format!("minimum degree {delta} below (n+1)/2 for n = {n}")));
    }
    let mut cert = is_rainbow_panconnected(coll, budget)?;
    let verdict = match cert.verdict {
        Verdict::Holds => DichotomyVerdict::HoldsPanconnected,
        v => match recognize_f_family_explained(coll) {
            Ok(w) => {
                cert.extremal = Some(w.clone());
                DichotomyVerdict::HoldsExtremal { witness: w, failure: cert.failure }
            }
            Err(recognition) => match (v, cert.failure) {
                (Verdict::Fails, Some(failure)) => DichotomyVerdict::Violated { failure, recognition },
                _ => DichotomyVerdict::Inconclusive,
            },
        },
    };
    Ok((verdict, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn two_cliques_case() {
        let g = SimpleGraph::clique_union(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let c = GraphCollection::uniform(g, 6).unwrap();
        let r = classify_ham_path_obstruction(&c, SearchBudget::default()).unwrap();
        assert_eq!(r.case, ObstructionCase::TwoCliques);
        assert!(r.within_hypothesis);
        assert_eq!(r.case.to_string(), "(ii)");
    }

    #[test]
    fn complete_has_path() {
        let c = GraphCollection::uniform(SimpleGraph::complete(5).unwrap(), 5).unwrap();
        let r = classify_ham_path_obstruction(&c, SearchBudget::default()).unwrap();
        assert_eq!(r.case, ObstructionCase::HamPath);
        assert_eq!(r.path.unwrap().verify(&c.view()), Ok(()));
    }

    #[test]
    fn wrong_shape_rejected() {
        let c = GraphCollection::uniform(SimpleGraph::complete(5).unwrap(), 4).unwrap();
        assert!(matches!(classify_ham_path_obstruction(&c, SearchBudget::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn dichotomy_on_complete_and_low_degree() {
        let c = GraphCollection::uniform(SimpleGraph::complete(7).unwrap(), 6).unwrap();
        let (v, cert) = verify_dichotomy(&c, SearchBudget::default()).unwrap();
        assert_eq!(v, DichotomyVerdict::HoldsPanconnected);
        assert!(cert.holds());
        let mut g = SimpleGraph::complete(7).unwrap();
        for u in 1..4 {
            g.remove_edge(0, u);
        }
        let mut graphs = c.into_graphs();
        graphs[2] = g;
        let c = GraphCollection::new(graphs).unwrap();
        assert!(matches!(verify_dichotomy(&c, SearchBudget::default()), Err(Error::Precondition(_))));
    }
}
