//! Explicit constructions of rainbow paths of every length between two
//! vertices of an odd-order collection with `m = n - 1` graphs of minimum
//! degree at least `(n+1)/2`, and a replay that checks them against search.
//!
//! Every construction fixes a frame `(x, y, z, c)` with `xz ∉ G_c` and works
//! in `H`, the collection with `x, y, z` and `G_c` removed. Which one applies
//! depends on the longest rainbow structure inside `H`.

mod common;
mod endpoint;
mod join;
mod near_cycle;
mod path_ends;
mod replay;
mod rotation;
mod short;
mod two_cliques;

pub use common::{BranchTrace, ConstructionError, ConstructionResult, Frame, LemmaPath};
pub use endpoint::{endpoint_bound_report, EndpointBoundReport};
pub use join::{join_partition_k_path, JoinOutcome, JoinSets};
pub use near_cycle::{cycle_attach_sets, near_cycle_k_path, CycleAttachSets};
pub use path_ends::{ham_path_k_path, PathEndSets, PathEndsPlan};
pub use replay::{
    constructive_panconnect, replay_proof, Discrepancy, ExceptionalReport, PairReplay, ReplayCertificate,
    ReplayVerdict, Route,
};
pub use rotation::{rotation_k_path, RotationSets};
pub use short::{construct_short_paths, five_vertex_path, FiveVertexSets, ShortPaths};
pub use two_cliques::{two_clique_k_path, TwoCliqueSets};
