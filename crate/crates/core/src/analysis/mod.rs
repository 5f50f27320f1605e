//! Global properties of collections: panconnectivity, Hamiltonian
//! connectivity, extremal-structure recognition and obstruction classes.

mod classify;
mod extremal;
mod panconnectivity;

pub use classify::{
    classify_ham_path_obstruction, verify_dichotomy, DichotomyVerdict, ObstructionCase, ObstructionReport,
};
pub use extremal::{
    find_clique_split, find_join_partition, find_join_partition_exhaustive, recognize_clique_split, recognize_f_family,
    recognize_f_family_exhaustive, recognize_f_family_explained, recognize_join_partition, ExtremalKind,
    ExtremalWitness,
};
pub use panconnectivity::{
    is_panconnected_single, is_rainbow_ham_connected, is_rainbow_panconnected, FailingTriple, HamConnectivityReport,
    PairRecord, PanconnectivityCertificate, Verdict,
};
