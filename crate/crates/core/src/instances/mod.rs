//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`), seeded with
//! `seed_from_u64(seed)`; independent parts of an instance (one graph, the
//! vertex labeling, ...) draw from separate ChaCha streams of the same seed,
//! so changing one graph's construction never shifts another's. Trial seeds in
//! campaigns are derived with [`split_seed`].

mod families;
mod random;
mod shapes;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GraphCollection;

pub use families::{gen_extremal_family, gen_ham_path_obstruction, ObstructionShape};
pub use random::{gen_random_collection, repair_min_degree};
pub use shapes::{gen_lemma_shape, LemmaShape, PlantedInstance};

/// Stream ids for the parts of an instance that are not per-graph.
pub(crate) const LABEL_STREAM: u64 = 1 << 32;
pub(crate) const STRUCTURE_STREAM: u64 = (1 << 32) + 1;

pub(crate) fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// SplitMix64 finalizer applied to `base + index * golden`; gives well-spread,
/// reproducible per-trial seeds from one campaign seed.
pub fn split_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Random,
    /// Exceptional family; `q2_edges` uses local Q2 indices `0..(n+1)/2`.
    FFamily {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q2_edges: Option<Vec<(usize, usize)>>,
    },
    TwoCliquesObstruction,
    JoinPartitionObstruction,
    LemmaShape {
        shape: LemmaShape,
    },
}

/// Everything needed to regenerate an instance; written next to generated files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub seed: u64,
    pub family: Family,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub collection: GraphCollection,
    pub planted: Option<PlantedInstance>,
}

impl GenSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

/// Dispatches on the family. For families whose shape fixes `m` or the degree
/// bound, those fields must agree with the shape.
pub fn generate(spec: &GenSpec) -> Result<Generated> {
    let plain = |collection| Ok(Generated { collection, planted: None });
    match &spec.family {
        Family::Random => plain(gen_random_collection(spec.n, spec.m, spec.min_degree, spec.seed)?),
        Family::FFamily { q2_edges } => plain(gen_extremal_family(spec.n, spec.m, q2_edges.as_deref(), spec.seed)?),
        Family::TwoCliquesObstruction => {
            check_m(spec, spec.n)?;
            plain(gen_ham_path_obstruction(spec.n, ObstructionShape::TwoCliques, spec.seed)?)
        }
        Family::JoinPartitionObstruction => {
            check_m(spec, spec.n)?;
            plain(gen_ham_path_obstruction(spec.n, ObstructionShape::JoinPartition, spec.seed)?)
        }
        Family::LemmaShape { shape } => {
            check_m(spec, spec.n.saturating_sub(1))?;
            let p = gen_lemma_shape(*shape, spec.n, spec.seed)?;
            Ok(Generated { collection: p.collection.clone(), planted: Some(p) })
        }
    }
}

fn check_m(spec: &GenSpec, expected: usize) -> Result<()> {
    if spec.m != expected {
        return Err(Error::Infeasible(format!("this family has m = {expected} graphs, got m = {}", spec.m)));
    }
    Ok(())
}
