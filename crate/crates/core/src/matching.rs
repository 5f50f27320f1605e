//! Injective edge-to-color assignment as bipartite matching (edges × colors).
//!
//! [`EdgeColorMatcher`] keeps a matching that saturates every pushed edge.
//! Pushing an edge runs one augmenting-path search from it; if none exists the
//! edge is rejected and the matching is left unchanged, which is exactly the
//! failure of Hall's condition for the extended edge list.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::view::CollectionView;

const NONE: u8 = u8::MAX;

#[derive(Clone, Debug)]
pub struct EdgeColorMatcher {
    options: Vec<BitSet>,
    edge_color: Vec<u8>,
    color_edge: [u8; 64],
}

impl Default for EdgeColorMatcher {
    fn default() -> Self {
        EdgeColorMatcher { options: Vec::new(), edge_color: Vec::new(), color_edge: [NONE; 64] }
    }
}

impl EdgeColorMatcher {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.options.len()
    }

    pub fn is_empty(&self) -> bool {
        self.options.is_empty()
    }

    /// Appends an edge with the given admissible colors. Returns `false` (and
    /// leaves the state untouched) when no saturating matching exists.
    pub fn push(&mut self, options: BitSet) -> bool {
        let e = self.options.len();
        self.options.push(options);
        self.edge_color.push(NONE);
        let mut seen = BitSet::EMPTY;
        if self.augment(e, &mut seen) {
            true
        } else {
            self.options.pop();
            self.edge_color.pop();
            false
        }
    }

    /// Removes the most recently pushed edge.
    pub fn pop(&mut self) {
        if let Some(c) = self.edge_color.pop() {
            if c != NONE {
                self.color_edge[c as usize] = NONE;
            }
            self.options.pop();
        }
    }

    fn augment(&mut self, e: usize, seen: &mut BitSet) -> bool {
        let free = self.options[e].difference(*seen);
        // try a free color first
        for c in free {
            if self.color_edge[c] == NONE {
                self.assign(e, c);
                return true;
            }
        }
        for c in free {
            if seen.contains(c) {
                continue;
            }
            seen.insert(c);
            let other = self.color_edge[c] as usize;
            if self.augment(other, seen) {
                self.assign(e, c);
                return true;
            }
        }
        false
    }

    fn assign(&mut self, e: usize, c: usize) {
        self.edge_color[e] = c as u8;
        self.color_edge[c] = e as u8;
    }

    /// Current color of each edge, in push order.
    pub fn colors(&self) -> Vec<usize> {
        self.edge_color.iter().map(|&c| c as usize).collect()
    }

    pub fn used_colors(&self) -> BitSet {
        BitSet::from_iter(self.edge_color.iter().map(|&c| c as usize))
    }
}

/// Finds distinct colors for the edges of `sequence` (consecutive pairs), each
/// edge present in its color's graph and no color from `forbidden` used.
/// `Ok(None)` means no such injective assignment exists.
pub fn assign_colors(view: &CollectionView<'_>, sequence: &[usize], forbidden: BitSet) -> Result<Option<Vec<usize>>> {
    let mut seen = BitSet::EMPTY;
    for &v in sequence {
        if !view.vertices().contains(v) {
            return Err(Error::InvalidQuery(format!("vertex {v} not in view")));
        }
        if seen.contains(v) {
            return Err(Error::RepeatedVertex(v));
        }
        seen.insert(v);
    }
    let allowed = view.colors().difference(forbidden);
    let mut matcher = EdgeColorMatcher::new();
    let mut options = Vec::with_capacity(sequence.len().saturating_sub(1));
    for w in sequence.windows(2) {
        let opts = view.edge_colors(w[0], w[1]).intersection(allowed);
        if opts.is_empty() {
            return Err(Error::NotAnEdge(w[0], w[1]));
        }
        options.push(opts);
    }
    for opts in options {
        if !matcher.push(opts) {
            return Ok(None);
        }
    }
    Ok(Some(matcher.colors()))
}
