//! Colored paths and cycles and their independent verification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::view::CollectionView;

/// Path `vertices[0] .. vertices[k-1]` whose `i`-th edge is taken from graph `colors[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredPath {
    pub vertices: Vec<usize>,
    pub colors: Vec<usize>,
}

impl ColoredPath {
    pub fn new(vertices: Vec<usize>, colors: Vec<usize>) -> Self {
        ColoredPath { vertices, colors }
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        let mut c = self.colors.clone();
        v.reverse();
        c.reverse();
        ColoredPath { vertices: v, colors: c }
    }

    pub fn color_set(&self) -> BitSet {
        BitSet::from_iter(self.colors.iter().copied())
    }

    /// Checks every rainbow-path invariant against `view`.
    pub fn verify(&self, view: &CollectionView<'_>) -> Result<(), PathViolation> {
        if self.vertices.is_empty() {
            return Err(PathViolation::Empty);
        }
        if self.colors.len() + 1 != self.vertices.len() {
            return Err(PathViolation::ColorCountMismatch { vertices: self.vertices.len(), colors: self.colors.len() });
        }
        check_vertices(&self.vertices, view)?;
        check_edges(self.vertices.windows(2).map(|w| (w[0], w[1])), &self.colors, view)
    }
}

/// Cycle through `vertices` (closing back to the first) with one color per edge;
/// edge `i` joins `vertices[i]` and `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredCycle {
    pub vertices: Vec<usize>,
    pub colors: Vec<usize>,
}

impl ColoredCycle {
    pub fn new(vertices: Vec<usize>, colors: Vec<usize>) -> Self {
        ColoredCycle { vertices, colors }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex at cyclic position `i` (any integer).
    pub fn at(&self, i: isize) -> usize {
        let l = self.len() as isize;
        self.vertices[i.rem_euclid(l) as usize]
    }

    /// Color of the edge between cyclic positions `i` and `i + 1`.
    pub fn color_at(&self, i: isize) -> usize {
        let l = self.len() as isize;
        self.colors[i.rem_euclid(l) as usize]
    }

    /// Same cycle starting at position `start`.
    pub fn rotated(&self, start: usize) -> Self {
        let l = self.len();
        let vertices = (0..l).map(|i| self.vertices[(start + i) % l]).collect();
        let colors = (0..l).map(|i| self.colors[(start + i) % l]).collect();
        ColoredCycle { vertices, colors }
    }

    /// Same cycle traversed in the opposite direction, starting at the same vertex.
    pub fn reversed(&self) -> Self {
        let l = self.len() as isize;
        let vertices = (0..l).map(|i| self.at(-i)).collect();
        let colors = (0..l).map(|i| self.color_at(-i - 1)).collect();
        ColoredCycle { vertices, colors }
    }

    pub fn verify(&self, view: &CollectionView<'_>) -> Result<(), PathViolation> {
        if self.vertices.len() < 3 {
            return Err(PathViolation::CycleTooShort(self.vertices.len()));
        }
        if self.colors.len() != self.vertices.len() {
            return Err(PathViolation::ColorCountMismatch { vertices: self.vertices.len(), colors: self.colors.len() });
        }
        check_vertices(&self.vertices, view)?;
        let l = self.len();
        check_edges((0..l).map(|i| (self.vertices[i], self.vertices[(i + 1) % l])), &self.colors, view)
    }
}

fn check_vertices(vertices: &[usize], view: &CollectionView<'_>) -> Result<(), PathViolation> {
    let mut seen = BitSet::EMPTY;
    for &v in vertices {
        if !view.vertices().contains(v) {
            return Err(PathViolation::VertexNotInView(v));
        }
        if seen.contains(v) {
            return Err(PathViolation::RepeatedVertex(v));
        }
        seen.insert(v);
    }
    Ok(())
}

fn check_edges(
    edges: impl Iterator<Item = (usize, usize)>,
    colors: &[usize],
    view: &CollectionView<'_>,
) -> Result<(), PathViolation> {
    let mut used = BitSet::EMPTY;
    for ((u, v), &c) in edges.zip(colors) {
        if !view.colors().contains(c) {
            return Err(PathViolation::ColorNotInView(c));
        }
        if used.contains(c) {
            return Err(PathViolation::RepeatedColor(c));
        }
        used.insert(c);
        if !view.has_edge(c, u, v) {
            return Err(PathViolation::MissingEdge { u, v, color: c });
        }
    }
    Ok(())
}

/// First invariant a colored path or cycle breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathViolation {
    Empty,
    CycleTooShort(usize),
    ColorCountMismatch { vertices: usize, colors: usize },
    VertexNotInView(usize),
    RepeatedVertex(usize),
    ColorNotInView(usize),
    RepeatedColor(usize),
    MissingEdge { u: usize, v: usize, color: usize },
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathViolation::Empty => write!(f, "empty path"),
            PathViolation::CycleTooShort(l) => write!(f, "cycle of length {l} is too short"),
            PathViolation::ColorCountMismatch { vertices, colors } => {
                write!(f, "{vertices} vertices but {colors} colors")
            }
            PathViolation::VertexNotInView(v) => write!(f, "vertex {v} not in view"),
            PathViolation::RepeatedVertex(v) => write!(f, "repeated vertex {v}"),
            PathViolation::ColorNotInView(c) => write!(f, "color {c} not in view"),
            PathViolation::RepeatedColor(c) => write!(f, "repeated color {c}"),
            PathViolation::MissingEdge { u, v, color } => {
                write!(f, "edge ({u}, {v}) absent from graph {color}")
            }
        }
    }
}

impl std::error::Error for PathViolation {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphCollection, SimpleGraph};

    fn complete(n: usize, m: usize) -> GraphCollection {
        GraphCollection::uniform(SimpleGraph::complete(n).unwrap(), m).unwrap()
    }

    #[test]
    fn accepts_rainbow_path() {
        let c = complete(5, 4);
        let p = ColoredPath::new(vec![0, 3, 1, 4], vec![2, 0, 3]);
        assert_eq!(p.verify(&c.view()), Ok(()));
    }

    #[test]
    fn rejects_repeated_color() {
        let c = complete(5, 4);
        let p = ColoredPath::new(vec![0, 1, 2], vec![0, 0]);
        let err = p.verify(&c.view()).unwrap_err();
        assert_eq!(err, PathViolation::RepeatedColor(0));
        assert_eq!(err.to_string(), "repeated color 0");
    }

    #[test]
    fn rejects_missing_edge() {
        let g0 = SimpleGraph::from_edges(3, &[(0, 1)]).unwrap();
        let c = GraphCollection::new(vec![g0.clone(), g0]).unwrap();
        let p = ColoredPath::new(vec![0, 1, 2], vec![0, 1]);
        let err = p.verify(&c.view()).unwrap_err();
        assert_eq!(err, PathViolation::MissingEdge { u: 1, v: 2, color: 1 });
        assert!(err.to_string().contains("(1, 2)"));
    }

    #[test]
    fn rejects_repeated_vertex_and_view_violations() {
        let c = complete(5, 4);
        assert_eq!(
            ColoredPath::new(vec![0, 1, 0], vec![0, 1]).verify(&c.view()),
            Err(PathViolation::RepeatedVertex(0))
        );
        let v = c.restrict(&[3], &[1]);
        assert_eq!(ColoredPath::new(vec![0, 3], vec![0]).verify(&v), Err(PathViolation::VertexNotInView(3)));
        assert_eq!(ColoredPath::new(vec![0, 2], vec![1]).verify(&v), Err(PathViolation::ColorNotInView(1)));
    }

    #[test]
    fn cycle_rotation_and_reversal_preserve_validity() {
        let g0 = SimpleGraph::from_edges(4, &[(0, 1)]).unwrap();
        let g1 = SimpleGraph::from_edges(4, &[(1, 2)]).unwrap();
        let g2 = SimpleGraph::from_edges(4, &[(2, 3)]).unwrap();
        let g3 = SimpleGraph::from_edges(4, &[(3, 0)]).unwrap();
        let c = GraphCollection::new(vec![g0, g1, g2, g3]).unwrap();
        let cyc = ColoredCycle::new(vec![0, 1, 2, 3], vec![0, 1, 2, 3]);
        assert_eq!(cyc.verify(&c.view()), Ok(()));
        assert_eq!(cyc.rotated(2).verify(&c.view()), Ok(()));
        let r = cyc.reversed();
        assert_eq!(r.vertices, vec![0, 3, 2, 1]);
        assert_eq!(r.verify(&c.view()), Ok(()));
        assert_eq!(cyc.at(-1), 3);
        assert_eq!(cyc.color_at(5), 1);
    }
}
