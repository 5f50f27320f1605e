//! Copy-free sub-collection views: a base collection with some vertices and
//! colors deleted.

use crate::bitset::BitSet;
use crate::graph::GraphCollection;

#[derive(Clone, Copy, Debug)]
pub struct CollectionView<'a> {
    base: &'a GraphCollection,
    vertices: BitSet,
    colors: BitSet,
}

impl<'a> CollectionView<'a> {
    pub fn full(base: &'a GraphCollection) -> Self {
        CollectionView { base, vertices: BitSet::full(base.n()), colors: BitSet::full(base.m()) }
    }

    /// Further deletes vertices and colors; out-of-range ids are ignored.
    pub fn restrict(&self, removed_vertices: &[usize], removed_colors: &[usize]) -> Self {
        let mut v = self.vertices;
        let mut c = self.colors;
        for &x in removed_vertices {
            if x < 64 {
                v.remove(x);
            }
        }
        for &x in removed_colors {
            if x < 64 {
                c.remove(x);
            }
        }
        CollectionView { base: self.base, vertices: v, colors: c }
    }

    /// Keeps only the given vertex and color sets (intersected with this view).
    pub fn with_sets(&self, vertices: BitSet, colors: BitSet) -> Self {
        CollectionView {
            base: self.base,
            vertices: self.vertices.intersection(vertices),
            colors: self.colors.intersection(colors),
        }
    }

    pub fn base(&self) -> &'a GraphCollection {
        self.base
    }

    pub fn vertices(&self) -> BitSet {
        self.vertices
    }

    pub fn colors(&self) -> BitSet {
        self.colors
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn color_count(&self) -> usize {
        self.colors.len()
    }

    /// Neighbors of `v` in graph `color`, restricted to surviving vertices.
    #[inline]
    pub fn neighbors(&self, color: usize, v: usize) -> BitSet {
        if !self.colors.contains(color) || !self.vertices.contains(v) {
            return BitSet::EMPTY;
        }
        self.base.graph(color).neighbors(v).intersection(self.vertices)
    }

    #[inline]
    pub fn has_edge(&self, color: usize, u: usize, v: usize) -> bool {
        self.colors.contains(color)
            && self.vertices.contains(u)
            && self.vertices.contains(v)
            && self.base.has_edge(color, u, v)
    }

    pub fn degree(&self, color: usize, v: usize) -> usize {
        self.neighbors(color, v).len()
    }

    /// Minimum degree of graph `color` inside the view (0 when no vertex survives).
    pub fn min_degree_of(&self, color: usize) -> usize {
        self.vertices.iter().map(|v| self.degree(color, v)).min().unwrap_or(0)
    }

    /// Minimum over surviving colors of the per-graph minimum degree.
    pub fn min_degree(&self) -> usize {
        self.colors.iter().map(|c| self.min_degree_of(c)).min().unwrap_or(0)
    }

    /// Colors `c` of the view with `uv` in graph `c`.
    pub fn edge_colors(&self, u: usize, v: usize) -> BitSet {
        if !self.vertices.contains(u) || !self.vertices.contains(v) {
            return BitSet::EMPTY;
        }
        let mut s = BitSet::EMPTY;
        for c in self.colors {
            if self.base.has_edge(c, u, v) {
                s.insert(c);
            }
        }
        s
    }

    /// Neighbors of `v` in the union of the graphs in `colors`.
    pub fn union_neighbors(&self, v: usize, colors: BitSet) -> BitSet {
        let mut s = BitSet::EMPTY;
        if !self.vertices.contains(v) {
            return s;
        }
        for c in self.colors.intersection(colors) {
            s = s.union(self.base.graph(c).neighbors(v));
        }
        s.intersection(self.vertices)
    }

    /// BFS distance in the union graph over `colors`, `None` if disconnected.
    pub fn union_distance(&self, x: usize, y: usize, colors: BitSet) -> Option<usize> {
        if !self.vertices.contains(x) || !self.vertices.contains(y) {
            return None;
        }
        let mut seen = BitSet::singleton(x);
        let mut frontier = seen;
        let mut d = 0;
        while !frontier.is_empty() {
            if frontier.contains(y) {
                return Some(d);
            }
            let mut next = BitSet::EMPTY;
            for v in frontier {
                next = next.union(self.union_neighbors(v, colors));
            }
            next = next.difference(seen);
            seen = seen.union(next);
            frontier = next;
            d += 1;
        }
        None
    }
}
