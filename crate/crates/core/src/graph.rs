//! Simple graphs and graph collections on a shared vertex set.
//!
//! Each member graph of a collection is identified by its index, which doubles
//! as its color. Vertices and colors are 0-based.

use std::fmt::Write as _;

use crate::bitset::{BitSet, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::view::CollectionView;

/// Undirected simple graph on vertices `0..n` with bitset adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<BitSet>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::BadVertexCount(n));
        }
        Ok(SimpleGraph { n, adj: vec![BitSet::EMPTY; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for v in 0..n {
            let mut row = BitSet::full(n);
            row.remove(v);
            g.adj[v] = row;
        }
        Ok(g)
    }

    /// Builds a graph with exactly the given edges; duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (index, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n, index });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u, index });
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// Disjoint union of cliques on the given vertex parts.
    pub fn clique_union(n: usize, parts: &[Vec<usize>]) -> Result<Self> {
        let mut edges = Vec::new();
        for part in parts {
            for (i, &u) in part.iter().enumerate() {
                for &v in &part[i + 1..] {
                    edges.push((u, v));
                }
            }
        }
        Self::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> BitSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "invalid edge ({u}, {v})");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Minimum degree sum over non-adjacent pairs, `None` for a complete graph.
    pub fn sigma2(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    let s = self.degree(u) + self.degree(v);
                    best = Some(best.map_or(s, |b| b.min(s)));
                }
            }
        }
        best
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    /// Whether `set` spans no edge.
    pub fn is_independent(&self, set: BitSet) -> bool {
        set.iter().all(|v| self.adj[v].intersection(set).is_empty())
    }

    /// Connected components restricted to `within`, each as a sorted vertex set.
    pub fn components(&self, within: BitSet) -> Vec<BitSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = BitSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = BitSet::EMPTY;
                for v in frontier {
                    next = next.union(self.adj[v]);
                }
                next = next.intersection(within).difference(comp);
                comp = comp.union(next);
                frontier = next;
            }
            left = left.difference(comp);
            out.push(comp);
        }
        out
    }
}

/// Ordered list of graphs on a shared vertex set `0..n`; index = color.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphCollection {
    n: usize,
    graphs: Vec<SimpleGraph>,
}

impl GraphCollection {
    pub fn new(graphs: Vec<SimpleGraph>) -> Result<Self> {
        if graphs.is_empty() || graphs.len() > MAX_ELEMENTS {
            return Err(Error::BadGraphCount(graphs.len()));
        }
        let n = graphs[0].n();
        for (index, g) in graphs.iter().enumerate() {
            if g.n() != n {
                return Err(Error::VertexCountMismatch { index, expected: n, found: g.n() });
            }
        }
        Ok(GraphCollection { n, graphs })
    }

    /// `m` copies of the same graph.
    pub fn uniform(g: SimpleGraph, m: usize) -> Result<Self> {
        Self::new(vec![g; m])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.graphs.len()
    }

    pub fn graph(&self, color: usize) -> &SimpleGraph {
        &self.graphs[color]
    }

    pub fn graphs(&self) -> &[SimpleGraph] {
        &self.graphs
    }

    pub fn into_graphs(self) -> Vec<SimpleGraph> {
        self.graphs
    }

    #[inline]
    pub fn has_edge(&self, color: usize, u: usize, v: usize) -> bool {
        self.graphs[color].has_edge(u, v)
    }

    pub fn min_degree(&self) -> usize {
        self.graphs.iter().map(SimpleGraph::min_degree).min().unwrap_or(0)
    }

    pub fn all_identical(&self) -> bool {
        self.graphs.windows(2).all(|w| w[0] == w[1])
    }

    /// Colors whose graph contains `uv`.
    pub fn edge_colors(&self, u: usize, v: usize) -> BitSet {
        let mut s = BitSet::EMPTY;
        for (c, g) in self.graphs.iter().enumerate() {
            if g.has_edge(u, v) {
                s.insert(c);
            }
        }
        s
    }

    /// Whole-collection view.
    pub fn view(&self) -> CollectionView<'_> {
        CollectionView::full(self)
    }

    /// View with the given vertices and colors deleted.
    pub fn restrict(&self, removed_vertices: &[usize], removed_colors: &[usize]) -> CollectionView<'_> {
        self.view().restrict(removed_vertices, removed_colors)
    }

    /// Parses the instance text format: header `n m`, then `m` blocks of
    /// `graph i` / `u v` lines / `end`. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let perr = |line: usize, message: String| Error::Parse { line, message };

        let (hl, header) = lines.next().ok_or_else(|| perr(0, "missing header".into()))?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(perr(hl, format!("expected `n m`, got `{header}`")));
        }
        let n: usize = nums[0].parse().map_err(|_| perr(hl, format!("bad n `{}`", nums[0])))?;
        let m: usize = nums[1].parse().map_err(|_| perr(hl, format!("bad m `{}`", nums[1])))?;
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::BadVertexCount(n));
        }
        if m == 0 || m > MAX_ELEMENTS {
            return Err(Error::BadGraphCount(m));
        }

        let mut graphs = Vec::with_capacity(m);
        for i in 0..m {
            let (ln, l) = lines.next().ok_or_else(|| perr(0, format!("missing block `graph {i}`")))?;
            if l.split_whitespace().collect::<Vec<_>>() != ["graph", &i.to_string()] {
                return Err(perr(ln, format!("expected `graph {i}`, got `{l}`")));
            }
            let mut edges = Vec::new();
            loop {
                let (ln, l) = lines.next().ok_or_else(|| perr(0, format!("graph {i}: missing `end`")))?;
                if l == "end" {
                    break;
                }
                let parts: Vec<&str> = l.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(perr(ln, format!("expected `u v`, got `{l}`")));
                }
                let u: usize = parts[0].parse().map_err(|_| perr(ln, format!("bad vertex `{}`", parts[0])))?;
                let v: usize = parts[1].parse().map_err(|_| perr(ln, format!("bad vertex `{}`", parts[1])))?;
                if u >= n || v >= n {
                    return Err(perr(ln, format!("vertex out of range in `{l}` (n = {n})")));
                }
                if u == v {
                    return Err(perr(ln, format!("self-loop `{l}`")));
                }
                edges.push((u, v));
            }
            graphs.push(SimpleGraph::from_edges(n, &edges)?);
        }
        if let Some((ln, l)) = lines.next() {
            return Err(perr(ln, format!("trailing content `{l}`")));
        }
        Self::new(graphs)
    }

    /// Canonical text form; edges sorted with `u < v`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {}", self.n, self.m()).unwrap();
        for (i, g) in self.graphs.iter().enumerate() {
            writeln!(s, "graph {i}").unwrap();
            for (u, v) in g.edges() {
                writeln!(s, "{u} {v}").unwrap();
            }
            s.push_str("end\n");
        }
        s
    }
}
