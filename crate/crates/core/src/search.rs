//! Exact backtracking search for rainbow paths and cycles.
//!
//! The search grows a path one edge at a time and keeps an edge–color
//! matching saturating every edge placed so far; an extension whose edge
//! cannot be matched is pruned. Branches are also cut when the target can no
//! longer be reached through unvisited vertices, or when too few unvisited
//! vertices remain reachable to complete the requested length.
//!
//! Every search has a node budget. Running out of budget yields
//! [`Outcome::Exhausted`], which is never conflated with [`Outcome::NotFound`].

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::matching::EdgeColorMatcher;
use crate::path::{ColoredCycle, ColoredPath};
use crate::view::CollectionView;

pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

/// Node budget for a single search call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    node_limit: u64,
    /// Searches are always deterministic; the flag is recorded in reports.
    pub deterministic: bool,
}

impl SearchBudget {
    pub fn new(node_limit: u64) -> Result<Self> {
        if node_limit == 0 {
            return Err(Error::InvalidQuery("node limit must be positive".into()));
        }
        Ok(SearchBudget { node_limit, deterministic: true })
    }

    pub fn node_limit(&self) -> u64 {
        self.node_limit
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { node_limit: DEFAULT_NODE_LIMIT, deterministic: true }
    }
}

/// Three-valued search result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    NotFound,
    Exhausted,
}

impl<T> Outcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, Outcome::Exhausted)
    }

    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_ref(&self) -> Outcome<&T> {
        match self {
            Outcome::Found(t) => Outcome::Found(t),
            Outcome::NotFound => Outcome::NotFound,
            Outcome::Exhausted => Outcome::Exhausted,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::NotFound => Outcome::NotFound,
            Outcome::Exhausted => Outcome::Exhausted,
        }
    }
}

/// Accumulated node counts over the searches run by one [`Searcher`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub searches: u64,
    pub nodes: u64,
    pub max_nodes: u64,
    pub exhausted: u64,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.searches += other.searches;
        self.nodes += other.nodes;
        self.max_nodes = self.max_nodes.max(other.max_nodes);
        self.exhausted += other.exhausted;
    }
}

/// Search front end bound to one view and budget.
pub struct Searcher<'a> {
    view: CollectionView<'a>,
    budget: SearchBudget,
    stats: SearchStats,
}

impl<'a> Searcher<'a> {
    pub fn new(view: CollectionView<'a>, budget: SearchBudget) -> Self {
        Searcher { view, budget, stats: SearchStats::default() }
    }

    pub fn view(&self) -> &CollectionView<'a> {
        &self.view
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if !self.view.vertices().contains(v) {
            return Err(Error::InvalidQuery(format!("vertex {v} not in view")));
        }
        Ok(())
    }

    /// Rainbow path on exactly `k` vertices from `x` to `y`, avoiding `forbidden` colors.
    pub fn path(&mut self, x: usize, y: usize, k: usize, forbidden: BitSet) -> Result<Outcome<ColoredPath>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::InvalidQuery(format!("endpoints coincide ({x})")));
        }
        let alive = self.view.vertex_count();
        if k < 2 || k > alive {
            return Err(Error::InvalidQuery(format!("k = {k} outside [2, {alive}]")));
        }
        let allowed = self.view.colors().difference(forbidden);
        if allowed.len() < k - 1 {
            return Ok(Outcome::NotFound);
        }
        let interior = self.view.vertices().difference(BitSet::from_iter([x, y]));
        let res = self.run(x, y, k - 1, interior, allowed);
        Ok(res.map(|(v, c)| {
            let p = ColoredPath::new(v, c);
            debug_assert_eq!(p.verify(&self.view), Ok(()));
            p
        }))
    }

    /// Rainbow path through every vertex of the view, from `x` to `y`.
    pub fn ham_path(&mut self, x: usize, y: usize) -> Result<Outcome<ColoredPath>> {
        let k = self.view.vertex_count();
        self.path(x, y, k, BitSet::EMPTY)
    }

    /// Any rainbow Hamiltonian path of the view (first pair in lexicographic order).
    pub fn any_ham_path(&mut self) -> Result<Outcome<ColoredPath>> {
        let vs = self.view.vertices().to_vec();
        if vs.len() < 2 {
            return Err(Error::InvalidQuery("view has fewer than two vertices".into()));
        }
        let mut exhausted = false;
        for (i, &x) in vs.iter().enumerate() {
            for &y in &vs[i + 1..] {
                match self.ham_path(x, y)? {
                    Outcome::Found(p) => return Ok(Outcome::Found(p)),
                    Outcome::Exhausted => exhausted = true,
                    Outcome::NotFound => {}
                }
            }
        }
        Ok(if exhausted { Outcome::Exhausted } else { Outcome::NotFound })
    }

    /// Rainbow cycle on exactly `length` vertices.
    pub fn cycle(&mut self, length: usize) -> Result<Outcome<ColoredCycle>> {
        let alive = self.view.vertex_count();
        if length < 3 || length > alive {
            return Err(Error::InvalidQuery(format!("cycle length {length} outside [3, {alive}]")));
        }
        let allowed = self.view.colors();
        if allowed.len() < length {
            return Ok(Outcome::NotFound);
        }
        let mut exhausted = false;
        for s in self.view.vertices() {
            // the cycle's smallest vertex is `s`
            let above = BitSet(!((1u64 << s) | ((1u64 << s) - 1)));
            let interior = self.view.vertices().intersection(above);
            if interior.len() < length - 1 {
                break;
            }
            match self.run(s, s, length, interior, allowed) {
                Outcome::Found((mut v, c)) => {
                    v.pop();
                    let cyc = ColoredCycle::new(v, c);
                    debug_assert_eq!(cyc.verify(&self.view), Ok(()));
                    return Ok(Outcome::Found(cyc));
                }
                Outcome::Exhausted => exhausted = true,
                Outcome::NotFound => {}
            }
        }
        Ok(if exhausted { Outcome::Exhausted } else { Outcome::NotFound })
    }

    /// Shortest rainbow path length (in edges) between `x` and `y`, with a witness.
    /// `NotFound` means no rainbow path of any length exists.
    pub fn distance(&mut self, x: usize, y: usize) -> Result<Outcome<(usize, ColoredPath)>> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::InvalidQuery(format!("endpoints coincide ({x})")));
        }
        let colors = self.view.colors();
        let Some(d) = self.view.union_distance(x, y, colors) else {
            return Ok(Outcome::NotFound);
        };
        let max_len = (self.view.vertex_count() - 1).min(colors.len());
        for len in d.max(1)..=max_len {
            match self.path(x, y, len + 1, BitSet::EMPTY)? {
                Outcome::Found(p) => return Ok(Outcome::Found((len, p))),
                Outcome::Exhausted => return Ok(Outcome::Exhausted),
                Outcome::NotFound => {}
            }
        }
        Ok(Outcome::NotFound)
    }

    fn run(
        &mut self,
        start: usize,
        target: usize,
        edges: usize,
        interior: BitSet,
        allowed: BitSet,
    ) -> Outcome<(Vec<usize>, Vec<usize>)> {
        let mut engine = Engine::new(&self.view, allowed, start, target, edges, interior, self.budget.node_limit);
        let found = engine.dfs();
        self.stats.searches += 1;
        self.stats.nodes += engine.nodes;
        self.stats.max_nodes = self.stats.max_nodes.max(engine.nodes);
        if found {
            Outcome::Found((engine.path, engine.matcher.colors()))
        } else if engine.exhausted {
            self.stats.exhausted += 1;
            Outcome::Exhausted
        } else {
            Outcome::NotFound
        }
    }
}

struct Engine {
    n: usize,
    options: Vec<BitSet>,
    union_adj: Vec<BitSet>,
    target: usize,
    edges: usize,
    interior: BitSet,
    path: Vec<usize>,
    visited: BitSet,
    matcher: EdgeColorMatcher,
    nodes: u64,
    limit: u64,
    exhausted: bool,
}

impl Engine {
    fn new(
        view: &CollectionView<'_>,
        allowed: BitSet,
        start: usize,
        target: usize,
        edges: usize,
        interior: BitSet,
        limit: u64,
    ) -> Self {
        let n = view.base().n();
        let mut options = vec![BitSet::EMPTY; n * n];
        let mut union_adj = vec![BitSet::EMPTY; n];
        for c in allowed.intersection(view.colors()) {
            for u in view.vertices() {
                let nb = view.neighbors(c, u);
                union_adj[u] = union_adj[u].union(nb);
                for v in nb {
                    options[u * n + v].insert(c);
                }
            }
        }
        Engine {
            n,
            options,
            union_adj,
            target,
            edges,
            interior,
            path: vec![start],
            visited: BitSet::singleton(start),
            matcher: EdgeColorMatcher::new(),
            nodes: 0,
            limit,
            exhausted: false,
        }
    }

    #[inline]
    fn opts(&self, u: usize, v: usize) -> BitSet {
        self.options[u * self.n + v]
    }

    /// Vertices of `avail` reachable from `from` through `avail`.
    fn reachable(&self, from: usize, avail: BitSet) -> BitSet {
        let mut seen = BitSet::EMPTY;
        let mut frontier = self.union_adj[from].intersection(avail);
        while !frontier.is_empty() {
            seen = seen.union(frontier);
            let mut next = BitSet::EMPTY;
            for v in frontier {
                next = next.union(self.union_adj[v]);
            }
            frontier = next.intersection(avail).difference(seen);
        }
        seen
    }

    fn dfs(&mut self) -> bool {
        let cur = *self.path.last().unwrap();
        let remaining = self.edges - self.matcher.len();
        if remaining == 1 {
            let o = self.opts(cur, self.target);
            if !o.is_empty() && self.matcher.push(o) {
                self.path.push(self.target);
                return true;
            }
            return false;
        }
        let avail = self.interior.difference(self.visited);
        let reach = self.reachable(cur, avail);
        if reach.len() < remaining - 1 || self.union_adj[self.target].intersection(reach).is_empty() {
            return false;
        }
        let mut cands: Vec<(usize, usize)> =
            self.union_adj[cur].intersection(reach).iter().map(|v| (self.opts(cur, v).len(), v)).collect();
        cands.sort_unstable();
        for (_, v) in cands {
            self.nodes += 1;
            if self.nodes > self.limit {
                self.exhausted = true;
                return false;
            }
            if self.matcher.push(self.opts(cur, v)) {
                self.path.push(v);
                self.visited.insert(v);
                if self.dfs() {
                    return true;
                }
                if self.exhausted {
                    return false;
                }
                self.path.pop();
                self.visited.remove(v);
                self.matcher.pop();
            }
        }
        false
    }
}

/// One-shot wrapper over [`Searcher::path`].
pub fn find_rainbow_path(
    view: &CollectionView<'_>,
    x: usize,
    y: usize,
    k: usize,
    forbidden: BitSet,
    budget: SearchBudget,
) -> Result<Outcome<ColoredPath>> {
    Searcher::new(*view, budget).path(x, y, k, forbidden)
}

pub fn find_rainbow_ham_path(
    view: &CollectionView<'_>,
    x: usize,
    y: usize,
    budget: SearchBudget,
) -> Result<Outcome<ColoredPath>> {
    Searcher::new(*view, budget).ham_path(x, y)
}

pub fn find_rainbow_cycle(
    view: &CollectionView<'_>,
    length: usize,
    budget: SearchBudget,
) -> Result<Outcome<ColoredCycle>> {
    Searcher::new(*view, budget).cycle(length)
}

/// Rainbow distance in edges; `NotFound` = unreachable.
pub fn rainbow_distance(view: &CollectionView<'_>, x: usize, y: usize, budget: SearchBudget) -> Result<Outcome<usize>> {
    Ok(Searcher::new(*view, budget).distance(x, y)?.map(|(d, _)| d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphCollection, SimpleGraph};

    fn complete(n: usize, m: usize) -> GraphCollection {
        GraphCollection::uniform(SimpleGraph::complete(n).unwrap(), m).unwrap()
    }

    fn b() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn complete_collection_has_every_length() {
        let c = complete(6, 5);
        for k in 2..=6 {
            let p = find_rainbow_path(&c.view(), 1, 4, k, BitSet::EMPTY, b()).unwrap().found().unwrap();
            assert_eq!(p.len(), k);
            assert_eq!((p.first(), p.last()), (1, 4));
            assert_eq!(p.verify(&c.view()), Ok(()));
        }
    }

    #[test]
    fn k_out_of_range_rejected() {
        let c = complete(4, 3);
        assert!(find_rainbow_path(&c.view(), 0, 1, 5, BitSet::EMPTY, b()).is_err());
        assert!(find_rainbow_path(&c.view(), 0, 1, 1, BitSet::EMPTY, b()).is_err());
        assert!(find_rainbow_path(&c.view(), 0, 0, 2, BitSet::EMPTY, b()).is_err());
        assert!(find_rainbow_cycle(&c.view(), 2, b()).is_err());
        assert!(find_rainbow_cycle(&c.view(), 5, b()).is_err());
    }

    #[test]
    fn too_few_colors_is_not_found() {
        let c = complete(5, 2);
        assert_eq!(find_rainbow_path(&c.view(), 0, 1, 4, BitSet::EMPTY, b()).unwrap(), Outcome::NotFound);
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        // two disjoint triangles: exhaustive search over a cross pair fails
        let g = SimpleGraph::clique_union(8, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]]).unwrap();
        let mut g2 = g.clone();
        g2.add_edge(3, 4);
        let c = GraphCollection::uniform(g2, 7).unwrap();
        let tiny = SearchBudget::new(1).unwrap();
        let r = find_rainbow_ham_path(&c.view(), 0, 1, tiny).unwrap();
        assert_eq!(r, Outcome::Exhausted);
        assert!(SearchBudget::new(0).is_err());
    }

    #[test]
    fn distance_examples() {
        let c = complete(4, 3);
        assert_eq!(rainbow_distance(&c.view(), 0, 3, b()).unwrap(), Outcome::Found(1));
        // route 0-1-2 only in graph 0; graph 1 has an unrelated edge; route 0-3-4-2 is rainbow
        let g0 = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let g1 = SimpleGraph::from_edges(5, &[(3, 4)]).unwrap();
        let g2 = SimpleGraph::from_edges(5, &[(4, 2)]).unwrap();
        let c = GraphCollection::new(vec![g0, g1, g2]).unwrap();
        let v = c.view();
        assert_eq!(v.union_distance(0, 2, v.colors()), Some(2));
        assert_eq!(rainbow_distance(&v, 0, 2, b()).unwrap(), Outcome::Found(3));
        let g = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let c = GraphCollection::uniform(g, 3).unwrap();
        assert_eq!(rainbow_distance(&c.view(), 0, 3, b()).unwrap(), Outcome::NotFound);
    }

    #[test]
    fn cycles() {
        let c = complete(5, 5);
        let cyc = find_rainbow_cycle(&c.view(), 5, b()).unwrap().found().unwrap();
        assert_eq!(cyc.len(), 5);
        assert_eq!(cyc.verify(&c.view()), Ok(()));
        // triangle-free union graph
        let g = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = GraphCollection::uniform(g, 4).unwrap();
        assert_eq!(find_rainbow_cycle(&c.view(), 3, b()).unwrap(), Outcome::NotFound);
        assert!(find_rainbow_cycle(&c.view(), 4, b()).unwrap().is_found());
    }

    #[test]
    fn two_cliques_have_no_cross_ham_path() {
        let g = SimpleGraph::clique_union(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let c = GraphCollection::uniform(g, 6).unwrap();
        for x in 0..3 {
            for y in 3..6 {
                assert_eq!(find_rainbow_ham_path(&c.view(), x, y, b()).unwrap(), Outcome::NotFound);
            }
        }
    }

    #[test]
    fn ham_path_in_view() {
        let c = complete(7, 6);
        let v = c.restrict(&[0, 1, 2], &[5]);
        let p = find_rainbow_ham_path(&v, 3, 6, b()).unwrap().found().unwrap();
        assert_eq!(p.len(), 4);
        assert!(!p.colors.contains(&5));
    }
}
