//! Simple undirected graphs with bitset adjacency.

use std::fmt;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, uniform_index, unit_f64};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A set of vertex indices drawn from `0..universe`, stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    universe: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            bits: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = VertexSet::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set from vertices; panics if a vertex is outside the universe.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(universe: usize, vertices: I) -> Self {
        let mut s = VertexSet::new(universe);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub(crate) fn from_words(universe: usize, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), words_for(universe));
        VertexSet { universe, bits }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.bits[v / WORD] |= 1 << (v % WORD);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.bits[v / WORD] &= !(1 << (v % WORD));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.bits[v / WORD] & (1 << (v % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Smallest member.
    pub fn min(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    /// Size of the intersection with a raw mask of the same width.
    pub fn intersection_len(&self, mask: &[u64]) -> usize {
        self.bits
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersection_len(&other.bits) == 0
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple undirected graph on vertices `0..order`.
///
/// Adjacency is held twice: as per-vertex bitset rows (for mask/popcount
/// work in the equilibrium checks and isomorphism search) and as sorted
/// neighbor lists (for the simulation inner loop). Graphs are immutable
/// once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edge_list())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph. `order` must be at least 1.
    pub fn empty(order: usize) -> Result<Graph> {
        if order == 0 {
            return Err(Error::InvalidOrder { min: 1, got: 0 });
        }
        Ok(Self::blank(order))
    }

    fn blank(order: usize) -> Graph {
        let words = words_for(order);
        Graph {
            order,
            words,
            rows: vec![0; order * words],
            adj: vec![Vec::new(); order],
            edges: 0,
        }
    }

    /// Builds a graph from an edge list. Self-loops are rejected; repeated
    /// edges are merged.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(order)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        g.finish();
        Ok(g)
    }

    /// Builds a graph from an adjacency predicate evaluated on pairs `u < v`.
    pub(crate) fn from_fn(order: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut g = Self::blank(order);
        for u in 0..order {
            for v in u + 1..order {
                if edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g.finish();
        g
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        let (w, b) = (self.words, WORD);
        self.rows[u * w + v / b] |= 1 << (v % b);
        self.rows[v * w + u / b] |= 1 << (u % b);
    }

    fn finish(&mut self) {
        let mut edges = 0;
        for v in 0..self.order {
            let row = VertexSet::from_words(self.order, self.row(v).to_vec());
            self.adj[v] = row.to_vec();
            edges += self.adj[v].len();
        }
        self.edges = edges / 2;
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.rows[u * self.words + v / WORD] & (1 << (v % WORD)) != 0
    }

    /// Bitset row of `v` (`words_per_row()` words).
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    pub fn adjacent(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighborhood of `v` as a set.
    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet::from_words(self.order, self.row(v).to_vec()))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.order)
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// Vertices reachable from `start` inside `within`.
    fn reach(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.order);
        seen.insert(start);
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            for &u in &self.adj[v] {
                if within.contains(u) && !seen.contains(u) {
                    seen.insert(u);
                    frontier.push(u);
                }
            }
        }
        seen
    }

    /// Connected components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let all = VertexSet::full(self.order);
        let mut assigned = VertexSet::new(self.order);
        let mut comps = Vec::new();
        for v in 0..self.order {
            if !assigned.contains(v) {
                let comp = self.reach(v, &all);
                assigned.union_with(&comp);
                comps.push(comp);
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, &VertexSet::full(self.order)).len() == self.order
    }

    /// Whether the subgraph induced on `set` is connected (empty sets are not).
    pub fn induces_connected(&self, set: &VertexSet) -> bool {
        match set.min() {
            None => false,
            Some(v) => self.reach(v, set).len() == set.len(),
        }
    }

    /// Components of the subgraph induced on `set`.
    pub fn induced_components(&self, set: &VertexSet) -> Vec<VertexSet> {
        let mut left = set.clone();
        let mut comps = Vec::new();
        while let Some(v) = left.min() {
            let comp = self.reach(v, set);
            for u in comp.iter() {
                left.remove(u);
            }
            comps.push(comp);
        }
        comps
    }

    /// |E| / C(n, 2).
    pub fn edge_density(&self) -> Result<f64> {
        if self.order < 2 {
            return Err(Error::InvalidOrder {
                min: 2,
                got: self.order,
            });
        }
        let pairs = self.order * (self.order - 1) / 2;
        Ok(self.edges as f64 / pairs as f64)
    }

    /// 2|E| / n.
    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edges as f64 / self.order as f64
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let mut inv = vec![0; self.order];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        Graph::from_fn(self.order, |a, b| self.has_edge(inv[a], inv[b]))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.order;
        Graph::from_fn(n + other.order, |a, b| {
            if b < n {
                self.has_edge(a, b)
            } else if a >= n {
                other.has_edge(a - n, b - n)
            } else {
                false
            }
        })
    }

    /// Checks the structural invariants (symmetry, no loops, cached lists).
    pub fn validate(&self) -> bool {
        (0..self.order).all(|v| {
            !self.has_edge(v, v)
                && (0..self.order).all(|u| self.has_edge(u, v) == self.has_edge(v, u))
                && self.adj[v].iter().all(|&u| self.has_edge(v, u))
                && self.adj[v].len() == VertexSet::from_words(self.order, self.row(v).to_vec()).len()
        })
    }
}

/// Complete graph K_n.
pub fn complete(n: usize) -> Result<Graph> {
    Graph::empty(n)?;
    Ok(Graph::from_fn(n, |_, _| true))
}

/// Complete bipartite graph together with its two sides.
#[derive(Clone, Debug)]
pub struct Bipartite {
    pub graph: Graph,
    pub sides: [VertexSet; 2],
}

/// K_{n,m}: vertices `0..n` on one side, `n..n+m` on the other.
pub fn complete_bipartite(n: usize, m: usize) -> Result<Bipartite> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidOrder { min: 1, got: 0 });
    }
    let graph = Graph::from_fn(n + m, |a, b| a < n && b >= n);
    let sides = [
        VertexSet::from_vertices(n + m, 0..n),
        VertexSet::from_vertices(n + m, n..n + m),
    ];
    Ok(Bipartite { graph, sides })
}

/// Path P_n on `n` vertices.
pub fn path(n: usize) -> Result<Graph> {
    Graph::empty(n)?;
    Ok(Graph::from_fn(n, |a, b| b == a + 1))
}

/// Cycle C_n; needs `n >= 3` to be simple.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidOrder { min: 3, got: n });
    }
    Ok(Graph::from_fn(n, |a, b| b == a + 1 || (a == 0 && b == n - 1)))
}

/// Star on `n` vertices: hub 0 joined to leaves `1..n` (K_{1,n-1}).
pub fn star(n: usize) -> Result<Graph> {
    Graph::empty(n)?;
    Ok(Graph::from_fn(n, |a, _| a == 0))
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// G(n, p) sampled from `rng`: pairs visited in (u, v), u < v lexicographic
/// order, one draw each.
pub fn er_gnp_with<R: RngCore + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    Graph::empty(n)?;
    check_probability(p)?;
    Ok(Graph::from_fn(n, |_, _| unit_f64(rng) < p))
}

/// G(n, p) from a seed.
pub fn er_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    er_gnp_with(n, p, &mut rng::stream(seed))
}

/// G(n, N): uniform over graphs with exactly `edges` edges, via a partial
/// Fisher-Yates shuffle of the pair list.
pub fn er_gnm_with<R: RngCore + ?Sized>(n: usize, edges: usize, rng: &mut R) -> Result<Graph> {
    Graph::empty(n)?;
    let max = n * (n - 1) / 2;
    if edges > max {
        return Err(Error::TooManyEdges {
            requested: edges,
            max,
            order: n,
        });
    }
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    for i in 0..edges {
        let j = i + uniform_index(rng, max - i);
        pairs.swap(i, j);
    }
    Graph::from_edges(n, &pairs[..edges])
}

pub fn er_gnm(n: usize, edges: usize, seed: u64) -> Result<Graph> {
    er_gnm_with(n, edges, &mut rng::stream(seed))
}
