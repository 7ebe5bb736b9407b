//! Graph representation and the graph-level operations the polymer models
//! are built from.

mod connected;
mod expansion;
pub mod io;
mod random;
mod vertex_set;

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use connected::{
    connected_set_bound, enumerate_connected_sets, for_each_connected_set,
    for_each_rooted_connected_set,
};
pub use expansion::{
    bassalygo_threshold, bipartite_vertex_expansion, expansion_exact, expansion_spectral,
    random_regular_expander_params, ExactRatio, ExpansionMethod, ExpansionReport, VertexExpansion,
    DEFAULT_EXACT_CAP,
};
pub use random::{random_regular, MAX_REJECTIONS};
pub use vertex_set::VertexSet;

/// One side of a bipartition: `Odd` is the first declared class, `Even` the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Odd,
    Even,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Odd => Side::Even,
            Side::Even => Side::Odd,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    odd: VertexSet,
    even: VertexSet,
}

impl Bipartition {
    pub fn odd(&self) -> &VertexSet {
        &self.odd
    }

    pub fn even(&self) -> &VertexSet {
        &self.even
    }

    pub fn side(&self, side: Side) -> &VertexSet {
        match side {
            Side::Odd => &self.odd,
            Side::Even => &self.even,
        }
    }

    pub fn side_of(&self, v: usize) -> Side {
        if self.odd.contains(v) {
            Side::Odd
        } else {
            Side::Even
        }
    }

    /// Common side size when both classes have equal cardinality.
    pub fn balanced_size(&self) -> Option<usize> {
        (self.odd.len() == self.even.len()).then(|| self.odd.len())
    }
}

/// Immutable simple undirected graph with sorted adjacency lists and an
/// optional bipartition `(O, E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    max_degree: usize,
    sides: Option<Bipartition>,
}

impl Graph {
    /// Validates and builds a graph. `sides`, when given, must partition the
    /// vertex set and every edge must cross it.
    pub fn build(
        n: usize,
        edges: &[(usize, usize)],
        sides: Option<(Vec<usize>, Vec<usize>)>,
    ) -> Result<Graph> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            normalized.push(key);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        normalized.sort_unstable();
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        let mut g = Graph {
            n,
            adjacency,
            edges: normalized,
            max_degree,
            sides: None,
        };
        if let Some((odd, even)) = sides {
            g.sides = Some(g.check_bipartition(&odd, &even)?);
        }
        Ok(g)
    }

    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Self::build(n, edges, None)
    }

    fn check_bipartition(&self, odd: &[usize], even: &[usize]) -> Result<Bipartition> {
        let n = self.n;
        let mut o = VertexSet::empty(n);
        let mut e = VertexSet::empty(n);
        for &v in odd {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if !o.insert(v) {
                return Err(Error::InvalidBipartition(format!(
                    "vertex {v} listed twice"
                )));
            }
        }
        for &v in even {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if o.contains(v) || !e.insert(v) {
                return Err(Error::InvalidBipartition(format!(
                    "vertex {v} listed twice"
                )));
            }
        }
        if o.len() + e.len() != n {
            return Err(Error::InvalidBipartition(
                "sides do not cover every vertex".into(),
            ));
        }
        for &(u, v) in &self.edges {
            if o.contains(u) == o.contains(v) {
                return Err(Error::EdgeWithinSide(u, v));
            }
        }
        Ok(Bipartition { odd: o, even: e })
    }

    /// Returns this graph with a bipartition attached, computing a
    /// 2-coloring by BFS when none was declared. The lowest vertex of each
    /// component goes to the odd side.
    pub fn require_bipartition(&self) -> Result<Graph> {
        if self.sides.is_some() {
            return Ok(self.clone());
        }
        let mut color = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adjacency[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return Err(Error::NotBipartite),
                        _ => {}
                    }
                }
            }
        }
        let odd: Vec<usize> = (0..self.n).filter(|&v| color[v] == Some(false)).collect();
        let even: Vec<usize> = (0..self.n).filter(|&v| color[v] == Some(true)).collect();
        let mut g = self.clone();
        g.sides = Some(g.check_bipartition(&odd, &even)?);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first().map_or(0, Vec::len);
        self.adjacency.iter().all(|a| a.len() == d).then_some(d)
    }

    pub fn sides(&self) -> Option<&Bipartition> {
        self.sides.as_ref()
    }

    /// Side size `m` when the graph is bipartite with equal sides.
    pub fn side_size(&self) -> Option<usize> {
        self.sides.as_ref().and_then(Bipartition::balanced_size)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_vertices(self.n, self.adjacency[v].iter().copied())
    }

    /// Neighbourhoods in the `k`-th power `G^k` (vertices at distance
    /// `1..=k`), one set per vertex.
    pub fn power_neighborhoods(&self, k: usize) -> Vec<VertexSet> {
        (0..self.n)
            .map(|v| {
                let mut ball = self.ball(&VertexSet::singleton(self.n, v), k);
                ball.remove(v);
                ball
            })
            .collect()
    }

    /// All vertices within graph distance `k` of `set` (including `set`).
    pub fn ball(&self, set: &VertexSet, k: usize) -> VertexSet {
        let mut ball = set.clone();
        let mut frontier = set.clone();
        for _ in 0..k {
            let mut next = VertexSet::empty(self.n);
            for v in frontier.iter() {
                for &w in &self.adjacency[v] {
                    if !ball.contains(w) {
                        next.insert(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            ball.union_with(&next);
            frontier = next;
        }
        ball
    }

    /// Number of edges of the induced subgraph `G[S]`.
    pub fn induced_edge_count(&self, set: &VertexSet) -> usize {
        set.iter()
            .map(|v| {
                self.adjacency[v]
                    .iter()
                    .filter(|&&w| w > v && set.contains(w))
                    .count()
            })
            .sum()
    }

    pub fn boundaries(&self, set: &VertexSet) -> Boundaries {
        let mut vertex_boundary = VertexSet::empty(self.n);
        let mut edge_boundary = 0;
        for v in set.iter() {
            for &w in &self.adjacency[v] {
                if !set.contains(w) {
                    vertex_boundary.insert(w);
                    edge_boundary += 1;
                }
            }
        }
        let incident_edges = self.induced_edge_count(set) + edge_boundary;
        let closure = set.union(&vertex_boundary);
        Boundaries {
            vertex_boundary,
            edge_boundary,
            incident_edges,
            closure,
        }
    }

    /// Components of `G^k[S]`, each as a vertex set, ordered by smallest member.
    pub fn power_components(&self, set: &VertexSet, k: usize) -> Vec<VertexSet> {
        let mut remaining = set.clone();
        let mut out = Vec::new();
        while let Some(start) = remaining.first() {
            let mut comp = VertexSet::singleton(self.n, start);
            let mut frontier = comp.clone();
            remaining.remove(start);
            while !frontier.is_empty() {
                let reach = self.ball(&frontier, k).intersection(&remaining);
                remaining.difference_with(&reach);
                comp.union_with(&reach);
                frontier = reach;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_power_connected(&self, set: &VertexSet, k: usize) -> bool {
        !set.is_empty() && self.power_components(set, k).len() == 1
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.is_power_connected(&self.all_vertices(), 1)
    }

    /// Graph distance between two vertex sets, `None` when unreachable.
    pub fn set_distance(&self, a: &VertexSet, b: &VertexSet) -> Option<usize> {
        if a.is_empty() || b.is_empty() {
            return None;
        }
        let mut ball = a.clone();
        let mut frontier = a.clone();
        let mut d = 0;
        loop {
            if !ball.is_disjoint(b) {
                return Some(d);
            }
            let grown = self.ball(&frontier, 1);
            let next = grown.difference(&ball);
            if next.is_empty() {
                return None;
            }
            ball.union_with(&next);
            frontier = next;
            d += 1;
        }
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter()
            .all(|v| self.adjacency[v].iter().all(|&w| !set.contains(w)))
    }
}

/// Result of [`Graph::boundaries`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundaries {
    /// `∂S`: vertices outside `S` adjacent to `S`.
    pub vertex_boundary: VertexSet,
    /// `|∂ₑS|`: edges with exactly one endpoint in `S`.
    pub edge_boundary: usize,
    /// `|∇(S)|`: edges with at least one endpoint in `S`.
    pub incident_edges: usize,
    /// `S⁺ = S ∪ ∂S`.
    pub closure: VertexSet,
}

/// Standard test graphs.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, &edges).expect("complete graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges: Vec<_> = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .collect();
        Graph::build(
            a + b,
            &edges,
            Some(((0..a).collect(), (a..a + b).collect())),
        )
        .expect("K_{a,b} is bipartite")
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("cycle is simple for n >= 3")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path is simple")
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges).expect("Petersen graph is simple")
    }
}
