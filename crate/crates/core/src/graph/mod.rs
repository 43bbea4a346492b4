//! Arrival-ordered multigraphs and their simple projection.
//!
//! An [`ArrivalGraph`] is the multigraph `G_n` on vertices `0..=n` together with
//! the full log of parent draws that built it. Every first-order query in this
//! crate runs on the [`SimpleView`], which collapses parallel edges.

mod search;

pub(crate) use search::distances_from;

pub use search::{
    cycles_up_to, distance_within, offending_path, set_distance, shortest_path, Cycle, Distance,
};

use serde::Serialize;

use crate::error::{Error, Result};

/// Vertex index. Index order is arrival order.
pub type Vertex = u32;

/// The preferential-attachment multigraph together with its draw history.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrivalGraph {
    m: usize,
    last_index: Vertex,
    draws: Vec<(Vertex, Vertex)>,
    degrees: Vec<u64>,
}

impl ArrivalGraph {
    /// `G_1`: vertices 0 and 1 joined by `m` parallel edges.
    pub fn initial(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("m must be positive".into()));
        }
        Ok(Self {
            m,
            last_index: 1,
            draws: vec![(1, 0); m],
            degrees: vec![m as u64, m as u64],
        })
    }

    /// Rebuilds a graph from its draw log, validating the arrival structure.
    pub fn from_draws(m: usize, draws: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Self::initial(m)?;
        if draws.len() < m || !draws.len().is_multiple_of(m) {
            return Err(Error::MalformedGraph(format!(
                "{} draws is not a positive multiple of m={m}",
                draws.len()
            )));
        }
        if draws[..m].iter().any(|&d| d != (1, 0)) {
            return Err(Error::MalformedGraph(
                "the first m draws must be `1 0`".into(),
            ));
        }
        let mut parents = Vec::with_capacity(m);
        for chunk in draws[m..].chunks(m) {
            let child = g.last_index + 1;
            parents.clear();
            for &(c, p) in chunk {
                if c != child {
                    return Err(Error::MalformedGraph(format!(
                        "expected child {child}, found {c}"
                    )));
                }
                if p >= c {
                    return Err(Error::MalformedGraph(format!(
                        "parent {p} is not older than child {c}"
                    )));
                }
                parents.push(p);
            }
            g.push_vertex(&parents)?;
        }
        Ok(g)
    }

    /// Returns a new graph with one more vertex attached to `parents`.
    pub fn add_vertex(&self, parents: &[Vertex]) -> Result<Self> {
        let mut next = self.clone();
        next.push_vertex(parents)?;
        Ok(next)
    }

    /// In-place version of [`ArrivalGraph::add_vertex`]. Leaves `self`
    /// untouched on error.
    pub fn push_vertex(&mut self, parents: &[Vertex]) -> Result<()> {
        if parents.len() != self.m {
            return Err(Error::WrongParentCount {
                expected: self.m,
                got: parents.len(),
            });
        }
        if let Some(&bad) = parents.iter().find(|&&p| p > self.last_index) {
            return Err(Error::VertexOutOfRange {
                vertex: bad.into(),
                last_index: self.last_index.into(),
            });
        }
        let child = self
            .last_index
            .checked_add(1)
            .ok_or_else(|| Error::MalformedGraph("vertex index overflow".into()))?;
        for &p in parents {
            self.draws.push((child, p));
            self.degrees[p as usize] += 1;
        }
        self.degrees.push(self.m as u64);
        self.last_index = child;
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `n`: vertices are `0..=n`.
    pub fn last_index(&self) -> Vertex {
        self.last_index
    }

    pub fn vertex_count(&self) -> usize {
        self.last_index as usize + 1
    }

    /// Every `(child, parent)` draw in creation order.
    pub fn draws(&self) -> &[(Vertex, Vertex)] {
        &self.draws
    }

    /// Multigraph degrees; parallel edges count separately.
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, v: Vertex) -> u64 {
        self.degrees[v as usize]
    }

    pub fn edge_count(&self) -> usize {
        self.draws.len()
    }

    pub fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// The graph as it was when `last_index` was `n`.
    pub fn truncated(&self, n: Vertex) -> Result<Self> {
        if n == 0 || n > self.last_index {
            return Err(Error::VertexOutOfRange {
                vertex: n.into(),
                last_index: self.last_index.into(),
            });
        }
        let keep = self.m * n as usize;
        let draws = self.draws[..keep].to_vec();
        let mut degrees = vec![0u64; n as usize + 1];
        for &(c, p) in &draws {
            degrees[c as usize] += 1;
            degrees[p as usize] += 1;
        }
        Ok(Self {
            m: self.m,
            last_index: n,
            draws,
            degrees,
        })
    }

    /// Largest vertex whose own draws contained a repeated parent, if any.
    /// Vertex 1 counts when `m > 1` since `G_1` is a bundle of parallel edges.
    pub fn last_parallel_draw(&self) -> Option<Vertex> {
        self.draws
            .chunks(self.m)
            .rev()
            .find(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .any(|(i, d)| chunk[..i].iter().any(|e| e.1 == d.1))
            })
            .map(|chunk| chunk[0].0)
    }

    pub fn simple_view(&self) -> SimpleView {
        SimpleView::from_edges(self.vertex_count(), self.draws.iter().copied())
            .expect("arrival graphs have in-range, loop-free draws")
    }
}

/// Simple undirected graph in compressed adjacency form. Neighbor lists are
/// sorted, so adjacency queries are binary searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleView {
    offsets: Vec<usize>,
    neighbors: Vec<Vertex>,
}

impl SimpleView {
    /// Builds a simple graph, collapsing repeated edges in either orientation.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w as usize >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w.into(),
                        last_index: vertex_count.saturating_sub(1) as u64,
                    });
                }
            }
            if u == v {
                return Err(Error::MalformedGraph(format!("self-loop at {u}")));
            }
            pairs.push((u, v));
            pairs.push((v, u));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; vertex_count + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..vertex_count {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Self { offsets, neighbors })
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.vertex_count() as Vertex
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Re-projects the view. The result always equals `self`.
    pub fn simple_view(&self) -> SimpleView {
        SimpleView::from_edges(self.vertex_count(), self.edges())
            .expect("a simple view is already valid")
    }

    /// Subgraph induced on the prefix `0..=t`.
    pub fn induced_prefix(&self, prefix: PrefixSet) -> SimpleView {
        let t = prefix
            .bound()
            .min(self.vertex_count().saturating_sub(1) as Vertex);
        let edges = self.edges().filter(|&(_, v)| v <= t);
        SimpleView::from_edges(t as usize + 1, edges).expect("prefix edges are in range")
    }
}

/// The vertex prefix `{0, 1, ..., t}`; plays the role of `[n_0]` and `[N_0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrefixSet {
    bound: Vertex,
}

impl PrefixSet {
    pub fn new(bound: Vertex) -> Self {
        Self { bound }
    }

    /// Like [`PrefixSet::new`] but rejects bounds past `last_index`.
    pub fn within(bound: Vertex, last_index: Vertex) -> Result<Self> {
        if bound > last_index {
            return Err(Error::VertexOutOfRange {
                vertex: bound.into(),
                last_index: last_index.into(),
            });
        }
        Ok(Self { bound })
    }

    pub fn bound(self) -> Vertex {
        self.bound
    }

    pub fn contains(self, v: Vertex) -> bool {
        v <= self.bound
    }

    pub fn vertices(self) -> Vec<Vertex> {
        (0..=self.bound).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_vertex_updates_degrees() {
        let g1 = ArrivalGraph::initial(2).unwrap();
        let g = g1.add_vertex(&[0, 0]).unwrap();
        assert_eq!(g.degrees(), &[4, 2, 2]);
        let g = g1.add_vertex(&[0, 1]).unwrap();
        assert_eq!(g.degrees(), &[3, 3, 2]);
        assert_eq!(g.last_index(), 2);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn add_vertex_rejects_bad_parents() {
        let g1 = ArrivalGraph::initial(2).unwrap();
        assert!(matches!(
            g1.add_vertex(&[5]),
            Err(Error::WrongParentCount { .. })
        ));
        assert!(matches!(
            g1.add_vertex(&[5, 0]),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
        let g = ArrivalGraph::initial(1).unwrap();
        assert!(matches!(
            g.add_vertex(&[5]),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn simple_view_collapses_parallel_edges() {
        let g = ArrivalGraph::initial(3).unwrap();
        let sv = g.simple_view();
        assert_eq!(sv.edge_count(), 1);
        assert!(sv.adjacent(0, 1));
        assert_eq!(sv.degree(0), 1);
    }

    #[test]
    fn simple_view_identity_on_simple_input() {
        let sv = SimpleView::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(sv.simple_view(), sv);
        assert_eq!(
            sv.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 3), (1, 2), (2, 3)]
        );
    }

    #[test]
    fn from_draws_roundtrip_and_errors() {
        let g = ArrivalGraph::initial(2)
            .unwrap()
            .add_vertex(&[0, 1])
            .unwrap()
            .add_vertex(&[2, 2])
            .unwrap();
        assert_eq!(ArrivalGraph::from_draws(2, g.draws()).unwrap(), g);
        assert!(ArrivalGraph::from_draws(2, &[(1, 0), (1, 0), (2, 2), (2, 0)]).is_err());
        assert!(ArrivalGraph::from_draws(2, &[(1, 0), (1, 0), (3, 0), (3, 0)]).is_err());
        assert!(ArrivalGraph::from_draws(2, &[(1, 0)]).is_err());
    }

    #[test]
    fn truncation_recovers_history() {
        let g2 = ArrivalGraph::initial(2)
            .unwrap()
            .add_vertex(&[0, 1])
            .unwrap();
        let g3 = g2.add_vertex(&[2, 0]).unwrap();
        assert_eq!(g3.truncated(2).unwrap(), g2);
        assert!(g3.truncated(4).is_err());
    }

    #[test]
    fn last_parallel_draw_tracks_repeats() {
        let g = ArrivalGraph::initial(2).unwrap();
        assert_eq!(g.last_parallel_draw(), Some(1));
        let g = g.add_vertex(&[0, 0]).unwrap().add_vertex(&[0, 1]).unwrap();
        assert_eq!(g.last_parallel_draw(), Some(2));
        assert_eq!(ArrivalGraph::initial(1).unwrap().last_parallel_draw(), None);
    }

    #[test]
    fn induced_prefix_keeps_inner_edges() {
        let sv = SimpleView::from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 4)]).unwrap();
        let p = sv.induced_prefix(PrefixSet::new(2));
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn prefix_set_bounds() {
        assert!(PrefixSet::within(3, 2).is_err());
        let p = PrefixSet::within(2, 2).unwrap();
        assert!(p.contains(0) && p.contains(2) && !p.contains(3));
        assert_eq!(p.vertices(), vec![0, 1, 2]);
    }
}
