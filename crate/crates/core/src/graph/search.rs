//! Bounded breadth- and depth-first search over a [`SimpleView`].

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use super::{PrefixSet, SimpleView, Vertex};
use crate::error::{Error, Result};

/// Shortest-path distance in edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Distance::Finite(d) => d >= bound,
            Distance::Infinite => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_none(),
        }
    }
}

/// A simple cycle, stored with its smallest vertex first and oriented so the
/// second vertex is the smaller of that vertex's two cycle neighbors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Cycle(Vec<Vertex>);

impl Cycle {
    /// Canonicalizes a cyclic vertex sequence. Does not check adjacency.
    pub fn canonical(mut vertices: Vec<Vertex>) -> Self {
        if let Some(pos) = vertices
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| *v)
            .map(|(i, _)| i)
        {
            vertices.rotate_left(pos);
        }
        let len = vertices.len();
        if len > 2 && vertices[1] > vertices[len - 1] {
            vertices[1..].reverse();
        }
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive pairs including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    pub fn is_valid_in(&self, sv: &SimpleView) -> bool {
        let distinct: HashSet<_> = self.0.iter().collect();
        self.0.len() >= 3
            && distinct.len() == self.0.len()
            && self.edges().all(|(u, v)| sv.adjacent(u, v))
    }
}

/// Minimum edge distance between two vertex sets; 0 when they intersect.
pub fn set_distance(sv: &SimpleView, from: &[Vertex], to: &[Vertex]) -> Result<Distance> {
    Ok(match distance_within(sv, from, to, usize::MAX)? {
        Some(d) => Distance::Finite(d),
        None => Distance::Infinite,
    })
}

/// Like [`set_distance`] but gives up past `limit`, returning `None`.
pub fn distance_within(
    sv: &SimpleView,
    from: &[Vertex],
    to: &[Vertex],
    limit: usize,
) -> Result<Option<usize>> {
    if from.is_empty() || to.is_empty() {
        return Err(Error::EmptySet);
    }
    let targets: HashSet<Vertex> = to.iter().copied().collect();
    let mut seen: HashSet<Vertex> = HashSet::new();
    let mut queue = VecDeque::new();
    for &v in from {
        if targets.contains(&v) {
            return Ok(Some(0));
        }
        if seen.insert(v) {
            queue.push_back((v, 0usize));
        }
    }
    while let Some((v, d)) = queue.pop_front() {
        if d >= limit {
            continue;
        }
        for &w in sv.neighbors(v) {
            if targets.contains(&w) {
                return Ok(Some(d + 1));
            }
            if seen.insert(w) {
                queue.push_back((w, d + 1));
            }
        }
    }
    Ok(None)
}

/// Distances from `sources` to every vertex within `limit` edges.
pub(crate) fn distances_from(
    sv: &SimpleView,
    sources: &[Vertex],
    limit: usize,
) -> HashMap<Vertex, usize> {
    let mut dist = HashMap::new();
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist.insert(s, 0).is_none() {
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d >= limit {
            continue;
        }
        for &w in sv.neighbors(v) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// A shortest path from `from` to `to`, as a vertex sequence. `None` when the
/// sets lie in different components.
pub fn shortest_path(
    sv: &SimpleView,
    from: &[Vertex],
    to: &[Vertex],
) -> Result<Option<Vec<Vertex>>> {
    if from.is_empty() || to.is_empty() {
        return Err(Error::EmptySet);
    }
    let targets: HashSet<Vertex> = to.iter().copied().collect();
    let mut parent: HashMap<Vertex, Option<Vertex>> = HashMap::new();
    let mut queue = VecDeque::new();
    for &v in from {
        if targets.contains(&v) {
            return Ok(Some(vec![v]));
        }
        if parent.insert(v, None).is_none() {
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in sv.neighbors(v) {
            if parent.contains_key(&w) {
                continue;
            }
            parent.insert(w, Some(v));
            if targets.contains(&w) {
                let mut path = vec![w];
                let mut cur = v;
                loop {
                    path.push(cur);
                    match parent[&cur] {
                        Some(p) => cur = p,
                        None => break,
                    }
                }
                path.reverse();
                return Ok(Some(path));
            }
            queue.push_back(w);
        }
    }
    Ok(None)
}

/// Every simple cycle with between 3 and `max_vertices` vertices, each reported
/// once in canonical form, sorted.
pub fn cycles_up_to(sv: &SimpleView, max_vertices: usize) -> Result<Vec<Cycle>> {
    if max_vertices < 3 {
        return Err(Error::CycleBoundTooSmall(max_vertices));
    }
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(max_vertices);
    for s in sv.vertices() {
        if sv.degree(s) < 2 {
            continue;
        }
        path.clear();
        path.push(s);
        extend_cycle(sv, max_vertices, &mut path, &mut out);
    }
    out.sort();
    Ok(out)
}

// Depth-first extension of a path whose first vertex is the cycle minimum.
fn extend_cycle(
    sv: &SimpleView,
    max_vertices: usize,
    path: &mut Vec<Vertex>,
    out: &mut Vec<Cycle>,
) {
    let s = path[0];
    let v = *path.last().unwrap();
    let len = path.len();
    if len >= 3 && path[1] < v && sv.adjacent(v, s) {
        out.push(Cycle(path.clone()));
    }
    if len == max_vertices {
        return;
    }
    let above = |list: &[Vertex]| {
        let start = list.partition_point(|&w| w <= s);
        list[start..].to_vec()
    };
    // The last vertex must close back to s, so only common neighbors qualify.
    let candidates: Vec<Vertex> = if len + 1 == max_vertices {
        let nv = sv.neighbors(v);
        above(sv.neighbors(s))
            .into_iter()
            .filter(|w| nv.binary_search(w).is_ok())
            .collect()
    } else {
        above(sv.neighbors(v))
    };
    for w in candidates {
        if path.contains(&w) {
            continue;
        }
        path.push(w);
        extend_cycle(sv, max_vertices, path, out);
        path.pop();
    }
}

/// Searches for a simple path with at most `max_len` edges that starts in
/// `from`, ends in `to` and uses at least one vertex outside `allowed`.
/// Returns the first such path found.
pub fn offending_path(
    sv: &SimpleView,
    from: &[Vertex],
    to: &[Vertex],
    max_len: usize,
    allowed: PrefixSet,
) -> Result<Option<Vec<Vertex>>> {
    if from.is_empty() || to.is_empty() {
        return Err(Error::EmptySet);
    }
    let targets: HashSet<Vertex> = to.iter().copied().collect();
    let to_target = distances_from(sv, to, max_len);
    let mut search = PathSearch {
        sv,
        targets: &targets,
        to_target: &to_target,
        allowed,
        max_len,
        path: Vec::with_capacity(max_len + 1),
    };
    let mut starts: Vec<Vertex> = from.to_vec();
    starts.sort_unstable();
    starts.dedup();
    for a in starts {
        if !to_target.contains_key(&a) {
            continue;
        }
        search.path.push(a);
        let outside = usize::from(!allowed.contains(a));
        if search.run(outside) {
            return Ok(Some(search.path));
        }
        search.path.pop();
    }
    Ok(None)
}

struct PathSearch<'a> {
    sv: &'a SimpleView,
    targets: &'a HashSet<Vertex>,
    to_target: &'a HashMap<Vertex, usize>,
    allowed: PrefixSet,
    max_len: usize,
    path: Vec<Vertex>,
}

impl PathSearch<'_> {
    fn run(&mut self, outside: usize) -> bool {
        let v = *self.path.last().unwrap();
        if outside > 0 && self.targets.contains(&v) {
            return true;
        }
        let used = self.path.len() - 1;
        if used == self.max_len {
            return false;
        }
        let remaining = self.max_len - used - 1;
        for &w in self.sv.neighbors(v) {
            match self.to_target.get(&w) {
                Some(&d) if d <= remaining => {}
                _ => continue,
            }
            if self.path.contains(&w) {
                continue;
            }
            self.path.push(w);
            if self.run(outside + usize::from(!self.allowed.contains(w))) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}
