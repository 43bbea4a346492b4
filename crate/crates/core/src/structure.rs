//! The structural conditions Q1, Q2 and Q3 on a concrete graph.
//!
//! All checks run on the simple view. Prefixes `[n0]` and `[N0]` are
//! `{0, ..., n0}` and `{0, ..., N0}`. Path length is counted in edges except
//! in Q1's prefix-to-prefix clause, which bounds the number of vertices.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    cycles_up_to, distance_within, distances_from, offending_path, shortest_path, ArrivalGraph,
    Cycle, PrefixSet, SimpleView, Vertex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StructureParams {
    pub n0: Vertex,
    #[serde(rename = "N0")]
    pub big_n0: Vertex,
    /// Locality radius; `3R` when derived from a round budget.
    pub a: usize,
    pub m: usize,
}

impl StructureParams {
    pub fn new(n0: Vertex, big_n0: Vertex, a: usize, m: usize) -> Result<Self> {
        if a < 3 {
            return Err(Error::InvalidStructureParams(format!(
                "a must be at least 3, got {a}"
            )));
        }
        if n0 >= big_n0 {
            return Err(Error::InvalidStructureParams(format!(
                "need n0 < N0, got n0={n0}, N0={big_n0}"
            )));
        }
        Ok(Self { n0, big_n0, a, m })
    }

    /// Uses `a = 3 * rounds`.
    pub fn from_rounds(n0: Vertex, big_n0: Vertex, rounds: usize, m: usize) -> Result<Self> {
        if rounds == 0 {
            return Err(Error::InvalidStructureParams(
                "round budget must be positive".into(),
            ));
        }
        Self::new(n0, big_n0, 3 * rounds, m)
    }

    pub fn small(&self) -> PrefixSet {
        PrefixSet::new(self.n0)
    }

    pub fn big(&self) -> PrefixSet {
        PrefixSet::new(self.big_n0)
    }

    /// Checks `N0 < n` for a graph on `0..=n`.
    pub fn validate_for(&self, sv: &SimpleView) -> Result<()> {
        let last = sv.vertex_count().saturating_sub(1) as Vertex;
        if self.big_n0 >= last {
            return Err(Error::InvalidStructureParams(format!(
                "need N0 < n, got N0={}, n={last}",
                self.big_n0
            )));
        }
        Ok(())
    }

    // Q3 only needs the vertices of [N0] to exist.
    fn validate_prefix(&self, vertex_count: usize) -> Result<()> {
        if self.big_n0 as usize >= vertex_count {
            return Err(Error::InvalidStructureParams(format!(
                "N0={} is not a vertex of a graph with {vertex_count} vertices",
                self.big_n0
            )));
        }
        Ok(())
    }
}

/// Which degree Q3 compares against `N0 + m`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMode {
    /// Distinct neighbors.
    #[default]
    Simple,
    /// Parallel edges counted separately.
    Multigraph,
}

/// Evidence that a condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A short cycle that is neither confined to `[N0]` together with its short
    /// connections to `[n0]`, nor at distance at least `a` from `[n0]`.
    /// `path` is a short connecting path leaving `[N0]` when the cycle lies
    /// inside `[N0]`.
    CycleNearPrefix {
        cycle: Cycle,
        distance: usize,
        path: Option<Vec<Vertex>>,
    },
    /// A path with at most `a` vertices between two vertices of `[n0]` that
    /// leaves `[N0]`.
    PrefixPathEscapes { path: Vec<Vertex> },
    /// Two short cycles outside `[n0]` closer than `a`.
    CloseCyclePair {
        first: Cycle,
        second: Cycle,
        distance: usize,
    },
    /// Fewer than `m` cycles of some length avoid `[N0]`.
    MissingCycles {
        length: usize,
        found: usize,
        required: usize,
    },
    /// A vertex of `[N0]` with degree below `N0 + m`.
    LowDegree {
        vertex: Vertex,
        degree: u64,
        required: u64,
    },
}

impl Witness {
    /// Re-derives the claimed violation from graph primitives.
    pub fn validate(&self, sv: &SimpleView, p: &StructureParams) -> bool {
        let small = p.small().vertices();
        let big = p.big();
        match self {
            Witness::CycleNearPrefix {
                cycle,
                distance,
                path,
            } => {
                let true_dist = distance_within(sv, &small, cycle.vertices(), p.a - 1)
                    .ok()
                    .flatten();
                let inside = cycle.vertices().iter().all(|&v| big.contains(v));
                cycle.is_valid_in(sv)
                    && cycle.len() <= p.a
                    && true_dist == Some(*distance)
                    && match path {
                        Some(path) => {
                            inside
                                && valid_path(sv, path)
                                && path.len() <= p.a + 1
                                && small.contains(&path[0])
                                && cycle.vertices().contains(path.last().unwrap())
                                && path.iter().any(|&v| !big.contains(v))
                        }
                        None => !inside,
                    }
            }
            Witness::PrefixPathEscapes { path } => {
                valid_path(sv, path)
                    && path.len() >= 2
                    && path.len() <= p.a
                    && p.small().contains(path[0])
                    && p.small().contains(*path.last().unwrap())
                    && path.iter().any(|&v| !big.contains(v))
            }
            Witness::CloseCyclePair {
                first,
                second,
                distance,
            } => {
                let outside = |c: &Cycle| c.vertices().iter().all(|&v| !p.small().contains(v));
                first != second
                    && first.is_valid_in(sv)
                    && second.is_valid_in(sv)
                    && first.len() <= p.a
                    && second.len() <= p.a
                    && outside(first)
                    && outside(second)
                    && *distance < p.a
                    && distance_within(sv, first.vertices(), second.vertices(), p.a - 1)
                        .ok()
                        .flatten()
                        == Some(*distance)
            }
            Witness::MissingCycles {
                length,
                found,
                required,
            } => {
                *required == p.m
                    && found < required
                    && cycles_up_to(sv, *length).is_ok_and(|cs| {
                        cs.iter()
                            .filter(|c| c.len() == *length && avoids(c, big))
                            .count()
                            == *found
                    })
            }
            Witness::LowDegree {
                vertex,
                degree,
                required,
            } => {
                big.contains(*vertex)
                    && *required == u64::from(p.big_n0) + p.m as u64
                    && degree < required
            }
        }
    }
}

fn valid_path(sv: &SimpleView, path: &[Vertex]) -> bool {
    let distinct: HashSet<_> = path.iter().collect();
    !path.is_empty()
        && distinct.len() == path.len()
        && path.windows(2).all(|w| sv.adjacent(w[0], w[1]))
}

fn avoids(c: &Cycle, prefix: PrefixSet) -> bool {
    c.vertices().iter().all(|&v| !prefix.contains(v))
}

/// Outcome of one condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckOutcome {
    fn pass() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    fn fail(w: Witness) -> Self {
        Self {
            holds: false,
            witness: Some(w),
        }
    }
}

/// Verdicts for all three conditions on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub n: Vertex,
    pub n0: Vertex,
    #[serde(rename = "N0")]
    pub big_n0: Vertex,
    pub a: usize,
    pub m: usize,
    pub q1: bool,
    pub q2: bool,
    pub q3: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<Witness>,
}

impl StructureReport {
    pub fn all_hold(&self) -> bool {
        self.q1 && self.q2 && self.q3
    }
}

/// Q1: cycle locality around `[n0]` and `[N0]`.
pub fn check_q1(sv: &SimpleView, p: &StructureParams) -> Result<CheckOutcome> {
    p.validate_for(sv)?;
    let cycles = cycles_up_to(sv, p.a)?;
    q1_with_cycles(sv, p, &cycles)
}

fn q1_with_cycles(sv: &SimpleView, p: &StructureParams, cycles: &[Cycle]) -> Result<CheckOutcome> {
    let small = p.small().vertices();
    let big = p.big();

    // (i) each short cycle is confined to [N0] or far from [n0].
    for cycle in cycles {
        let near = distance_within(sv, &small, cycle.vertices(), p.a - 1)?;
        let Some(distance) = near else { continue };
        let inside = cycle.vertices().iter().all(|&v| big.contains(v));
        if !inside {
            return Ok(CheckOutcome::fail(Witness::CycleNearPrefix {
                cycle: cycle.clone(),
                distance,
                path: None,
            }));
        }
        if let Some(path) = offending_path(sv, &small, cycle.vertices(), p.a, big)? {
            return Ok(CheckOutcome::fail(Witness::CycleNearPrefix {
                cycle: cycle.clone(),
                distance,
                path: Some(path),
            }));
        }
    }

    // (ii) paths with at most a vertices between [n0] vertices stay in [N0].
    if let Some(path) = offending_path(sv, &small, &small, p.a - 1, big)? {
        return Ok(CheckOutcome::fail(Witness::PrefixPathEscapes { path }));
    }

    // (iii) short cycles avoiding [n0] are pairwise at distance >= a.
    let outer: Vec<&Cycle> = cycles.iter().filter(|c| avoids(c, p.small())).collect();
    for (i, first) in outer.iter().enumerate() {
        let ball = distances_from(sv, first.vertices(), p.a - 1);
        for second in &outer[i + 1..] {
            let close = second.vertices().iter().filter_map(|v| ball.get(v)).min();
            if let Some(&distance) = close {
                return Ok(CheckOutcome::fail(Witness::CloseCyclePair {
                    first: (*first).clone(),
                    second: (*second).clone(),
                    distance,
                }));
            }
        }
    }
    Ok(CheckOutcome::pass())
}

/// Q2: for every `3 <= b <= a`, at least `m` `b`-cycles avoid `[N0]`.
pub fn check_q2(sv: &SimpleView, p: &StructureParams) -> Result<CheckOutcome> {
    p.validate_for(sv)?;
    let cycles = cycles_up_to(sv, p.a)?;
    Ok(q2_with_cycles(p, &cycles))
}

fn q2_with_cycles(p: &StructureParams, cycles: &[Cycle]) -> CheckOutcome {
    let mut by_length = vec![0usize; p.a + 1];
    for c in cycles.iter().filter(|c| avoids(c, p.big())) {
        by_length[c.len()] += 1;
    }
    for (length, &found) in by_length.iter().enumerate().skip(3) {
        if found < p.m {
            return CheckOutcome::fail(Witness::MissingCycles {
                length,
                found,
                required: p.m,
            });
        }
    }
    CheckOutcome::pass()
}

/// Q3 on simple-view degrees: every vertex of `[N0]` has at least `N0 + m`
/// distinct neighbors.
pub fn check_q3(sv: &SimpleView, p: &StructureParams) -> Result<CheckOutcome> {
    p.validate_prefix(sv.vertex_count())?;
    Ok(q3_with_degrees(p, |v| sv.degree(v) as u64))
}

/// Q3 on multigraph degrees.
pub fn check_q3_multigraph(g: &ArrivalGraph, p: &StructureParams) -> Result<CheckOutcome> {
    p.validate_prefix(g.vertex_count())?;
    Ok(q3_with_degrees(p, |v| g.degree(v)))
}

fn q3_with_degrees(p: &StructureParams, degree: impl Fn(Vertex) -> u64) -> CheckOutcome {
    let required = u64::from(p.big_n0) + p.m as u64;
    for vertex in 0..=p.big_n0 {
        let d = degree(vertex);
        if d < required {
            return CheckOutcome::fail(Witness::LowDegree {
                vertex,
                degree: d,
                required,
            });
        }
    }
    CheckOutcome::pass()
}

/// Runs Q1 to Q3 on a simple graph.
pub fn check_view(sv: &SimpleView, p: &StructureParams) -> Result<StructureReport> {
    p.validate_for(sv)?;
    let cycles = cycles_up_to(sv, p.a)?;
    let q1 = q1_with_cycles(sv, p, &cycles)?;
    let q2 = q2_with_cycles(p, &cycles);
    let q3 = q3_with_degrees(p, |v| sv.degree(v) as u64);
    Ok(assemble(sv, p, q1, q2, q3))
}

/// Runs Q1 to Q3 on an arrival graph, with Q3 in the requested degree mode.
pub fn check_all(
    g: &ArrivalGraph,
    p: &StructureParams,
    mode: DegreeMode,
) -> Result<StructureReport> {
    let sv = g.simple_view();
    check_all_with_view(g, &sv, p, mode)
}

/// [`check_all`] reusing an already built simple view of `g`.
pub fn check_all_with_view(
    g: &ArrivalGraph,
    sv: &SimpleView,
    p: &StructureParams,
    mode: DegreeMode,
) -> Result<StructureReport> {
    match mode {
        DegreeMode::Simple => check_view(sv, p),
        DegreeMode::Multigraph => {
            p.validate_for(sv)?;
            let cycles = cycles_up_to(sv, p.a)?;
            let q1 = q1_with_cycles(sv, p, &cycles)?;
            let q2 = q2_with_cycles(p, &cycles);
            let q3 = q3_with_degrees(p, |v| g.degree(v));
            Ok(assemble(sv, p, q1, q2, q3))
        }
    }
}

/// Runs Q1 to Q3 with the short cycles of `sv` already enumerated; cycles
/// longer than `a` are ignored. Q3 uses `multigraph_degrees` when given.
pub fn check_with_cycles(
    sv: &SimpleView,
    p: &StructureParams,
    cycles: &[Cycle],
    multigraph_degrees: Option<&[u64]>,
) -> Result<StructureReport> {
    p.validate_for(sv)?;
    let short: Vec<Cycle> = cycles.iter().filter(|c| c.len() <= p.a).cloned().collect();
    let q1 = q1_with_cycles(sv, p, &short)?;
    let q2 = q2_with_cycles(p, &short);
    let q3 = match multigraph_degrees {
        Some(d) => q3_with_degrees(p, |v| d[v as usize]),
        None => q3_with_degrees(p, |v| sv.degree(v) as u64),
    };
    Ok(assemble(sv, p, q1, q2, q3))
}

fn assemble(
    sv: &SimpleView,
    p: &StructureParams,
    q1: CheckOutcome,
    q2: CheckOutcome,
    q3: CheckOutcome,
) -> StructureReport {
    StructureReport {
        n: sv.vertex_count().saturating_sub(1) as Vertex,
        n0: p.n0,
        big_n0: p.big_n0,
        a: p.a,
        m: p.m,
        q1: q1.holds,
        q2: q2.holds,
        q3: q3.holds,
        witness: [q1.witness, q2.witness, q3.witness]
            .into_iter()
            .flatten()
            .collect(),
    }
}

/// Vertex and edge counts of the union of two cycles with a shortest path
/// joining them. Two short cycles that close in on each other always give a
/// union with at least one more edge than vertices.
pub fn cycle_pair_union(
    sv: &SimpleView,
    first: &Cycle,
    second: &Cycle,
) -> Result<Option<(usize, usize)>> {
    let Some(path) = shortest_path(sv, first.vertices(), second.vertices())? else {
        return Ok(None);
    };
    let mut vertices: HashSet<Vertex> = HashSet::new();
    let mut edges: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut add = |u: Vertex, v: Vertex| {
        vertices.insert(u);
        vertices.insert(v);
        edges.insert((u.min(v), u.max(v)));
    };
    for (u, v) in first.edges().chain(second.edges()) {
        add(u, v);
    }
    for w in path.windows(2) {
        add(w[0], w[1]);
    }
    Ok(Some((vertices.len(), edges.len())))
}
