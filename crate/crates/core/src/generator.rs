//! Seeded growth of the preferential attachment multigraph.
//!
//! Each new vertex `v` draws its `m` parents i.i.d. from the weights
//! `deg(i) + delta` frozen at the start of the step; degrees are updated only
//! after all `m` parents are chosen. Weights are kept as integers scaled by
//! the denominator `q` of `delta = p/q`, so the total is exactly
//! `q * (2 m n + (n + 1) delta)`.
//!
//! Randomness: vertex `v` reads ChaCha8 stream number `v` of the run seed
//! from word position 0, consuming one uniform integer draw per parent in
//! order. The draws of a vertex therefore depend only on the seed, the vertex
//! index and the history, which makes growth resumable and replayable.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fenwick::Fenwick;
use crate::graph::{ArrivalGraph, Vertex};
use crate::params::ModelParams;

/// Attachment weights `deg(i) + delta` of every vertex, scaled by `q`.
#[derive(Clone, Debug)]
pub struct WeightTable {
    numer: u64,
    denom: u64,
    tree: Fenwick,
}

impl WeightTable {
    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// Exact weight `deg(i) + delta`.
    pub fn weight(&self, i: Vertex) -> Ratio<u64> {
        Ratio::new(self.tree.get(i as usize), self.denom)
    }

    /// Exact normalizer `Z = sum_i (deg(i) + delta)`.
    pub fn total(&self) -> Ratio<u64> {
        Ratio::new(self.tree.total(), self.denom)
    }

    pub fn scaled_total(&self) -> u64 {
        self.tree.total()
    }

    pub fn probability(&self, i: Vertex) -> f64 {
        self.tree.get(i as usize) as f64 / self.tree.total() as f64
    }

    /// The vertex owning the scaled position `u < scaled_total()`.
    pub fn sample(&self, u: u64) -> Vertex {
        self.tree.find(u) as Vertex
    }

    fn record(&mut self, parents: &[Vertex], child_degree: u64) {
        for &p in parents {
            self.tree.add(p as usize, self.denom);
        }
        let w = child_degree
            .checked_mul(self.denom)
            .and_then(|w| w.checked_add(self.numer))
            .expect("scaled weight overflow");
        assert!(
            self.tree.total().checked_add(w).is_some(),
            "scaled total weight overflows u64"
        );
        self.tree.push(w);
    }
}

/// Builds the weight table of `g` for offset `delta`.
pub fn attachment_weights(g: &ArrivalGraph, delta: Ratio<u64>) -> WeightTable {
    let (p, q) = (*delta.numer(), *delta.denom());
    WeightTable {
        numer: p,
        denom: q,
        tree: Fenwick::from_weights(g.degrees().iter().map(|&d| d * q + p)),
    }
}

/// `G_1` for the given parameters.
pub fn new_initial(params: &ModelParams) -> ArrivalGraph {
    ArrivalGraph::initial(params.m()).expect("ModelParams guarantees m >= 2")
}

/// A single-owner generator that grows one graph from one seed.
#[derive(Clone, Debug)]
pub struct PaStream {
    params: ModelParams,
    graph: ArrivalGraph,
    weights: WeightTable,
    rng: ChaCha8Rng,
    parents: Vec<Vertex>,
}

impl PaStream {
    pub fn new(params: ModelParams) -> Self {
        let graph = new_initial(&params);
        Self::resume_unchecked(params, graph)
    }

    /// Continues growing an existing graph, typically one produced earlier
    /// by a stream with the same parameters.
    pub fn resume(params: ModelParams, graph: ArrivalGraph) -> Result<Self> {
        if graph.m() != params.m() {
            return Err(Error::InvalidParams(format!(
                "graph has m={} but params have m={}",
                graph.m(),
                params.m()
            )));
        }
        Ok(Self::resume_unchecked(params, graph))
    }

    fn resume_unchecked(params: ModelParams, graph: ArrivalGraph) -> Self {
        let weights = attachment_weights(&graph, params.delta());
        Self {
            params,
            graph,
            weights,
            rng: ChaCha8Rng::seed_from_u64(params.seed()),
            parents: Vec::with_capacity(params.m()),
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn graph(&self) -> &ArrivalGraph {
        &self.graph
    }

    pub fn weights(&self) -> &WeightTable {
        &self.weights
    }

    pub fn into_graph(self) -> ArrivalGraph {
        self.graph
    }

    /// Adds one vertex.
    pub fn step(&mut self) {
        let child = self.graph.last_index() + 1;
        self.rng.set_stream(u64::from(child));
        self.rng.set_word_pos(0);
        let total = self.weights.scaled_total();
        self.parents.clear();
        for _ in 0..self.params.m() {
            let u = self.rng.random_range(0..total);
            self.parents.push(self.weights.sample(u));
        }
        self.graph
            .push_vertex(&self.parents)
            .expect("sampled parents are in range");
        self.weights.record(&self.parents, self.params.m() as u64);
    }

    pub fn grow(&mut self, steps: usize) {
        for _ in 0..steps {
            self.step();
        }
    }

    /// Grows until `last_index == n`; no-op if already there or beyond.
    pub fn grow_to(&mut self, n: Vertex) {
        while self.graph.last_index() < n {
            self.step();
        }
    }
}

/// Grows `g` by `steps` vertices using the stream of `params`.
pub fn grow(g: &ArrivalGraph, params: &ModelParams, steps: usize) -> Result<ArrivalGraph> {
    let mut stream = PaStream::resume(*params, g.clone())?;
    stream.grow(steps);
    Ok(stream.into_graph())
}

/// Snapshots `G_n` for every `n` in `schedule`, all cut from one history.
pub fn snapshots(params: &ModelParams, schedule: &[Vertex]) -> Result<Vec<ArrivalGraph>> {
    validate_schedule(schedule)?;
    let mut stream = PaStream::new(*params);
    Ok(schedule
        .iter()
        .map(|&n| {
            stream.grow_to(n);
            stream.graph().clone()
        })
        .collect())
}

pub(crate) fn validate_schedule(schedule: &[Vertex]) -> Result<()> {
    match schedule.first() {
        None => return Err(Error::InvalidSchedule("empty schedule".into())),
        Some(0) => {
            return Err(Error::InvalidSchedule(
                "schedule must start at n >= 1".into(),
            ))
        }
        Some(_) => {}
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSchedule(
            "schedule must be strictly increasing".into(),
        ));
    }
    Ok(())
}
