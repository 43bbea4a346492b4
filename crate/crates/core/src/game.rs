//! Exact solver for the `gamma`-pebble Ehrenfeucht–Fraïssé game.
//!
//! Each round Spoiler picks a pebble (a free one, or one already on the
//! board, which is lifted), a side and a vertex on that side; Duplicator
//! answers with a vertex on the other side for the same pebble. Duplicator
//! survives a round if the placed pairs still form a partial isomorphism of
//! the two simple graphs. Pebbles are interchangeable, so a position is the
//! set of placed pairs; the number of free pebbles is `gamma` minus its size.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimpleView, Vertex};

pub const DEFAULT_MEMO_CAP: usize = 10_000_000;

/// A pebble pair: `(vertex of G, vertex of H)`.
pub type Pair = (Vertex, Vertex);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// The first graph, `G`.
    Left,
    /// The second graph, `H`.
    Right,
}

impl Side {
    fn pair(self, spoiler: Vertex, duplicator: Vertex) -> Pair {
        match self {
            Side::Left => (spoiler, duplicator),
            Side::Right => (duplicator, spoiler),
        }
    }
}

/// Pebble slots plus remaining rounds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameConfig {
    pub slots: Vec<Option<Pair>>,
    pub rounds_left: usize,
}

impl GameConfig {
    pub fn empty(gamma: usize, rounds: usize) -> Self {
        Self {
            slots: vec![None; gamma],
            rounds_left: rounds,
        }
    }

    pub fn placed(&self) -> impl Iterator<Item = Pair> + '_ {
        self.slots.iter().flatten().copied()
    }

    pub fn is_partial_iso(&self, g: &SimpleView, h: &SimpleView) -> bool {
        is_partial_iso(&self.placed().collect::<Vec<_>>(), g, h)
    }

    /// The position up to pebble renaming: sorted, deduplicated pairs.
    pub fn canonical(&self) -> Vec<Pair> {
        let mut pairs: Vec<Pair> = self.placed().collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}

/// Equality and adjacency agree between the two coordinates of every two
/// pairs.
pub fn is_partial_iso(pairs: &[Pair], g: &SimpleView, h: &SimpleView) -> bool {
    pairs
        .iter()
        .enumerate()
        .all(|(i, &p)| compatible(p, &pairs[i + 1..], g, h))
}

fn compatible((x, y): Pair, others: &[Pair], g: &SimpleView, h: &SimpleView) -> bool {
    others
        .iter()
        .all(|&(u, v)| (x == u) == (y == v) && g.adjacent(x, u) == h.adjacent(y, v))
}

/// One Spoiler move and the refutation of every Duplicator answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpoilerStrategy {
    /// The pair whose pebble is moved; `None` takes a free pebble.
    pub lift: Option<Pair>,
    pub side: Side,
    pub vertex: Vertex,
    pub replies: Vec<Reply>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reply {
    pub answer: Vertex,
    /// `None`: the answer breaks the partial isomorphism immediately.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub next: Option<Box<SpoilerStrategy>>,
}

impl SpoilerStrategy {
    /// Replays the strategy from `position` and checks that every line of
    /// play ends in a violated position within `rounds` rounds.
    pub fn validate(
        &self,
        g: &SimpleView,
        h: &SimpleView,
        gamma: usize,
        rounds: usize,
        position: &[Pair],
    ) -> bool {
        if rounds == 0 {
            return false;
        }
        let base: Vec<Pair> = match self.lift {
            None if position.len() < gamma => position.to_vec(),
            Some(p) if position.contains(&p) => {
                position.iter().copied().filter(|&q| q != p).collect()
            }
            _ => return false,
        };
        let (own, other) = match self.side {
            Side::Left => (g, h),
            Side::Right => (h, g),
        };
        if self.vertex as usize >= own.vertex_count() {
            return false;
        }
        let mut answers: Vec<Vertex> = self.replies.iter().map(|r| r.answer).collect();
        answers.sort_unstable();
        if answers != (0..other.vertex_count() as Vertex).collect::<Vec<_>>() {
            return false;
        }
        self.replies.iter().all(|reply| {
            let pair = self.side.pair(self.vertex, reply.answer);
            let next_pos = insert_pair(&base, pair);
            match &reply.next {
                None => !is_partial_iso(&next_pos, g, h),
                Some(s) => {
                    is_partial_iso(&next_pos, g, h)
                        && s.validate(g, h, gamma, rounds - 1, &next_pos)
                }
            }
        })
    }
}

fn insert_pair(base: &[Pair], pair: Pair) -> Vec<Pair> {
    let mut next = base.to_vec();
    if let Err(i) = next.binary_search(&pair) {
        next.insert(i, pair);
    }
    next
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameVerdict {
    pub duplicator_wins: bool,
    pub gamma: usize,
    pub rounds: usize,
    pub memo_entries: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SpoilerStrategy>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    pub memo_cap: usize,
    /// Build a Spoiler strategy tree when Spoiler wins.
    pub witness: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            memo_cap: DEFAULT_MEMO_CAP,
            witness: true,
        }
    }
}

/// Decides the game from the empty position with default options.
pub fn duplicator_wins(
    g: &SimpleView,
    h: &SimpleView,
    gamma: usize,
    rounds: usize,
) -> Result<GameVerdict> {
    duplicator_wins_with(g, h, gamma, rounds, SolverOptions::default())
}

pub fn duplicator_wins_with(
    g: &SimpleView,
    h: &SimpleView,
    gamma: usize,
    rounds: usize,
    options: SolverOptions,
) -> Result<GameVerdict> {
    if gamma == 0 {
        return Err(Error::InvalidConfig("gamma must be at least 1".into()));
    }
    if g.vertex_count() == 0 || h.vertex_count() == 0 {
        return Err(Error::InvalidConfig("both graphs must be nonempty".into()));
    }
    let mut solver = Solver {
        g,
        h,
        gamma,
        cap: options.memo_cap,
        memo: HashMap::new(),
    };
    let wins = solver.wins(&[], rounds)?;
    let witness = if !wins && options.witness {
        Some(solver.strategy(&[], rounds)?)
    } else {
        None
    };
    Ok(GameVerdict {
        duplicator_wins: wins,
        gamma,
        rounds,
        memo_entries: solver.memo.len(),
        witness,
    })
}

struct Solver<'a> {
    g: &'a SimpleView,
    h: &'a SimpleView,
    gamma: usize,
    cap: usize,
    memo: HashMap<(Vec<Pair>, usize), bool>,
}

/// A Spoiler choice of pebble, side and vertex from some position.
struct Move {
    lift: Option<Pair>,
    side: Side,
    vertex: Vertex,
}

impl Solver<'_> {
    fn moves(&self, position: &[Pair]) -> Vec<Move> {
        let mut lifts: Vec<Option<Pair>> = position.iter().copied().map(Some).collect();
        if position.len() < self.gamma {
            lifts.insert(0, None);
        }
        let mut moves = Vec::new();
        for lift in lifts {
            for side in [Side::Left, Side::Right] {
                let own = match side {
                    Side::Left => self.g,
                    Side::Right => self.h,
                };
                moves.extend(own.vertices().map(|vertex| Move { lift, side, vertex }));
            }
        }
        moves
    }

    fn base(position: &[Pair], lift: Option<Pair>) -> Vec<Pair> {
        match lift {
            None => position.to_vec(),
            Some(p) => position.iter().copied().filter(|&q| q != p).collect(),
        }
    }

    fn answers(&self, side: Side) -> std::ops::Range<Vertex> {
        let other = match side {
            Side::Left => self.h,
            Side::Right => self.g,
        };
        0..other.vertex_count() as Vertex
    }

    /// Whether Duplicator survives `rounds` more rounds from a position that
    /// is already a partial isomorphism.
    fn wins(&mut self, position: &[Pair], rounds: usize) -> Result<bool> {
        if rounds == 0 {
            return Ok(true);
        }
        let key = (position.to_vec(), rounds);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let mut result = true;
        'spoiler: for mv in self.moves(position) {
            let base = Self::base(position, mv.lift);
            for answer in self.answers(mv.side) {
                let pair = mv.side.pair(mv.vertex, answer);
                if !compatible(pair, &base, self.g, self.h) {
                    continue;
                }
                if self.wins(&insert_pair(&base, pair), rounds - 1)? {
                    continue 'spoiler;
                }
            }
            result = false;
            break;
        }
        if self.memo.len() >= self.cap {
            return Err(Error::ResourceLimit {
                what: "pebble game memo entries",
                limit: self.cap,
            });
        }
        self.memo.insert(key, result);
        Ok(result)
    }

    /// A winning Spoiler strategy from a position Duplicator loses.
    fn strategy(&mut self, position: &[Pair], rounds: usize) -> Result<SpoilerStrategy> {
        for mv in self.moves(position) {
            let base = Self::base(position, mv.lift);
            let mut replies = Vec::new();
            let mut refuted = true;
            for answer in self.answers(mv.side) {
                let pair = mv.side.pair(mv.vertex, answer);
                if !compatible(pair, &base, self.g, self.h) {
                    replies.push(Reply { answer, next: None });
                    continue;
                }
                let next = insert_pair(&base, pair);
                if self.wins(&next, rounds - 1)? {
                    refuted = false;
                    break;
                }
                let sub = self.strategy(&next, rounds - 1)?;
                replies.push(Reply {
                    answer,
                    next: Some(Box::new(sub)),
                });
            }
            if refuted {
                return Ok(SpoilerStrategy {
                    lift: mv.lift,
                    side: mv.side,
                    vertex: mv.vertex,
                    replies,
                });
            }
        }
        unreachable!("strategy requested for a position Duplicator wins")
    }
}
