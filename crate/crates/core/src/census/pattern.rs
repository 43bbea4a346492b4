use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Upper bound on pattern size.
pub const MAX_PATTERN_VERTICES: usize = 12;

/// A small simple graph whose labels `1..=k` double as the ordering `pi`:
/// label `i` is older than label `j` iff `i < j`.
///
/// Labels are 1-based in the public API and in files; internally 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedPattern {
    k: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl OrderedPattern {
    /// Builds a pattern from 1-based label pairs, in either orientation.
    pub fn new(k: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if k == 0 || k > MAX_PATTERN_VERTICES {
            return Err(Error::InvalidPattern(format!(
                "k must be in 1..={MAX_PATTERN_VERTICES}, got {k}"
            )));
        }
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == 0 || j == 0 || i > k || j > k {
                return Err(Error::InvalidPattern(format!(
                    "edge ({i}, {j}) outside 1..={k}"
                )));
            }
            if i == j {
                return Err(Error::InvalidPattern(format!("self-loop at {i}")));
            }
            let e = (i.min(j) - 1, i.max(j) - 1);
            if !set.insert(e) {
                return Err(Error::InvalidPattern(format!("repeated edge ({i}, {j})")));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { k, edges, adj })
    }

    /// The cycle `1 - 2 - ... - b - 1`.
    pub fn cycle(b: usize) -> Result<Self> {
        if b < 3 {
            return Err(Error::InvalidPattern(format!(
                "cycle needs at least 3 vertices, got {b}"
            )));
        }
        Self::new(b, (1..=b).map(|i| (i, i % b + 1)))
    }

    pub fn complete(k: usize) -> Result<Self> {
        Self::new(k, (1..=k).flat_map(|i| (i + 1..=k).map(move |j| (i, j))))
    }

    /// The path `1 - 2 - ... - k`.
    pub fn path(k: usize) -> Result<Self> {
        Self::new(k, (1..k).map(|i| (i, i + 1)))
    }

    /// Resolves built-in names: `C<b>` (cycle), `K<k>` (complete), `P<k>` (path).
    pub fn from_name(name: &str) -> Result<Self> {
        let bad = || Error::InvalidPattern(format!("unknown pattern name `{name}`"));
        let (kind, size) = name.trim().split_at_checked(1).ok_or_else(bad)?;
        let size: usize = size.parse().map_err(|_| bad())?;
        match kind {
            "C" | "c" => Self::cycle(size),
            "K" | "k" => Self::complete(size),
            "P" | "p" => Self::path(size),
            _ => Err(bad()),
        }
    }

    /// Relabels so that old label `i` becomes `perm[i - 1]` (1-based values).
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.k];
        if perm.len() != self.k
            || perm
                .iter()
                .any(|&p| p == 0 || p > self.k || std::mem::replace(&mut seen[p - 1], true))
        {
            return Err(Error::InvalidPattern(
                "relabeling is not a permutation".into(),
            ));
        }
        Self::new(self.k, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 1-based `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (a + 1, b + 1))
    }

    pub(crate) fn neighbors0(&self, label0: usize) -> &[usize] {
        &self.adj[label0]
    }

    pub fn degree(&self, label: usize) -> usize {
        self.adj[label - 1].len()
    }

    /// Number of neighbors younger than `label` (larger label).
    pub fn in_degree(&self, label: usize) -> usize {
        self.adj[label - 1]
            .iter()
            .filter(|&&u| u > label - 1)
            .count()
    }

    /// Number of neighbors older than `label` (smaller label).
    pub fn out_degree(&self, label: usize) -> usize {
        self.adj[label - 1]
            .iter()
            .filter(|&&u| u < label - 1)
            .count()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Display for OrderedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} [", self.k)?;
        for (n, (i, j)) in self.edges().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{i}-{j}")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternClass {
    /// Connected, minimum degree at least 2, at least `k + 1` edges.
    Rare,
    /// A single cycle through all `k` vertices.
    Cycle,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: PatternClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn classify_pattern(pattern: &OrderedPattern) -> Classification {
    let other = |note: &str| Classification {
        class: PatternClass::Other,
        note: Some(note.to_string()),
    };
    if !pattern.is_connected() {
        return other("disconnected pattern");
    }
    let k = pattern.k();
    let e = pattern.edge_count();
    if k >= 3 && e == k && pattern.adj.iter().all(|l| l.len() == 2) {
        return Classification {
            class: PatternClass::Cycle,
            note: None,
        };
    }
    if pattern.min_degree() >= 2 && e > k {
        return Classification {
            class: PatternClass::Rare,
            note: None,
        };
    }
    if pattern.min_degree() < 2 {
        other("minimum degree below 2")
    } else {
        other("too few edges")
    }
}
