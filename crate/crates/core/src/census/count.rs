use rayon::prelude::*;

use super::OrderedPattern;
use crate::graph::{SimpleView, Vertex};

// Below this many candidates for the first pattern vertex the census stays on
// the calling thread.
const PARALLEL_THRESHOLD: usize = 4096;

/// Number of vertex sets `S` of `sv` such that mapping the pattern labels onto
/// `S` in arrival order sends every pattern edge onto an edge of `sv`.
/// Extra edges inside `S` are allowed.
pub fn count_ordered_copies(sv: &SimpleView, pattern: &OrderedPattern) -> u64 {
    let k = pattern.k();
    let n = sv.vertex_count();
    if k > n {
        return 0;
    }
    let plan = Plan::new(pattern);
    let first = plan.order[0];
    // Label l needs l older and k - 1 - l younger vertices around it.
    let lo = first as Vertex;
    let hi = (n - (k - 1 - first)) as Vertex;
    let need = pattern.neighbors0(first).len();
    let roots: Vec<Vertex> = (lo..hi).filter(|&v| sv.degree(v) >= need).collect();

    let count_from = |v: Vertex| {
        let mut map = vec![0 as Vertex; k];
        map[first] = v;
        plan.extend(sv, 1, &mut map)
    };
    if roots.len() >= PARALLEL_THRESHOLD {
        roots.par_iter().map(|&v| count_from(v)).sum()
    } else {
        roots.iter().map(|&v| count_from(v)).sum()
    }
}

struct Step {
    label: usize,
    degree: usize,
    // Already-mapped neighbors of `label`.
    anchors: Vec<usize>,
    // Already-mapped labels just below and just above `label`.
    below: Option<usize>,
    above: Option<usize>,
}

struct Plan {
    order: Vec<usize>,
    steps: Vec<Step>,
}

impl Plan {
    fn new(pattern: &OrderedPattern) -> Self {
        let k = pattern.k();
        let first = (0..k)
            .max_by_key(|&l| (pattern.neighbors0(l).len(), std::cmp::Reverse(l)))
            .unwrap_or(0);
        let mut order = vec![first];
        let mut placed = vec![false; k];
        placed[first] = true;
        while order.len() < k {
            let next = (0..k)
                .filter(|&l| !placed[l])
                .max_by_key(|&l| {
                    let mapped = pattern.neighbors0(l).iter().filter(|&&u| placed[u]).count();
                    (mapped, pattern.neighbors0(l).len(), std::cmp::Reverse(l))
                })
                .expect("an unplaced label remains");
            placed[next] = true;
            order.push(next);
        }

        let steps = (0..k)
            .map(|t| {
                let label = order[t];
                let done = &order[..t];
                Step {
                    label,
                    degree: pattern.neighbors0(label).len(),
                    anchors: pattern
                        .neighbors0(label)
                        .iter()
                        .copied()
                        .filter(|u| done.contains(u))
                        .collect(),
                    below: done.iter().copied().filter(|&u| u < label).max(),
                    above: done.iter().copied().filter(|&u| u > label).min(),
                }
            })
            .collect();
        Self { order, steps }
    }

    fn extend(&self, sv: &SimpleView, t: usize, map: &mut [Vertex]) -> u64 {
        if t == self.steps.len() {
            return 1;
        }
        let step = &self.steps[t];
        // Open interval of admissible images.
        let lo = step.below.map(|l| map[l] as u64 + 1).unwrap_or(0);
        let hi = step
            .above
            .map(|l| map[l] as u64)
            .unwrap_or(sv.vertex_count() as u64);
        if lo >= hi {
            return 0;
        }
        let (lo, hi) = (lo as Vertex, hi as Vertex);

        let mut total = 0;
        let mut visit = |v: Vertex, map: &mut [Vertex]| {
            if sv.degree(v) < step.degree {
                return;
            }
            map[step.label] = v;
            total += self.extend(sv, t + 1, map);
        };

        if let Some(&pivot) = step.anchors.iter().min_by_key(|&&a| sv.degree(map[a])) {
            let list = sv.neighbors(map[pivot]);
            let start = list.partition_point(|&w| w < lo);
            let end = list.partition_point(|&w| w < hi);
            for &v in &list[start..end] {
                if step
                    .anchors
                    .iter()
                    .all(|&a| a == pivot || sv.adjacent(map[a], v))
                {
                    visit(v, map);
                }
            }
        } else {
            for v in lo..hi {
                visit(v, map);
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(n: usize, edges: &[(Vertex, Vertex)]) -> SimpleView {
        SimpleView::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn spec_examples() {
        let c3 = OrderedPattern::cycle(3).unwrap();
        let tri = sv(4, &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(count_ordered_copies(&tri, &c3), 1);
        let path = sv(4, &[(1, 2), (2, 3)]);
        assert_eq!(count_ordered_copies(&path, &c3), 0);
        let k4 = sv(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(count_ordered_copies(&k4, &c3), 4);
        assert_eq!(
            count_ordered_copies(&k4, &OrderedPattern::complete(4).unwrap()),
            1
        );
    }

    #[test]
    fn ordering_matters() {
        // Path 0 - 2 - 1: middle vertex is the youngest.
        let g = sv(3, &[(0, 2), (1, 2)]);
        let p = OrderedPattern::path(3).unwrap();
        assert_eq!(count_ordered_copies(&g, &p), 0);
        let youngest_middle = p.relabeled(&[1, 3, 2]).unwrap();
        assert_eq!(count_ordered_copies(&g, &youngest_middle), 1);
    }

    #[test]
    fn disconnected_pattern_counts_pairs() {
        let empty2 = OrderedPattern::new(2, []).unwrap();
        let g = sv(5, &[]);
        assert_eq!(count_ordered_copies(&g, &empty2), 10);
        let big = OrderedPattern::new(6, []).unwrap();
        assert_eq!(count_ordered_copies(&g, &big), 0);
    }
}
