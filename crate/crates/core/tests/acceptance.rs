//! Acceptance suite. Each test prints one `criterion N [PASS|FAIL]` line and
//! then asserts the same condition. Monte Carlo criteria 4, 5 and 8 share a
//! single census run.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use pafo_core::experiments::lemma2::check_pair;
use pafo_core::experiments::{
    divergence_from_census, estimate_maxdeg_exponent, estimate_tail_from_graphs, fit_census_growth,
    lemma2_harness, output, qcheck_frequency, run_census_experiment, summarize_census, CensusRow,
    ExperimentConfig, Lemma2Outcome,
};
use pafo_core::game::SolverOptions;
use pafo_core::{
    count_ordered_copies, duplicator_wins, exponent_b, ModelParams, OrderedPattern, SimpleView,
    StructureParams, Vertex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, pass: bool, detail: impl AsRef<str>) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} [{tag}] {name}: {}", detail.as_ref());
}

/// `(m, delta)` pairs realizing tau = 7/2, 4, 5 with m = 2.
fn tau_grid() -> Vec<(&'static str, ModelParams)> {
    [("7/2", 1), ("4", 2), ("5", 4)]
        .into_iter()
        .map(|(t, d)| (t, ModelParams::new(2, Ratio::from_integer(d), 0).unwrap()))
        .collect()
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

#[test]
fn criterion_01_cycle_exponents() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for b in 3..=8usize {
        // One labeling per distinct labeled cycle: position 0 carries label 1
        // and the two cycle directions are identified.
        for perm in permutations(b) {
            if perm[0] != 1 || perm[1] > perm[b - 1] {
                continue;
            }
            let edges = (0..b).map(|i| (perm[i], perm[(i + 1) % b]));
            let pattern = OrderedPattern::new(b, edges).unwrap();
            for (tau, params) in tau_grid() {
                let rep = exponent_b(&pattern, &params);
                checked += 1;
                if rep.b != int(-(b as i64)) || rep.r != 2 || rep.argmax != vec![0, b] {
                    bad.push(format!("b={b} tau={tau} perm={perm:?}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(1);
    report(
        1,
        "cycle exponents B=-b, r=2, argmax {0,b}",
        pass,
        format!(
            "{checked} labeled cycles x tau checked, {} mismatches, {elapsed:.2?}",
            bad.len()
        ),
    );
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
    assert!(elapsed < Duration::from_secs(1));
}

/// All labeled simple graphs on `{1..k}` as 1-based edge lists.
fn labeled_graphs(k: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let slots: Vec<(usize, usize)> = (1..=k)
        .flat_map(|i| ((i + 1)..=k).map(move |j| (i, j)))
        .collect();
    (0u32..1 << slots.len()).map(move |mask| {
        slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    })
}

fn rare_by_hand(k: usize, edges: &[(usize, usize)]) -> bool {
    let mut deg = vec![0usize; k + 1];
    let mut parent: Vec<usize> = (0..=k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let root = find(&mut parent, 1);
    let connected = (1..=k).all(|v| find(&mut parent, v) == root);
    connected && deg[1..].iter().all(|&d| d >= 2) && edges.len() > k
}

#[test]
fn criterion_02_rare_exponents() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for k in 1..=6usize {
        for edges in labeled_graphs(k) {
            if !rare_by_hand(k, &edges) {
                continue;
            }
            let pattern = OrderedPattern::new(k, edges.iter().copied()).unwrap();
            for (tau, params) in tau_grid() {
                let rep = exponent_b(&pattern, &params);
                checked += 1;
                if rep.b != int(-(k as i64)) || rep.r != 1 {
                    bad.push(format!("k={k} tau={tau} edges={edges:?}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && checked > 0 && elapsed < Duration::from_secs(60);
    report(
        2,
        "rare exponents B=-k, r=1",
        pass,
        format!(
            "{checked} labeled rare patterns x tau checked, {} mismatches, {elapsed:.2?}",
            bad.len()
        ),
    );
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
    assert!(checked > 0);
    assert!(elapsed < Duration::from_secs(60));
}

fn random_view(rng: &mut ChaCha8Rng, max_n: usize) -> SimpleView {
    let n = rng.random_range(1..=max_n);
    let p: f64 = rng.random_range(0.2..0.9);
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in (u + 1)..n as Vertex {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimpleView::from_edges(n, edges).unwrap()
}

/// Enumerates every `k`-subset in increasing order and maps label `i` to
/// the `i`-th smallest element.
fn brute_force_census(sv: &SimpleView, k: usize, edges: &[(usize, usize)]) -> u64 {
    let n = sv.vertex_count();
    if k > n {
        return 0;
    }
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .filter(|&mask| {
            let subset: Vec<Vertex> = (0..n as Vertex).filter(|v| mask >> v & 1 == 1).collect();
            edges
                .iter()
                .all(|&(i, j)| sv.adjacent(subset[i - 1], subset[j - 1]))
        })
        .count() as u64
}

#[test]
fn criterion_03_census_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let patterns = ["C3", "C4", "K4", "K2"].map(|n| (n, OrderedPattern::from_name(n).unwrap()));
    let mut mismatches = 0usize;
    for _ in 0..200 {
        let sv = random_view(&mut rng, 9);
        for (name, p) in &patterns {
            let edges: Vec<_> = p.edges().collect();
            let want = brute_force_census(&sv, p.k(), &edges);
            let got = count_ordered_copies(&sv, p);
            if want != got {
                mismatches += 1;
                eprintln!("{name}: brute force {want}, census {got}");
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches == 0 && elapsed < Duration::from_secs(60);
    report(
        3,
        "census equals subset enumeration",
        pass,
        format!("200 graphs x 4 patterns, {mismatches} mismatches, {elapsed:.2?}"),
    );
    assert_eq!(mismatches, 0);
    assert!(elapsed < Duration::from_secs(60));
}

struct SharedCensus {
    rows: Vec<CensusRow>,
    elapsed: Duration,
}

const CENSUS_SEEDS: usize = 100;

fn shared_census() -> &'static SharedCensus {
    static RUN: OnceLock<SharedCensus> = OnceLock::new();
    RUN.get_or_init(|| {
        let cfg = ExperimentConfig {
            m: 2,
            delta: Ratio::from_integer(1),
            base_seed: 1000,
            seeds: CENSUS_SEEDS,
            schedule: (10..=16).map(|e| 1 << e).collect(),
            patterns: vec!["C3".into(), "K4".into()],
            ..Default::default()
        };
        let start = Instant::now();
        let rows = run_census_experiment(&cfg).unwrap();
        SharedCensus {
            rows,
            elapsed: start.elapsed(),
        }
    })
}

#[test]
fn criterion_04_cycle_count_growth() {
    let run = shared_census();
    let summary = summarize_census(&run.rows);
    let fit = fit_census_growth(&summary, "C3").unwrap();
    let means: Vec<String> = summary
        .iter()
        .filter(|s| s.pattern == "C3")
        .map(|s| format!("{:.2}", s.mean))
        .collect();
    let pass = fit.slope > 0.0 && fit.r_squared >= 0.9 && run.elapsed <= Duration::from_secs(900);
    report(
        4,
        "C3 mean grows like ln n",
        pass,
        format!(
            "beta={:.4} R^2={:.4} means=[{}] census run {:.1?}",
            fit.slope,
            fit.r_squared,
            means.join(", "),
            run.elapsed
        ),
    );
    assert!(fit.slope > 0.0);
    assert!(fit.r_squared >= 0.9);
    assert!(run.elapsed <= Duration::from_secs(900));
}

#[test]
fn criterion_05_rare_count_bounded() {
    let run = shared_census();
    let summary = summarize_census(&run.rows);
    let at = |n: Vertex| {
        summary
            .iter()
            .find(|s| s.pattern == "K4" && s.n == n)
            .expect("K4 summary row")
    };
    let (lo, hi) = (at(1 << 15), at(1 << 16));
    let pooled_se = ((lo.sd.powi(2) + hi.sd.powi(2)) / CENSUS_SEEDS as f64).sqrt();
    let diff = (hi.mean - lo.mean).abs();
    let pass = diff <= 2.0 * pooled_se;
    report(
        5,
        "K4 mean flat across the top octave",
        pass,
        format!(
            "mean(2^15)={:.3} mean(2^16)={:.3} |diff|={diff:.3} 2*pooled SE={:.3}",
            lo.mean,
            hi.mean,
            2.0 * pooled_se
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_06_max_degree_exponent() {
    let cfg = ExperimentConfig {
        m: 2,
        delta: Ratio::from_integer(1),
        base_seed: 2000,
        seeds: 20,
        schedule: (10..=20).map(|e| 1 << e).collect(),
        ..Default::default()
    };
    let start = Instant::now();
    let rep = estimate_maxdeg_exponent(&cfg).unwrap();
    let elapsed = start.elapsed();
    let pass = (rep.fit.slope - 0.4).abs() <= 0.1 && elapsed <= Duration::from_secs(600);
    report(
        6,
        "max degree slope 0.4 +- 0.1",
        pass,
        format!(
            "slope={:.4} target={:.4} R^2={:.4} {elapsed:.1?}",
            rep.fit.slope, rep.target, rep.fit.r_squared
        ),
    );
    assert!((rep.fit.slope - 0.4).abs() <= 0.1);
    assert!(elapsed <= Duration::from_secs(600));
}

#[test]
fn criterion_07_tail_exponent() {
    let cfg = ExperimentConfig {
        m: 2,
        delta: Ratio::from_integer(1),
        base_seed: 3000,
        seeds: 10,
        schedule: vec![1 << 18],
        ..Default::default()
    };
    let start = Instant::now();
    let rep = estimate_tail_from_graphs(&cfg).unwrap();
    let elapsed = start.elapsed();
    let tau = rep.estimate.tau;
    let pass = (tau - 3.5).abs() <= 0.5 && elapsed <= Duration::from_secs(300);
    report(
        7,
        "Hill tail exponent 3.5 +- 0.5",
        pass,
        format!(
            "tau_hat={tau:.4} k={} N={} {elapsed:.1?}",
            rep.estimate.k, rep.estimate.sample_size
        ),
    );
    assert!((tau - 3.5).abs() <= 0.5);
    assert!(elapsed <= Duration::from_secs(300));
}

#[test]
fn criterion_08_cycle_divergence() {
    let run = shared_census();
    let rows = divergence_from_census(&run.rows, "C3", 10);
    let first = rows.first().expect("divergence rows");
    let last = rows.last().expect("divergence rows");
    let trend = last.frequency >= first.frequency - 2.0 * first.se.max(last.se);
    let high = last.frequency >= 0.9;
    let freqs: Vec<String> = rows.iter().map(|r| format!("{:.2}", r.frequency)).collect();
    report(
        8,
        "Pr[N(C3) > 10] grows and reaches 0.9 at 2^16",
        trend && high,
        format!(
            "freq(2^10)={:.3} se={:.3} freq(2^16)={:.3} se={:.3} by n=[{}]",
            first.frequency,
            first.se,
            last.frequency,
            last.se,
            freqs.join(", ")
        ),
    );
    assert_eq!(first.n, 1 << 10);
    assert_eq!(last.n, 1 << 16);
    assert!(trend);
    assert!(high);
}

/// Bitmask adjacency for graphs with at most 8 vertices.
#[derive(Clone)]
struct Small {
    n: usize,
    adj: Vec<u8>,
}

impl Small {
    fn from_view(sv: &SimpleView) -> Self {
        let adj = sv
            .vertices()
            .map(|v| sv.neighbors(v).iter().fold(0u8, |acc, &w| acc | 1 << w))
            .collect();
        Self {
            n: sv.vertex_count(),
            adj,
        }
    }

    fn adjacent(&self, u: u8, v: u8) -> bool {
        self.adj[u as usize] >> v & 1 == 1
    }
}

/// Plain minimax over pebble slots, no memo table.
fn naive_wins(g: &Small, h: &Small, slots: &mut Vec<Option<(u8, u8)>>, rounds: usize) -> bool {
    if rounds == 0 {
        return true;
    }
    let mut tried_free = false;
    for i in 0..slots.len() {
        if slots[i].is_none() {
            if tried_free {
                continue;
            }
            tried_free = true;
        }
        let saved = slots[i];
        for left in [true, false] {
            let (spoiler_n, dup_n) = if left { (g.n, h.n) } else { (h.n, g.n) };
            for x in 0..spoiler_n as u8 {
                let answered = (0..dup_n as u8).any(|y| {
                    let pair = if left { (x, y) } else { (y, x) };
                    let ok = slots.iter().enumerate().all(|(j, other)| {
                        j == i
                            || match *other {
                                None => true,
                                Some((a, b)) => {
                                    (a == pair.0) == (b == pair.1)
                                        && g.adjacent(a, pair.0) == h.adjacent(b, pair.1)
                                }
                            }
                    });
                    if !ok {
                        return false;
                    }
                    slots[i] = Some(pair);
                    let won = naive_wins(g, h, slots, rounds - 1);
                    slots[i] = saved;
                    won
                });
                if !answered {
                    return false;
                }
            }
        }
    }
    true
}

fn game_pool() -> Vec<SimpleView> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pool: Vec<SimpleView> = (0..38).map(|_| random_view(&mut rng, 6)).collect();
    // Relabeled copies give isomorphic but unequal pairs.
    for i in 0..12 {
        let base = pool[i * 3].clone();
        let n = base.vertex_count();
        let mut perm: Vec<Vertex> = (0..n as Vertex).collect();
        for j in (1..n).rev() {
            perm.swap(j, rng.random_range(0..=j));
        }
        let edges: Vec<_> = base
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        pool.push(SimpleView::from_edges(n, edges).unwrap());
    }
    pool
}

/// `verdicts[i][j][gamma - 1][rounds]` from the memoized solver.
fn pool_verdicts() -> &'static (Vec<SimpleView>, Vec<Vec<[[bool; 4]; 3]>>, Duration) {
    static POOL: OnceLock<(Vec<SimpleView>, Vec<Vec<[[bool; 4]; 3]>>, Duration)> = OnceLock::new();
    POOL.get_or_init(|| {
        let start = Instant::now();
        let pool = game_pool();
        let verdicts = pool
            .iter()
            .map(|g| {
                pool.iter()
                    .map(|h| {
                        let mut v = [[false; 4]; 3];
                        for gamma in 1..=3 {
                            for rounds in 0..=3 {
                                v[gamma - 1][rounds] = duplicator_wins(g, h, gamma, rounds)
                                    .unwrap()
                                    .duplicator_wins;
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        (pool, verdicts, start.elapsed())
    })
}

fn sv(n: usize, edges: &[(Vertex, Vertex)]) -> SimpleView {
    SimpleView::from_edges(n, edges.iter().copied()).unwrap()
}

#[test]
fn criterion_09_game_oracle() {
    let start = Instant::now();
    let (pool, verdicts, memo_time) = pool_verdicts();
    let small: Vec<Small> = pool.iter().map(Small::from_view).collect();
    let mut mismatches = 0usize;
    let mut compared = 0usize;
    for i in 0..pool.len() {
        for j in 0..pool.len() {
            for gamma in 1..=3 {
                for rounds in 0..=3 {
                    let naive = naive_wins(&small[i], &small[j], &mut vec![None; gamma], rounds);
                    compared += 1;
                    if naive != verdicts[i][j][gamma - 1][rounds] {
                        mismatches += 1;
                        eprintln!("pool pair ({i},{j}) gamma={gamma} R={rounds}: naive {naive}");
                    }
                }
            }
        }
    }

    let k3 = sv(3, &[(0, 1), (1, 2), (0, 2)]);
    let star = sv(4, &[(0, 1), (0, 2), (0, 3)]);
    let mut fixed = Vec::new();
    for (i, g) in pool.iter().enumerate().step_by(5) {
        let n = g.vertex_count() as Vertex;
        let rev: Vec<_> = g.edges().map(|(u, v)| (n - 1 - u, n - 1 - v)).collect();
        let iso = SimpleView::from_edges(g.vertex_count(), rev).unwrap();
        fixed.push((
            format!("isomorphic #{i}"),
            duplicator_wins(g, &iso, 3, 3).unwrap().duplicator_wins,
        ));
        let other = &pool[(i + 7) % pool.len()];
        fixed.push((
            format!("gamma=1 #{i}"),
            duplicator_wins(g, other, 1, 3).unwrap().duplicator_wins,
        ));
    }
    let kv = duplicator_wins(&k3, &star, 2, 2).unwrap();
    let witness_ok = kv
        .witness
        .as_ref()
        .is_some_and(|w| w.validate(&k3, &star, 2, 2, &[]));
    let fixed_ok = fixed.iter().all(|(_, v)| *v) && !kv.duplicator_wins && witness_ok;

    let elapsed = *memo_time + start.elapsed();
    let pass = mismatches == 0 && fixed_ok && elapsed < Duration::from_secs(300);
    report(
        9,
        "memoized game solver equals naive minimax",
        pass,
        format!(
            "{compared} (pair, gamma, R) cases, {mismatches} mismatches; fixed cases ok={fixed_ok}; {elapsed:.1?}"
        ),
    );
    assert_eq!(mismatches, 0);
    for (name, v) in &fixed {
        assert!(*v, "{name}");
    }
    assert!(!kv.duplicator_wins);
    assert!(witness_ok);
    assert!(elapsed < Duration::from_secs(300));
}

#[test]
fn criterion_10_game_monotonicity() {
    let (pool, verdicts, _) = pool_verdicts();
    let mut violations = Vec::new();
    for i in 0..pool.len() {
        for j in 0..pool.len() {
            let v = &verdicts[i][j];
            for g in 0..3 {
                for r in 0..4 {
                    if v[g][r] != verdicts[j][i][g][r] {
                        violations.push(format!("symmetry ({i},{j}) gamma={} R={r}", g + 1));
                    }
                    if r < 3 && v[g][r + 1] && !v[g][r] {
                        violations.push(format!("rounds ({i},{j}) gamma={} R={r}", g + 1));
                    }
                    if g < 2 && v[g + 1][r] && !v[g][r] {
                        violations.push(format!("pebbles ({i},{j}) gamma={} R={r}", g + 1));
                    }
                }
                if !v[g][0] {
                    violations.push(format!("R=0 ({i},{j}) gamma={}", g + 1));
                }
            }
        }
    }
    let spoiler_wins = verdicts
        .iter()
        .flatten()
        .flatten()
        .flatten()
        .filter(|w| !**w)
        .count();
    report(
        10,
        "game symmetry and monotonicity",
        violations.is_empty(),
        format!(
            "{} pairs, {spoiler_wins} Spoiler verdicts, {} violations",
            pool.len() * pool.len(),
            violations.len()
        ),
    );
    assert!(
        violations.is_empty(),
        "{:?}",
        &violations[..violations.len().min(5)]
    );
}

/// Builder for hand-made graphs satisfying the transfer hypotheses with
/// `m = 4`, `a = 3`.
struct Hand {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Hand {
    /// Core `[N0]` as a path `0 - 1 - ... - N0` (triangle free). Every core
    /// vertex gets `private` outside neighbors, joined completely to a
    /// private set of `private` further vertices.
    fn new(big_n0: Vertex, private: usize) -> Self {
        let mut h = Self {
            n: big_n0 as usize + 1,
            edges: Vec::new(),
        };
        for c in 0..big_n0 {
            h.edges.push((c, c + 1));
        }
        for c in 0..=big_n0 {
            let xs = h.fresh(private);
            let ys = h.fresh(private);
            for &x in &xs {
                h.edges.push((c, x));
                for &y in &ys {
                    h.edges.push((x, y));
                }
            }
        }
        h
    }

    fn fresh(&mut self, k: usize) -> Vec<Vertex> {
        let vs = (self.n..self.n + k).map(|v| v as Vertex).collect();
        self.n += k;
        vs
    }

    /// A separate component: a triangle whose vertices each attach to two
    /// private vertices of one side of a complete bipartite block.
    fn triangle(&mut self, other_side: usize) -> &mut Self {
        let t = self.fresh(3);
        let a = self.fresh(6);
        let b = self.fresh(other_side);
        self.edges
            .extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
        for i in 0..3 {
            self.edges.push((t[i], a[2 * i]));
            self.edges.push((t[i], a[2 * i + 1]));
        }
        for &x in &a {
            for &y in &b {
                self.edges.push((x, y));
            }
        }
        self
    }

    fn view(&self) -> SimpleView {
        SimpleView::from_edges(self.n, self.edges.iter().copied()).unwrap()
    }
}

fn hand_pairs() -> Vec<(&'static str, SimpleView, SimpleView, StructureParams)> {
    let base = |big_n0: Vertex, private: usize, triangles: usize, side: usize| {
        let mut h = Hand::new(big_n0, private);
        for _ in 0..triangles {
            h.triangle(side);
        }
        h.view()
    };
    let p = |n0, big_n0| StructureParams::from_rounds(n0, big_n0, 1, 4).unwrap();
    vec![
        ("identical", base(1, 4, 4, 4), base(1, 4, 4, 4), p(0, 1)),
        (
            "extra triangle",
            base(1, 4, 4, 4),
            base(1, 4, 5, 4),
            p(0, 1),
        ),
        ("wider blocks", base(1, 4, 4, 4), base(1, 4, 4, 5), p(0, 1)),
        (
            "larger private sets",
            base(2, 5, 4, 4),
            base(2, 6, 4, 4),
            p(1, 2),
        ),
        ("longer core", base(3, 6, 4, 4), base(3, 6, 6, 5), p(2, 3)),
        (
            "many triangles",
            base(2, 5, 8, 4),
            base(2, 5, 4, 6),
            p(0, 2),
        ),
    ]
}

#[test]
fn criterion_11_transfer_end_to_end() {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut hand_ok = true;
    let pairs = hand_pairs();
    for (name, h1, h2, p) in &pairs {
        let rec = check_pair(h1, h2, p, 2, 1, SolverOptions::default()).unwrap();
        let ok = rec.outcome == Lemma2Outcome::Verified && rec.duplicator_wins == Some(true);
        hand_ok &= ok;
        lines.push(format!(
            "{name}: {:?} {}",
            rec.outcome,
            rec.reason.unwrap_or_default()
        ));
    }

    let cfg = ExperimentConfig {
        m: 4,
        delta: Ratio::from_integer(1),
        base_seed: 4000,
        seeds: 100,
        schedule: vec![48, 96],
        n0_grid: vec![0, 1, 2],
        big_n0_grid: vec![1, 2, 4, 8],
        rounds: 1,
        ..Default::default()
    };
    let summary = lemma2_harness(&cfg).unwrap();
    let elapsed = start.elapsed();
    let pass = hand_ok
        && pairs.len() >= 5
        && summary.runs == 100
        && summary.counterexamples == 0
        && elapsed < Duration::from_secs(300);
    report(
        11,
        "transfer statement on hand pairs and PA snapshots",
        pass,
        format!(
            "{} hand pairs verified={hand_ok}; harness runs={} vacuous={} verified={} counterexamples={}; {elapsed:.1?}",
            pairs.len(),
            summary.runs,
            summary.vacuous,
            summary.verified,
            summary.counterexamples
        ),
    );
    assert!(hand_ok, "{lines:#?}");
    assert!(pairs.len() >= 5);
    assert_eq!(summary.runs, 100);
    assert_eq!(summary.counterexamples, 0);
    assert!(elapsed < Duration::from_secs(300));
}

fn all_outputs(cfg: &ExperimentConfig) -> Vec<(String, String)> {
    let census = run_census_experiment(cfg).unwrap();
    let summary = summarize_census(&census);
    let qcheck = qcheck_frequency(cfg).unwrap();
    let maxdeg = estimate_maxdeg_exponent(cfg).unwrap();
    let mut l2 = cfg.clone();
    l2.m = 4;
    l2.gamma = None;
    l2.schedule = vec![40, 80];
    let lemma2 = lemma2_harness(&l2).unwrap();
    vec![
        (
            "census.csv".into(),
            output::csv_string(&cfg.hash("census"), &census).unwrap(),
        ),
        (
            "summary.csv".into(),
            output::csv_string(&cfg.hash("census"), &summary).unwrap(),
        ),
        (
            "divergence.csv".into(),
            output::csv_string(
                &cfg.hash("divergence"),
                &divergence_from_census(&census, "C3", 10),
            )
            .unwrap(),
        ),
        (
            "qcheck.csv".into(),
            output::csv_string(&cfg.hash("qcheck"), &qcheck.rows).unwrap(),
        ),
        (
            "qcheck.json".into(),
            output::json_string(&cfg.hash("qcheck"), &qcheck).unwrap(),
        ),
        (
            "maxdeg.json".into(),
            output::json_string(&cfg.hash("maxdeg"), &maxdeg).unwrap(),
        ),
        (
            "lemma2.json".into(),
            output::json_string(&l2.hash("lemma2"), &lemma2).unwrap(),
        ),
    ]
}

#[test]
fn criterion_12_reproducibility() {
    let cfg = ExperimentConfig {
        seeds: 6,
        base_seed: 5000,
        schedule: vec![128, 256, 512, 1024],
        big_n0_grid: vec![1, 2, 4],
        ..Default::default()
    };
    let dir = tempfile::tempdir().unwrap();
    let first = all_outputs(&cfg);
    for (name, text) in &first {
        let hash = text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("# config_hash="))
            .map(str::to_string)
            .unwrap_or_else(|| {
                serde_json::from_str::<serde_json::Value>(text).unwrap()["config_hash"]
                    .as_str()
                    .unwrap()
                    .to_string()
            });
        assert!(output::emit(&dir.path().join(name), &hash, text).unwrap());
    }
    let reparsed = ExperimentConfig::parse(&cfg.canonical()).unwrap();
    let second = all_outputs(&reparsed);
    let mut identical = first == second;
    let mut rewrites = 0usize;
    for (name, text) in &second {
        let path = dir.path().join(name);
        let before = std::fs::read(&path).unwrap();
        let hash = if name.ends_with(".csv") {
            text.lines()
                .next()
                .unwrap()
                .trim_start_matches("# config_hash=")
                .to_string()
        } else {
            serde_json::from_str::<serde_json::Value>(text).unwrap()["config_hash"]
                .as_str()
                .unwrap()
                .to_string()
        };
        if output::emit(&path, &hash, text).unwrap() {
            rewrites += 1;
        }
        identical &= std::fs::read(&path).unwrap() == before && before == text.as_bytes();
    }
    let hash_stable = reparsed.hash("census") == cfg.hash("census");
    let pass = identical && rewrites == 0 && hash_stable;
    report(
        12,
        "same config hash gives byte-identical output",
        pass,
        format!("{} outputs compared, identical={identical}, rewrites={rewrites}, hash stable={hash_stable}", first.len()),
    );
    assert!(identical);
    assert_eq!(rewrites, 0);
    assert!(hash_stable);
}
