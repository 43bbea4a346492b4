//! Monte Carlo runs over independent seeds. Each seed grows one stream and is
//! processed sequentially; seeds fan out over the rayon pool and results are
//! collected in seed order, so every table is a deterministic function of
//! the configuration.

use rayon::prelude::*;
use serde::Serialize;

use super::config::ExperimentConfig;
use super::stats::{
    estimate_tail_exponent, fit_log_growth, fit_log_growth_weighted, fit_power_law, mean_sd,
    FitReport, TailEstimate,
};
use crate::census::{count_ordered_copies, OrderedPattern};
use crate::error::{Error, Result};
use crate::generator::PaStream;
use crate::graph::{cycles_up_to, ArrivalGraph, Vertex};
use crate::structure::{check_with_cycles, DegreeMode, StructureParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: Vertex,
    pub seed: u64,
    pub pattern: String,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusSummary {
    pub pattern: String,
    pub n: Vertex,
    pub seeds: usize,
    pub mean: f64,
    pub sd: f64,
    pub se: f64,
}

fn resolve_patterns(names: &[String]) -> Result<Vec<(String, OrderedPattern)>> {
    if names.is_empty() {
        return Err(Error::InvalidConfig("pattern list is empty".into()));
    }
    names
        .iter()
        .map(|name| Ok((name.clone(), OrderedPattern::from_name(name)?)))
        .collect()
}

/// Grows one stream per seed and calls `visit` at every scheduled size.
fn per_seed<T, F>(cfg: &ExperimentConfig, visit: F) -> Result<Vec<Vec<T>>>
where
    T: Send,
    F: Fn(u64, &ArrivalGraph) -> Result<T> + Sync,
{
    cfg.validate()?;
    (0..cfg.seeds)
        .into_par_iter()
        .map(|i| {
            let params = cfg.run_params(i)?;
            let mut stream = PaStream::new(params);
            cfg.schedule
                .iter()
                .map(|&n| {
                    stream.grow_to(n);
                    visit(params.seed(), stream.graph())
                })
                .collect()
        })
        .collect()
}

/// Ordered copy counts of every configured pattern at every scheduled size.
/// Rows are sorted by seed, then `n`, then pattern order.
pub fn run_census_experiment(cfg: &ExperimentConfig) -> Result<Vec<CensusRow>> {
    let patterns = resolve_patterns(&cfg.patterns)?;
    let nested = per_seed(cfg, |seed, g| {
        let sv = g.simple_view();
        Ok(patterns
            .iter()
            .map(|(name, p)| CensusRow {
                n: g.last_index(),
                seed,
                pattern: name.clone(),
                count: count_ordered_copies(&sv, p),
            })
            .collect::<Vec<_>>())
    })?;
    Ok(nested.into_iter().flatten().flatten().collect())
}

/// Mean, standard deviation and standard error of the counts per pattern and
/// `n`, in first-appearance order.
pub fn summarize_census(rows: &[CensusRow]) -> Vec<CensusSummary> {
    let mut keys: Vec<(String, Vertex)> = Vec::new();
    for r in rows {
        if !keys.iter().any(|(p, n)| *p == r.pattern && *n == r.n) {
            keys.push((r.pattern.clone(), r.n));
        }
    }
    keys.sort_by(|a, b| {
        let pa = rows.iter().position(|r| r.pattern == a.0);
        let pb = rows.iter().position(|r| r.pattern == b.0);
        pa.cmp(&pb).then(a.1.cmp(&b.1))
    });
    keys.into_iter()
        .map(|(pattern, n)| {
            let xs: Vec<f64> = rows
                .iter()
                .filter(|r| r.pattern == pattern && r.n == n)
                .map(|r| r.count as f64)
                .collect();
            let (mean, sd) = mean_sd(&xs);
            CensusSummary {
                pattern,
                n,
                seeds: xs.len(),
                mean,
                sd,
                se: sd / (xs.len() as f64).sqrt(),
            }
        })
        .collect()
}

/// Log-growth fit of the mean count of `pattern` against `ln n`, optionally
/// weighting each mean by its inverse squared standard error.
pub fn fit_census_growth_with(
    summary: &[CensusSummary],
    pattern: &str,
    weighted: bool,
) -> Result<FitReport> {
    if weighted {
        let series: Vec<(f64, f64, f64)> = summary
            .iter()
            .filter(|s| s.pattern == pattern)
            .map(|s| (f64::from(s.n), s.mean, s.se))
            .collect();
        return fit_log_growth_weighted(&series);
    }
    fit_census_growth(summary, pattern)
}

/// Unweighted log-growth fit of the mean count of `pattern` against `ln n`.
pub fn fit_census_growth(summary: &[CensusSummary], pattern: &str) -> Result<FitReport> {
    let series: Vec<(f64, f64)> = summary
        .iter()
        .filter(|s| s.pattern == pattern)
        .map(|s| (f64::from(s.n), s.mean))
        .collect();
    fit_log_growth(&series)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxDegreeObservation {
    pub seed: u64,
    pub n: Vertex,
    pub max_degree: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxDegreeReport {
    pub fit: FitReport,
    /// `1/(tau - 1)`.
    pub target: f64,
    pub observations: Vec<MaxDegreeObservation>,
}

/// Pooled regression of `ln M(n)` on `ln n`.
pub fn fit_max_degree(observations: &[MaxDegreeObservation]) -> Result<FitReport> {
    let pts: Vec<_> = observations
        .iter()
        .map(|o| (f64::from(o.n), o.max_degree as f64))
        .collect();
    fit_power_law(&pts)
}

pub fn estimate_maxdeg_exponent(cfg: &ExperimentConfig) -> Result<MaxDegreeReport> {
    cfg.validate()?;
    let (lo, hi) = (cfg.schedule[0], *cfg.schedule.last().unwrap());
    if u64::from(hi) < 8 * u64::from(lo) {
        return Err(Error::InvalidSchedule(
            "max-degree fit needs a schedule spanning at least 3 octaves".into(),
        ));
    }
    let observations: Vec<_> = per_seed(cfg, |seed, g| {
        Ok(MaxDegreeObservation {
            seed,
            n: g.last_index(),
            max_degree: g.max_degree(),
        })
    })?
    .into_iter()
    .flatten()
    .collect();
    Ok(MaxDegreeReport {
        fit: fit_max_degree(&observations)?,
        target: cfg.model_params()?.chi_f64(),
        observations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailReport {
    pub n: Vertex,
    pub seeds: usize,
    pub tau_expected: f64,
    pub estimate: TailEstimate,
}

/// Hill estimate of `tau` from multigraph degrees of `G_n` pooled over seeds,
/// where `n` is the last scheduled size.
pub fn estimate_tail_from_graphs(cfg: &ExperimentConfig) -> Result<TailReport> {
    cfg.validate()?;
    let n = *cfg.schedule.last().unwrap();
    let degrees: Vec<Vec<f64>> = (0..cfg.seeds)
        .into_par_iter()
        .map(|i| {
            let mut s = PaStream::new(cfg.run_params(i)?);
            s.grow_to(n);
            Ok(s.graph().degrees().iter().map(|&d| d as f64).collect())
        })
        .collect::<Result<_>>()?;
    let pooled: Vec<f64> = degrees.into_iter().flatten().collect();
    Ok(TailReport {
        n,
        seeds: cfg.seeds,
        tau_expected: cfg.model_params()?.tau_f64(),
        estimate: estimate_tail_exponent(&pooled)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivergenceRow {
    pub n: Vertex,
    pub seeds: usize,
    pub exceed: usize,
    pub frequency: f64,
    pub se: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivergenceReport {
    pub cycle_length: usize,
    pub threshold: u64,
    pub rows: Vec<DivergenceRow>,
    /// Whether the frequency never drops by more than two standard errors
    /// between consecutive sizes.
    pub nondecreasing_trend: bool,
}

/// Empirical `Pr(N_n(C_b) > threshold)` per `n` from census rows.
pub fn divergence_from_census(
    rows: &[CensusRow],
    pattern: &str,
    threshold: u64,
) -> Vec<DivergenceRow> {
    let mut ns: Vec<Vertex> = rows
        .iter()
        .filter(|r| r.pattern == pattern)
        .map(|r| r.n)
        .collect();
    ns.sort_unstable();
    ns.dedup();
    ns.into_iter()
        .map(|n| {
            let counts: Vec<u64> = rows
                .iter()
                .filter(|r| r.pattern == pattern && r.n == n)
                .map(|r| r.count)
                .collect();
            let seeds = counts.len();
            let exceed = counts.iter().filter(|&&c| c > threshold).count();
            let p = exceed as f64 / seeds as f64;
            DivergenceRow {
                n,
                seeds,
                exceed,
                frequency: p,
                se: (p * (1.0 - p) / seeds as f64).sqrt(),
            }
        })
        .collect()
}

pub fn cycle_divergence(cfg: &ExperimentConfig) -> Result<DivergenceReport> {
    if cfg.seeds == 0 {
        return Err(Error::InvalidConfig("seeds must be at least 1".into()));
    }
    let name = format!("C{}", cfg.cycle_length);
    let census_cfg = ExperimentConfig {
        patterns: vec![name.clone()],
        ..cfg.clone()
    };
    let rows = run_census_experiment(&census_cfg)?;
    let rows = divergence_from_census(&rows, &name, cfg.threshold);
    let nondecreasing_trend = rows.windows(2).all(|w| {
        w[1].frequency >= w[0].frequency - 2.0 * (w[0].se.powi(2) + w[1].se.powi(2)).sqrt()
    });
    Ok(DivergenceReport {
        cycle_length: cfg.cycle_length,
        threshold: cfg.threshold,
        rows,
        nondecreasing_trend,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QcheckRow {
    pub n0: Vertex,
    #[serde(rename = "N0")]
    pub big_n0: Vertex,
    pub n: Vertex,
    pub seeds: usize,
    pub q1: usize,
    pub q2: usize,
    pub q3: usize,
    pub passes: usize,
    pub frequency: f64,
}

/// Per-seed proxies for the unobservable random times: the last vertex that
/// drew a repeated parent, and the first scheduled size at which Q3 holds
/// for each `N0` of the grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProxyRow {
    pub seed: u64,
    pub last_parallel_draw: Option<Vertex>,
    #[serde(rename = "N0")]
    pub big_n0: Vertex,
    pub first_q3_n: Option<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QcheckReport {
    pub epsilon: f64,
    pub rows: Vec<QcheckRow>,
    /// Grid point with the highest all-pass frequency at the largest `n`.
    pub best: Option<QcheckRow>,
    pub reaches_target: bool,
    pub proxies: Vec<ProxyRow>,
}

/// Accumulates Q1-Q3 verdicts over a `(n0, N0)` grid.
#[derive(Clone, Debug)]
pub struct QcheckTally {
    grid: Vec<(Vertex, Vertex)>,
    a: usize,
    m: usize,
    mode: DegreeMode,
    // (n, grid index) -> (seeds, q1, q2, q3, all)
    cells: std::collections::BTreeMap<(Vertex, usize), [usize; 5]>,
}

impl QcheckTally {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self> {
        let grid: Vec<(Vertex, Vertex)> = cfg
            .n0_grid
            .iter()
            .flat_map(|&n0| cfg.big_n0_grid.iter().map(move |&nn| (n0, nn)))
            .filter(|&(n0, nn)| n0 < nn)
            .collect();
        if grid.is_empty() {
            return Err(Error::InvalidConfig("no grid point with n0 < N0".into()));
        }
        if cfg.rounds == 0 {
            return Err(Error::InvalidConfig("rounds must be positive".into()));
        }
        Ok(Self {
            grid,
            a: 3 * cfg.rounds,
            m: cfg.m,
            mode: cfg.degree_mode,
            cells: Default::default(),
        })
    }

    /// Verdict bits `(q1, q2, q3)` of `g` at every grid point with `N0 < n`.
    pub fn evaluate(&self, g: &ArrivalGraph) -> Result<Vec<Option<[bool; 3]>>> {
        let sv = g.simple_view();
        let cycles = cycles_up_to(&sv, self.a)?;
        let degrees = match self.mode {
            DegreeMode::Simple => None,
            DegreeMode::Multigraph => Some(g.degrees()),
        };
        self.grid
            .iter()
            .map(|&(n0, nn)| {
                if nn >= g.last_index() {
                    return Ok(None);
                }
                let p = StructureParams::new(n0, nn, self.a, self.m)?;
                let r = check_with_cycles(&sv, &p, &cycles, degrees)?;
                Ok(Some([r.q1, r.q2, r.q3]))
            })
            .collect()
    }

    pub fn record(&mut self, n: Vertex, verdicts: &[Option<[bool; 3]>]) {
        for (i, v) in verdicts.iter().enumerate() {
            let Some(v) = v else { continue };
            let cell = self.cells.entry((n, i)).or_default();
            cell[0] += 1;
            for (j, &b) in v.iter().enumerate() {
                cell[j + 1] += usize::from(b);
            }
            cell[4] += usize::from(v.iter().all(|&b| b));
        }
    }

    pub fn rows(&self) -> Vec<QcheckRow> {
        let mut rows: Vec<QcheckRow> = self
            .cells
            .iter()
            .map(|(&(n, i), c)| QcheckRow {
                n0: self.grid[i].0,
                big_n0: self.grid[i].1,
                n,
                seeds: c[0],
                q1: c[1],
                q2: c[2],
                q3: c[3],
                passes: c[4],
                frequency: c[4] as f64 / c[0] as f64,
            })
            .collect();
        rows.sort_by_key(|r| (r.n0, r.big_n0, r.n));
        rows
    }
}

/// Empirical frequency of Q1 and Q2 and Q3 over the `(n0, N0)` grid at every
/// scheduled size, with `a = 3 * rounds`.
pub fn qcheck_frequency(cfg: &ExperimentConfig) -> Result<QcheckReport> {
    let mut tally = QcheckTally::new(cfg)?;
    if let Some(&min_n) = cfg.schedule.first() {
        if tally.grid.iter().any(|&(_, nn)| nn >= min_n) {
            return Err(Error::InvalidConfig(
                "every N0 must be below the smallest n".into(),
            ));
        }
    }
    let per_seed_results = per_seed(cfg, |seed, g| {
        Ok((
            seed,
            g.last_index(),
            g.last_parallel_draw(),
            tally.evaluate(g)?,
        ))
    })?;

    let mut proxies = Vec::new();
    for runs in &per_seed_results {
        for (_, n, _, verdicts) in runs {
            tally.record(*n, verdicts);
        }
        let (seed, _, last_parallel, _) = runs.last().expect("schedule is nonempty");
        let mut big: Vec<Vertex> = cfg.big_n0_grid.clone();
        big.sort_unstable();
        big.dedup();
        for nn in big {
            let first_q3_n = runs.iter().find_map(|(_, n, _, verdicts)| {
                tally
                    .grid
                    .iter()
                    .zip(verdicts)
                    .any(|(&(_, g_nn), v)| g_nn == nn && v.is_some_and(|v| v[2]))
                    .then_some(*n)
            });
            proxies.push(ProxyRow {
                seed: *seed,
                last_parallel_draw: *last_parallel,
                big_n0: nn,
                first_q3_n,
            });
        }
    }
    Ok(finish_qcheck(cfg.epsilon, tally.rows(), proxies))
}

pub(crate) fn finish_qcheck(
    epsilon: f64,
    rows: Vec<QcheckRow>,
    proxies: Vec<ProxyRow>,
) -> QcheckReport {
    let last_n = rows.iter().map(|r| r.n).max();
    let best = rows
        .iter()
        .filter(|r| Some(r.n) == last_n)
        .fold(None::<&QcheckRow>, |best, r| match best {
            Some(b) if b.frequency >= r.frequency => Some(b),
            _ => Some(r),
        })
        .cloned();
    let reaches_target = best.as_ref().is_some_and(|b| b.frequency >= 1.0 - epsilon);
    QcheckReport {
        epsilon,
        rows,
        best,
        reaches_target,
        proxies,
    }
}
