//! Experiment configuration: `key = value` files, canonical form and hash.
//!
//! Recognized keys (all optional, defaults in brackets):
//!
//! | key           | meaning                                             |
//! |---------------|-----------------------------------------------------|
//! | `m`           | edges per vertex [2]                                |
//! | `delta`       | attachment offset `p/q` [1/1]                       |
//! | `seed`        | base seed; run `i` uses `seed + i` [0]              |
//! | `seeds`       | number of runs [10]                                 |
//! | `schedule`    | `n` values: `a,b,c` or `pow2:lo..hi` [pow2:10..17]  |
//! | `epsilon`     | target failure probability [0.5]                   |
//! | `patterns`    | comma list of names (`C3`, `K4`, ...) [C3,K4]       |
//! | `n0`          | comma list of `n0` grid values [0,1,2]              |
//! | `N0`          | comma list of `N0` grid values [1,2,4,8]            |
//! | `rounds`      | round budget `R`, with `a = 3R` [1]                 |
//! | `threshold`   | divergence threshold `C` [10]                       |
//! | `cycle`       | cycle length `b` for divergence [3]                 |
//! | `gamma`       | pebbles for the game harness [m - 2]                |
//! | `degree_mode` | `simple` or `multigraph` for Q3 [simple]            |
//! | `memo_cap`    | pebble game memo cap [10000000]                     |
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_rational::Ratio;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::game::DEFAULT_MEMO_CAP;
use crate::graph::Vertex;
use crate::params::{format_ratio, parse_delta, ModelParams};
use crate::structure::DegreeMode;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub m: usize,
    pub delta: Ratio<u64>,
    pub base_seed: u64,
    pub seeds: usize,
    pub schedule: Vec<Vertex>,
    pub epsilon: f64,
    pub patterns: Vec<String>,
    pub n0_grid: Vec<Vertex>,
    pub big_n0_grid: Vec<Vertex>,
    pub rounds: usize,
    pub threshold: u64,
    pub cycle_length: usize,
    pub gamma: Option<usize>,
    pub degree_mode: DegreeMode,
    pub memo_cap: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            m: 2,
            delta: Ratio::from_integer(1),
            base_seed: 0,
            seeds: 10,
            schedule: (10..=17).map(|e| 1 << e).collect(),
            epsilon: 0.5,
            patterns: vec!["C3".into(), "K4".into()],
            n0_grid: vec![0, 1, 2],
            big_n0_grid: vec![1, 2, 4, 8],
            rounds: 1,
            threshold: 10,
            cycle_length: 3,
            gamma: None,
            degree_mode: DegreeMode::Simple,
            memo_cap: DEFAULT_MEMO_CAP,
        }
    }
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::InvalidConfig(format!("bad entry `{s}` for `{key}`")))
        })
        .collect()
}

fn parse_one<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("bad value `{value}` for `{key}`")))
}

/// `a,b,c` or `pow2:lo..hi` (inclusive).
pub fn parse_schedule(value: &str) -> Result<Vec<Vertex>> {
    if let Some(range) = value.trim().strip_prefix("pow2:") {
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| Error::InvalidConfig(format!("bad schedule `{value}`")))?;
        let lo: u32 = parse_one("schedule", lo)?;
        let hi: u32 = parse_one("schedule", hi)?;
        if hi > 31 || lo > hi {
            return Err(Error::InvalidConfig(format!("bad schedule `{value}`")));
        }
        Ok((lo..=hi).map(|e| 1 << e).collect())
    } else {
        parse_list("schedule", value)
    }
}

fn format_schedule(schedule: &[Vertex]) -> String {
    let pow2 = schedule.len() > 1
        && schedule.iter().all(|n| n.is_power_of_two())
        && schedule.windows(2).all(|w| w[1] == 2 * w[0]);
    if pow2 {
        format!(
            "pow2:{}..{}",
            schedule[0].trailing_zeros(),
            schedule.last().unwrap().trailing_zeros()
        )
    } else {
        join(schedule)
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl ExperimentConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        match key {
            "m" => self.m = parse_one(key, value)?,
            "delta" => self.delta = parse_delta(value)?,
            "seed" => self.base_seed = parse_one(key, value)?,
            "seeds" => self.seeds = parse_one(key, value)?,
            "schedule" => self.schedule = parse_schedule(value)?,
            "epsilon" => self.epsilon = parse_one(key, value)?,
            "patterns" => self.patterns = parse_list(key, value)?,
            "n0" => self.n0_grid = parse_list(key, value)?,
            "N0" => self.big_n0_grid = parse_list(key, value)?,
            "rounds" => self.rounds = parse_one(key, value)?,
            "threshold" => self.threshold = parse_one(key, value)?,
            "cycle" => self.cycle_length = parse_one(key, value)?,
            "gamma" => self.gamma = Some(parse_one(key, value)?),
            "degree_mode" => {
                self.degree_mode = match value.trim() {
                    "simple" => DegreeMode::Simple,
                    "multigraph" => DegreeMode::Multigraph,
                    other => {
                        return Err(Error::InvalidConfig(format!(
                            "unknown degree_mode `{other}`"
                        )))
                    }
                }
            }
            "memo_cap" => self.memo_cap = parse_one(key, value)?,
            _ => return Err(Error::InvalidConfig(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    /// Applies every setting in `text` on top of the current values.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: idx + 1,
                msg: format!("expected `key = value`, got `{line}`"),
            })?;
            self.set(k, v).map_err(|e| Error::Parse {
                line: idx + 1,
                msg: e.to_string(),
            })?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn model_params(&self) -> Result<ModelParams> {
        ModelParams::new(self.m, self.delta, self.base_seed)
    }

    /// Parameters of run `index`: seed `base_seed + index`.
    pub fn run_params(&self, index: usize) -> Result<ModelParams> {
        Ok(self
            .model_params()?
            .with_seed(self.base_seed.wrapping_add(index as u64)))
    }

    pub fn gamma(&self) -> usize {
        self.gamma.unwrap_or(self.m.saturating_sub(2))
    }

    pub fn validate(&self) -> Result<()> {
        self.model_params()?;
        crate::generator::validate_schedule(&self.schedule)?;
        if self.seeds == 0 {
            return Err(Error::InvalidConfig("seeds must be at least 1".into()));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must lie in (0, 1), got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    /// Sorted `key=value` lines covering every setting.
    pub fn canonical(&self) -> String {
        let mut map = BTreeMap::new();
        map.insert("m", self.m.to_string());
        map.insert("delta", format_ratio(&self.delta));
        map.insert("seed", self.base_seed.to_string());
        map.insert("seeds", self.seeds.to_string());
        map.insert("schedule", format_schedule(&self.schedule));
        map.insert("epsilon", format!("{:?}", self.epsilon));
        map.insert("patterns", self.patterns.join(","));
        map.insert("n0", join(&self.n0_grid));
        map.insert("N0", join(&self.big_n0_grid));
        map.insert("rounds", self.rounds.to_string());
        map.insert("threshold", self.threshold.to_string());
        map.insert("cycle", self.cycle_length.to_string());
        map.insert("gamma", self.gamma().to_string());
        map.insert(
            "degree_mode",
            match self.degree_mode {
                DegreeMode::Simple => "simple".into(),
                DegreeMode::Multigraph => "multigraph".into(),
            },
        );
        map.insert("memo_cap", self.memo_cap.to_string());
        map.into_iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    /// First 16 hex digits of the SHA-256 of [`ExperimentConfig::canonical`],
    /// salted with the experiment name.
    pub fn hash(&self, experiment: &str) -> String {
        let mut h = Sha256::new();
        h.update(experiment.as_bytes());
        h.update(b"\n");
        h.update(self.canonical().as_bytes());
        hex::encode(h.finalize())[..16].to_string()
    }
}
