mod args;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, Format, OutputArgs, PatternArgs, RunArgs};
use pafo_core::census::classify_pattern;
use pafo_core::experiments::{
    check_pair, cycle_divergence, estimate_maxdeg_exponent, estimate_tail_exponent,
    estimate_tail_from_graphs, fit_census_growth_with, lemma2_harness, output, qcheck_frequency,
    run_census_experiment, summarize_census, CensusRow, CensusSummary, ExperimentConfig, FitReport,
    Lemma2Outcome, TailEstimate,
};
use pafo_core::game::{duplicator_wins_with, SolverOptions};
use pafo_core::io::{
    load_pagraph, load_simple_view, pagraph_to_string, read_pattern, write_pattern,
};
use pafo_core::structure::{check_all, check_view, DegreeMode};
use pafo_core::{
    exponent_b, predicted_growth, ArrivalGraph, Error, OrderedPattern, PaStream, Result,
    StructureParams, StructureReport, Vertex,
};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn config(run: &RunArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &run.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    for (key, value) in run.overrides() {
        cfg.set(key, value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn pattern(args: &PatternArgs) -> Result<(String, OrderedPattern)> {
    match (&args.pattern, &args.pattern_file) {
        (Some(name), _) => Ok((name.clone(), OrderedPattern::from_name(name)?)),
        (None, Some(path)) => Ok((
            path.display().to_string(),
            read_pattern(&fs::read_to_string(path)?)?,
        )),
        (None, None) => Err(Error::InvalidPattern(
            "give --pattern or --pattern-file".into(),
        )),
    }
}

fn format(out: &OutputArgs, default: Format, allowed: &[Format], what: &str) -> Result<Format> {
    let f = out.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::InvalidConfig(format!(
            "{what} output supports only {allowed:?}"
        )))
    }
}

/// Prints `text`, or writes it to `--out` unless that file already holds
/// output for `hash`.
fn deliver(out: &OutputArgs, hash: &str, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => {
            if !output::emit(path, hash, text)? {
                eprintln!("{}: unchanged (config_hash={hash})", path.display());
            }
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn json<T: Serialize>(out: &OutputArgs, hash: &str, report: &T) -> Result<()> {
    deliver(out, hash, &output::json_string(hash, report)?)
}

fn csv<T: Serialize>(out: &OutputArgs, hash: &str, rows: &[T]) -> Result<()> {
    deliver(out, hash, &output::csv_string(hash, rows)?)
}

#[derive(Serialize)]
struct CensusReport<'a> {
    rows: &'a [CensusRow],
    summary: Vec<CensusSummary>,
    fits: Vec<PatternFit>,
}

#[derive(Serialize)]
struct PatternFit {
    pattern: String,
    weighted: bool,
    fit: Option<FitReport>,
    note: Option<String>,
}

fn census(run: &RunArgs, weighted: bool) -> Result<()> {
    let cfg = config(run)?;
    let f = format(
        &run.output,
        Format::Csv,
        &[Format::Csv, Format::Json],
        "census",
    )?;
    let hash = cfg.hash("census");
    let rows = run_census_experiment(&cfg)?;
    if f == Format::Csv {
        return csv(&run.output, &hash, &rows);
    }
    let summary = summarize_census(&rows);
    let fits = cfg
        .patterns
        .iter()
        .map(|p| match fit_census_growth_with(&summary, p, weighted) {
            Ok(fit) => PatternFit {
                pattern: p.clone(),
                weighted,
                fit: Some(fit),
                note: None,
            },
            Err(e) => PatternFit {
                pattern: p.clone(),
                weighted,
                fit: None,
                note: Some(e.to_string()),
            },
        })
        .collect();
    json(
        &run.output,
        &hash,
        &CensusReport {
            rows: &rows,
            summary,
            fits,
        },
    )
}

fn generate(run: &RunArgs, n: Option<u32>) -> Result<()> {
    let cfg = config(run)?;
    let n = n.or(cfg.schedule.last().copied()).unwrap_or(1);
    if n == 0 {
        return Err(Error::InvalidSchedule("n must be at least 1".into()));
    }
    let params = cfg.model_params()?;
    let mut stream = PaStream::new(params);
    stream.grow_to(n);
    let text = pagraph_to_string(&params, stream.graph())?;
    match &run.output.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct ExponentOutput {
    pattern: String,
    k: usize,
    edges: Vec<(usize, usize)>,
    tau: String,
    report: pafo_core::ExponentReport,
    growth: pafo_core::GrowthLaw,
}

fn exponents(args: &PatternArgs, run: &RunArgs) -> Result<()> {
    let cfg = config(run)?;
    format(&run.output, Format::Json, &[Format::Json], "exponents")?;
    let (name, p) = pattern(args)?;
    let params = cfg.model_params()?;
    let hash = output::input_hash(
        "exponents",
        &[cfg.canonical().as_bytes(), write_pattern(&p).as_bytes()],
    );
    let report = ExponentOutput {
        pattern: name,
        k: p.k(),
        edges: p.edges().collect(),
        tau: params.tau().to_string(),
        report: exponent_b(&p, &params),
        growth: predicted_growth(&p, &params),
    };
    json(&run.output, &hash, &report)
}

fn classify(args: &PatternArgs, out: &OutputArgs) -> Result<()> {
    format(out, Format::Json, &[Format::Json], "classify")?;
    let (name, p) = pattern(args)?;
    let hash = output::input_hash("classify", &[write_pattern(&p).as_bytes()]);
    #[derive(Serialize)]
    struct Out {
        pattern: String,
        #[serde(flatten)]
        classification: pafo_core::census::Classification,
    }
    json(
        out,
        &hash,
        &Out {
            pattern: name,
            classification: classify_pattern(&p),
        },
    )
}

fn maxdeg(run: &RunArgs) -> Result<()> {
    let cfg = config(run)?;
    let f = format(
        &run.output,
        Format::Json,
        &[Format::Csv, Format::Json],
        "maxdeg",
    )?;
    let hash = cfg.hash("maxdeg");
    let report = estimate_maxdeg_exponent(&cfg)?;
    match f {
        Format::Csv => csv(&run.output, &hash, &report.observations),
        Format::Json => json(&run.output, &hash, &report),
    }
}

fn file_bytes(paths: &[PathBuf]) -> Result<Vec<Vec<u8>>> {
    paths.iter().map(|p| Ok(fs::read(p)?)).collect()
}

fn tail(run: &RunArgs, graphs: &[PathBuf]) -> Result<()> {
    format(&run.output, Format::Json, &[Format::Json], "tail")?;
    if graphs.is_empty() {
        let cfg = config(run)?;
        let hash = cfg.hash("tail");
        return json(&run.output, &hash, &estimate_tail_from_graphs(&cfg)?);
    }
    #[derive(Serialize)]
    struct Out {
        files: Vec<String>,
        estimate: TailEstimate,
    }
    let bytes = file_bytes(graphs)?;
    let parts: Vec<&[u8]> = bytes.iter().map(Vec::as_slice).collect();
    let hash = output::input_hash("tail", &parts);
    let mut sample = Vec::new();
    for path in graphs {
        let file = load_pagraph(path)?;
        sample.extend(file.graph.degrees().iter().map(|&d| d as f64));
    }
    let estimate = estimate_tail_exponent(&sample)?;
    let files = graphs.iter().map(|p| p.display().to_string()).collect();
    json(&run.output, &hash, &Out { files, estimate })
}

fn divergence(run: &RunArgs) -> Result<()> {
    let cfg = config(run)?;
    let f = format(
        &run.output,
        Format::Csv,
        &[Format::Csv, Format::Json],
        "divergence",
    )?;
    let hash = cfg.hash("divergence");
    let report = cycle_divergence(&cfg)?;
    match f {
        Format::Csv => csv(&run.output, &hash, &report.rows),
        Format::Json => json(&run.output, &hash, &report),
    }
}

enum Loaded {
    Arrival(ArrivalGraph),
    Simple(pafo_core::SimpleView),
}

fn load_any(path: &Path) -> Result<(Loaded, Vec<u8>)> {
    let bytes = fs::read(path)?;
    let loaded = if bytes.starts_with(b"pagraph") {
        Loaded::Arrival(load_pagraph(path)?.graph)
    } else {
        Loaded::Simple(load_simple_view(path)?)
    };
    Ok((loaded, bytes))
}

fn grid(cfg: &ExperimentConfig) -> Vec<(Vertex, Vertex)> {
    cfg.n0_grid
        .iter()
        .flat_map(|&a| cfg.big_n0_grid.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a < b)
        .collect()
}

fn qcheck(run: &RunArgs, graph: Option<&Path>) -> Result<()> {
    let cfg = config(run)?;
    let Some(path) = graph else {
        let f = format(
            &run.output,
            Format::Csv,
            &[Format::Csv, Format::Json],
            "qcheck",
        )?;
        let hash = cfg.hash("qcheck");
        let report = qcheck_frequency(&cfg)?;
        return match f {
            Format::Csv => csv(&run.output, &hash, &report.rows),
            Format::Json => json(&run.output, &hash, &report),
        };
    };
    format(&run.output, Format::Json, &[Format::Json], "qcheck --graph")?;
    let (loaded, bytes) = load_any(path)?;
    let hash = output::input_hash("qcheck-graph", &[cfg.canonical().as_bytes(), &bytes]);
    let reports: Vec<StructureReport> = grid(&cfg)
        .into_iter()
        .map(|(n0, nn)| {
            let p = StructureParams::from_rounds(n0, nn, cfg.rounds, cfg.m)?;
            match &loaded {
                Loaded::Arrival(g) => check_all(g, &p, cfg.degree_mode),
                Loaded::Simple(sv) if cfg.degree_mode == DegreeMode::Simple => check_view(sv, &p),
                Loaded::Simple(_) => Err(Error::InvalidConfig(
                    "multigraph degrees need a pagraph file".into(),
                )),
            }
        })
        .collect::<Result<_>>()?;
    json(&run.output, &hash, &reports)
}

fn game(
    left: &Path,
    right: &Path,
    gamma: usize,
    rounds: usize,
    options: SolverOptions,
    out: &OutputArgs,
) -> Result<()> {
    format(out, Format::Json, &[Format::Json], "game")?;
    let (l, r) = (fs::read(left)?, fs::read(right)?);
    let settings = format!("gamma={gamma} rounds={rounds} witness={}", options.witness);
    let hash = output::input_hash("game", &[&l, &r, settings.as_bytes()]);
    let verdict = duplicator_wins_with(
        &load_simple_view(left)?,
        &load_simple_view(right)?,
        gamma,
        rounds,
        options,
    )?;
    json(out, &hash, &verdict)
}

fn lemma2(run: &RunArgs, pair: Option<(&Path, &Path)>) -> Result<()> {
    let cfg = config(run)?;
    format(&run.output, Format::Json, &[Format::Json], "lemma2")?;
    let Some((left, right)) = pair else {
        let hash = cfg.hash("lemma2");
        return json(&run.output, &hash, &lemma2_harness(&cfg)?);
    };
    let (l, r) = (fs::read(left)?, fs::read(right)?);
    let hash = output::input_hash("lemma2-pair", &[cfg.canonical().as_bytes(), &l, &r]);
    let (h1, h2) = (load_simple_view(left)?, load_simple_view(right)?);
    let options = SolverOptions {
        memo_cap: cfg.memo_cap,
        witness: false,
    };
    let records = grid(&cfg)
        .into_iter()
        .map(|(n0, nn)| {
            let p = StructureParams::from_rounds(n0, nn, cfg.rounds, cfg.m)?;
            check_pair(&h1, &h2, &p, cfg.gamma(), cfg.rounds, options)
        })
        .collect::<Result<Vec<_>>>()?;
    if records
        .iter()
        .any(|r| r.outcome == Lemma2Outcome::Counterexample)
    {
        eprintln!("hypotheses hold but Spoiler wins on at least one grid point");
    }
    json(&run.output, &hash, &records)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Generate { run, n } => generate(&run, n),
        Command::Census { run, weighted } => census(&run, weighted),
        Command::Exponents { pattern, run } => exponents(&pattern, &run),
        Command::Classify { pattern, out } => classify(&pattern, &out),
        Command::Maxdeg { run } => maxdeg(&run),
        Command::Tail { run, graphs } => tail(&run, &graphs),
        Command::Divergence { run } => divergence(&run),
        Command::Qcheck { run, graph } => qcheck(&run, graph.as_deref()),
        Command::Game {
            left,
            right,
            gamma,
            rounds,
            witness,
            memo_cap,
            out,
        } => game(
            &left,
            &right,
            gamma,
            rounds,
            SolverOptions { memo_cap, witness },
            &out,
        ),
        Command::Lemma2 { run, left, right } => lemma2(&run, left.as_deref().zip(right.as_deref())),
    }
}
