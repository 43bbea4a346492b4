//! Desk-scale Monte Carlo experiments and their reports.
//!
//! Output schemas (CSV columns in order; JSON objects are the serialized
//! structs, wrapped as `{"config_hash", "report"}`):
//!
//! * census: `n,seed,pattern,count` ([`CensusRow`]); summary
//!   `pattern,n,seeds,mean,sd,se` ([`CensusSummary`]).
//! * maxdeg: `seed,n,max_degree` ([`MaxDegreeObservation`]) plus a JSON
//!   [`MaxDegreeReport`].
//! * divergence: `n,seeds,exceed,frequency,se` ([`DivergenceRow`]).
//! * qcheck: `n0,N0,n,seeds,q1,q2,q3,passes,frequency` ([`QcheckRow`]);
//!   proxies `seed,last_parallel_draw,N0,first_q3_n` ([`ProxyRow`]).
//! * lemma2: JSON [`Lemma2Summary`].

pub mod config;
pub mod lemma2;
pub mod output;
pub mod runs;
pub mod stats;

pub use config::ExperimentConfig;
pub use lemma2::{check_pair, lemma2_harness, Lemma2Outcome, Lemma2Record, Lemma2Summary};
pub use runs::{
    cycle_divergence, divergence_from_census, estimate_maxdeg_exponent, estimate_tail_from_graphs,
    fit_census_growth, fit_census_growth_with, fit_max_degree, qcheck_frequency,
    run_census_experiment, summarize_census, CensusRow, CensusSummary, DivergenceReport,
    DivergenceRow, MaxDegreeObservation, MaxDegreeReport, ProxyRow, QcheckReport, QcheckRow,
    QcheckTally, TailReport,
};
pub use stats::{
    estimate_tail_exponent, fit_linear, fit_log_growth, fit_log_growth_weighted, fit_weighted,
    FitReport, TailEstimate,
};
