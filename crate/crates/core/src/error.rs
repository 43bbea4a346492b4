use std::io;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (last index is {last_index})")]
    VertexOutOfRange { vertex: u64, last_index: u64 },
    #[error("expected {expected} parents, got {got}")]
    WrongParentCount { expected: usize, got: usize },
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("empty vertex set")]
    EmptySet,
    #[error("cycle length bound must be at least 3, got {0}")]
    CycleBoundTooSmall(usize),
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid structure parameters: {0}")]
    InvalidStructureParams(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
