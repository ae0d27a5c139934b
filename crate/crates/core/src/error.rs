use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while reading or validating input data.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("input is empty")]
    Empty,
    #[error("line {line}: expected {expected} fields, found {found}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column {column}: cannot parse {value:?} as a number")]
    NotNumeric {
        row: usize,
        column: usize,
        value: String,
    },
    #[error("row {row}, column {column}: missing value")]
    Missing { row: usize, column: usize },
    #[error("row {row}, column {column}: value is not finite")]
    NotFinite { row: usize, column: usize },
    #[error("a data matrix needs at least 2 dimensions, found {0}")]
    TooFewDimensions(usize),
    #[error("matrix shape {n}x{d} does not match {len} values")]
    Shape { n: usize, d: usize, len: usize },
    #[error("membership table: {0}")]
    Membership(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Errors raised by an invalid synthetic data description.
#[derive(Debug, Error, PartialEq)]
pub enum SpecError {
    #[error("cluster {cluster}: dimension {dim} is out of range for d = {d}")]
    DimensionOutOfRange { cluster: usize, dim: usize, d: usize },
    #[error("cluster {cluster}: point range {start}..{end} is invalid for n = {n}")]
    PointRange {
        cluster: usize,
        start: usize,
        end: usize,
        n: usize,
    },
    #[error("cluster {cluster}: standard deviation for dimension {dim} must be finite and >= 0")]
    BadStd { cluster: usize, dim: usize },
    #[error("clusters {first} and {second} both claim cell (point {point}, dimension {dim})")]
    Conflict {
        first: usize,
        second: usize,
        point: usize,
        dim: usize,
    },
    #[error("need n >= 1 and d >= 2, got n = {n}, d = {d}")]
    Shape { n: usize, d: usize },
}

/// Errors from parameter validation in the clustering pipeline.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParamError {
    #[error("base dimensionality p = {p} must be >= 1 and < d = {d}")]
    Dimensionality { p: usize, d: usize },
    #[error("exhaustive enumeration only supports p = 2, got p = {0}")]
    AllNeedsPairs(usize),
    #[error("{count} subspaces cannot give every one of {d} dimensions coverage {coverage} with p = {p} (need at least {needed})")]
    InfeasibleCoverage {
        count: usize,
        coverage: usize,
        d: usize,
        p: usize,
        needed: usize,
    },
    #[error("requested {count} subspaces but only {available} distinct ones exist")]
    TooManySubspaces { count: usize, available: u128 },
    #[error("k = {k} must satisfy 1 <= k <= n = {n}")]
    ClusterCount { k: usize, n: usize },
    #[error("min_cluster_size = {size} must satisfy 1 <= size <= n = {n}")]
    MinClusterSize { size: usize, n: usize },
    #[error("min_sup = {0} must lie in (0, 1]")]
    MinSup(f64),
    #[error("min_base_size must be >= 1")]
    MinBaseSize,
    #[error("min_ratio must be >= 1, got {0}")]
    MinRatio(f64),
    #[error("the k list is empty")]
    EmptySweep,
    #[error("the benchmark size list is empty")]
    EmptySizes,
    #[error("cannot parse {0:?}; expected an item like (S6,1)")]
    Item(String),
    #[error("cannot parse {0:?}; expected a size like 10000x10")]
    Size(String),
    #[error("base dimensionality p = {p} does not match points with {width} columns")]
    PointWidth { p: usize, width: usize },
}

/// Errors raised while comparing clusterings.
#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("label vectors differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("label vectors are empty")]
    Empty,
    #[error("result covers {result} points but the truth has {truth}")]
    PointCount { result: usize, truth: usize },
}

/// Errors from the apriori reference miner.
#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("apriori oracle is limited to {max_items} items and {max_transactions} transactions, got {items} and {transactions}")]
    TooLarge {
        items: usize,
        transactions: usize,
        max_items: usize,
        max_transactions: usize,
    },
}

/// The maximal-pattern search ran out of work budget.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum MiningError {
    #[error("pattern search exceeded its work budget of {0}; raise min_sup or adjust k")]
    Budget(u64),
}

/// Internal consistency failures while turning patterns into clusters.
#[derive(Debug, Error, PartialEq)]
pub enum AssemblyError {
    #[error("pattern {0} is not contained in any transaction")]
    UnsupportedPattern(usize),
    #[error("pattern {pattern} references subspace {subspace}, but only {available} subspaces exist")]
    UnknownSubspace {
        pattern: usize,
        subspace: usize,
        available: usize,
    },
}

/// Top-level error for end-to-end runs.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Mining(#[from] MiningError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn format(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        Error::Format {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
