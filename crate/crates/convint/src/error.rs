use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Error, Debug)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: &'static str, got: &'static str },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("aliasing: mode {mode} exceeds the grid Nyquist limit {nyquist}")]
    Aliasing { mode: i64, nyquist: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coefficient set violates the reality pairing at k = {0:?}")]
    RealityPairing([i64; 3]),

    #[error("family too degenerate: {0}")]
    DegenerateFamily(String),

    #[error("argument outside the admissible ball: |R - Id| = {distance:.6e}, r0 = {r0:.6e}")]
    OutsideBall { distance: f64, r0: f64 },

    #[error("search bound {bound} exhausted: {context}")]
    SearchExhausted { bound: u64, context: String },

    #[error("energy hypothesis violated at t = {t}: gap {gap:.6e} outside [{lo:.6e}, {hi:.6e}]")]
    EnergyHypothesis { t: f64, gap: f64, lo: f64, hi: f64 },

    #[error("stress hypothesis violated: sup |stress| = {sup:.6e} > {bound:.6e}")]
    StressHypothesis { sup: f64, bound: f64 },

    #[error("time-derivative consistency failure: {0}")]
    TimeDerivative(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
