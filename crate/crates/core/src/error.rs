//! Error types shared across the crate.

use thiserror::Error;

/// Failures of the continued-fraction engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    /// The dyadic bit budget ran out before the requested coefficient count.
    #[error(
        "bit budget exhausted after {produced} coefficients \
         (consumed {consumed} of {budget} bits)"
    )]
    BitBudget {
        produced: usize,
        consumed: usize,
        budget: usize,
    },

    /// A finite stream cannot supply the requested coefficient.
    #[error("stream holds {have} coefficients, {need} required")]
    InsufficientCoefficients { have: usize, need: usize },

    /// Zero denominator handed to a rational constructor.
    #[error("zero denominator")]
    ZeroDenominator,

    /// Rational input outside the open unit interval.
    #[error("rational {0} outside (0,1)")]
    OutOfRange(String),

    /// Statistic asked for below its minimal index.
    #[error("index {n} below the minimum {min} for this statistic")]
    IndexTooSmall { n: usize, min: usize },
}

/// Failures of the geometric layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// Time outside the half-open crossing window `[t_in, t_out)`.
    #[error("time {t} outside crossing window [{t_in}, {t_out})")]
    OutsideCrossing { t: f64, t_in: f64, t_out: f64 },

    /// Translation length of a non-hyperbolic element.
    #[error("matrix is not hyperbolic (|trace| = {trace} <= 2)")]
    NotHyperbolic { trace: f64 },

    /// Integer matrix expected with determinant one.
    #[error("matrix is not an integer unimodular map")]
    NotUnimodular,

    /// Fundamental-domain reduction hit the iteration guard.
    #[error("fundamental-domain reduction exceeded {0} iterations")]
    ReductionCap(usize),

    /// The composed reduction word overflowed 64-bit entries.
    #[error("reduction word overflowed i64 entries")]
    WordOverflow,
}

/// Failures of the statistics layer.
#[derive(Debug, Error)]
pub enum StatsError {
    #[error(transparent)]
    Cf(#[from] CfError),

    #[error(transparent)]
    Geom(#[from] GeomError),

    /// More than the tolerated fraction of Monte Carlo samples failed.
    #[error("{failed} of {total} samples failed; first failing seeds: {seeds:?}")]
    TooManyFailures {
        failed: usize,
        total: usize,
        seeds: Vec<u64>,
    },

    /// Statistic over an empty collection.
    #[error("empty input")]
    Empty,
}
