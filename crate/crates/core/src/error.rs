use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("inexact division: no Laurent quotient exists ({0})")]
    InexactDivision(String),

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("series inversion requires a nonzero constant term")]
    ZeroConstantTerm,

    #[error("precision exhausted: error radius {radius:e} exceeds tolerance {tolerance:e}")]
    PrecisionExhausted { radius: f64, tolerance: f64 },

    #[error("braid closure is not a knot: {components} components")]
    NotAKnot { components: usize },

    #[error("invalid braid word: {0}")]
    InvalidBraid(String),

    #[error("need cyclotomic coefficients up to k = {needed}, only {available} available")]
    InsufficientCoefficients { needed: usize, available: usize },

    #[error("series known only through order {available}, need order {needed}")]
    InsufficientOrder { needed: usize, available: usize },

    #[error("inconsistent 1/n fit for h^{order}: held-out color {color} misses by {residual}")]
    InconsistentFit {
        order: usize,
        color: u32,
        residual: String,
    },

    #[error("no loop polynomial P_{loop_order} with exponents in [-{cap}, {cap}]")]
    NoPolynomialInWindow { loop_order: usize, cap: i64 },

    #[error("cyclotomic tail not certified at alpha = {alpha}, n = {n}: {reason}")]
    TailNotCertified {
        alpha: String,
        n: u32,
        reason: String,
    },

    #[error("degenerate fit data: {0}")]
    DegenerateData(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
