use thiserror::Error;

use crate::partitions::BiPartition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero rational function")]
    DivisionByZero,

    #[error("substitution makes the denominator vanish identically: {den}")]
    DegenerateSubstitution { den: String },

    #[error("pole at k = {k}, p0 = {p0}: denominator {den} vanishes")]
    Pole { k: String, p0: String, den: String },

    #[error("operator {op} is not defined on {what}")]
    Domain { op: &'static str, what: String },

    #[error("resonance while solving for P{target}: E{target} - E{below} = 0")]
    Resonance {
        target: BiPartition,
        below: BiPartition,
    },

    #[error("operator matrix is not triangular: L(m{column}) has a nonzero entry at {row}")]
    Triangularity {
        column: BiPartition,
        row: BiPartition,
    },

    #[error("diagonal entry of the operator at {pair} is {found}, expected {expected}")]
    Diagonal {
        pair: BiPartition,
        found: String,
        expected: String,
    },

    #[error("coefficient denominator of P{pair} vanishes identically at k = -1: {den}")]
    PoleAtMinusOne { pair: BiPartition, den: String },

    #[error("k = -1 limit of P{pair} still depends on p0: {coeff}")]
    ResidualP0Dependence { pair: BiPartition, coeff: String },

    #[error("box ({row}, {col}) is not {expected} for {partition}")]
    BoxMismatch {
        row: i64,
        col: i64,
        expected: &'static str,
        partition: String,
    },

    #[error("{0} is not a partition obtained by one box change")]
    NotOneBox(String),

    #[error("input is not symmetric under z{0} <-> z{1}")]
    NonSymmetric(usize, usize),

    #[error("singular {0} matrix")]
    Singular(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}
