use std::fmt;

/// Which side of the bipartition a vertex lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    White,
    Black,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::White => f.write_str("white"),
            Side::Black => f.write_str("black"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("malformed graph: rank and pairs must both be at least 1 (got rank {rank}, pairs {pairs})")]
    EmptyGraph { rank: usize, pairs: usize },

    #[error("malformed graph: label out of range in edge ({color}, {white}, {black}) for rank {rank}, pairs {pairs}")]
    LabelOutOfRange {
        color: usize,
        white: usize,
        black: usize,
        rank: usize,
        pairs: usize,
    },

    #[error("malformed graph: duplicate slot (color {color}, {side} {vertex})")]
    DuplicateSlot { color: usize, side: Side, vertex: usize },

    #[error("incomplete graph: {side} {vertex} has no edge of color {color}")]
    Incomplete { color: usize, side: Side, vertex: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("rank {rank} too small (need at least {min})")]
    RankTooSmall { rank: usize, min: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("invalid edge reference: color {color}, white {white}")]
    InvalidEdge { color: usize, white: usize },

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("resource limit exceeded: {what} needs {requested}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("flow hits a pole at t = {t_pole} (t_max = {t_max})")]
    PoleCrossing { t_pole: f64, t_max: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
