use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight {0:?} is not weakly decreasing")]
    NotDominant(Vec<i64>),

    #[error("{what} = {value} is outside the admissible range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },

    #[error("rank must be at least 2, got {0}")]
    SmallRank(usize),

    #[error("triple is not admissible: {0}")]
    BadTriple(String),

    #[error("representation is not generated by the vertex {0}")]
    NotGenerated(usize),

    #[error("Ext pair ({0}, {1}) is not covered by the ledger")]
    UnsupportedPair(String, String),

    #[error("connecting map rank in degree {degree} is not forced ({source_dim} -> {target_dim})")]
    AmbiguousRank {
        degree: i64,
        source_dim: u64,
        target_dim: u64,
    },

    #[error("mutation step not available: {0}")]
    Mutation(String),

    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(what: &'static str, value: i64, lo: i64, hi: i64) -> Result<()> {
    if (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange { what, value, lo, hi })
    }
}

pub(crate) fn check_rank(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::SmallRank(n))
    }
}
