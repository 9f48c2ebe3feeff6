use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("run bound must be at least 1")]
    InvalidRunBound,

    #[error("invalid letter {0:?}: words are spelled with 'a' and 'b' only")]
    InvalidLetter(char),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("{word} has a run of more than {d} consecutive b's")]
    Unrestricted { word: Word, d: u32 },

    #[error("{u} is not a subword of {w}")]
    NotSubword { u: Word, w: Word },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("embedding is not a member of the normal family of the interval")]
    NotInNormalFamily,

    #[error("bottom and top coincide, so no position can be toggled")]
    NoTogglePosition,

    #[error("malformed chain: {0}")]
    MalformedChain(String),

    #[error("star or plus applied to an expression with nonzero constant term")]
    NonzeroConstantTerm,

    #[error("automaton has a cycle of arcs labeled eps⊗eps")]
    EmptyCycle,

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("denominator vanishes at x = 0")]
    SingularDenominator,

    #[error("power series coefficient {index} is not an integer")]
    NonIntegralCoefficient { index: usize },

    #[error("part {part} exceeds the largest allowed part {max}")]
    PartTooLarge { part: u32, max: u32 },

    #[error("integer overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
