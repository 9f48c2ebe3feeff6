//! The subword order on words over `{a, b}` with no run of more than `d`
//! b's, equivalently the composition poset with parts at most `d + 1`.
//!
//! The crate computes Möbius functions two ways (by the defining recursion
//! and by counting `d`-normal embeddings), labels maximal chains, builds
//! noncommutative rational series and two-track automata whose coefficients
//! are the zeta and Möbius functions, and produces one-variable norm
//! generating functions. Every closed construction is paired with a
//! brute-force route so the two can be compared.

pub mod automata;
pub mod embedding;
pub mod error;
pub mod genfun;
pub mod ncseries;
pub mod poset;
pub mod selftest;
pub mod shelling;
pub mod word;

pub use embedding::{
    all_embeddings, count_d_normal, d_normal_embeddings, is_d_normal, mobius_formula,
    normal_family, psi, rightmost_embedding, Embedding, RepetitionSet,
};
pub use error::{Error, Result};
pub use poset::{covers, is_subword, mobius_from_top, mobius_recursive, Interval};
pub use word::{Composition, Letter, RunBound, Word};
