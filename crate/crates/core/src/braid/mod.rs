//! Artin braid words and everything computed from them.

mod artin;
mod closure;
mod factorization;
mod word;

pub use artin::{artin_equal, artin_equal_with_limit, artin_image, DEFAULT_WORD_LIMIT};
pub use closure::{closure_linking_matrix, closure_pd, strand_components, transverse_self_linking};
pub use factorization::{verify_factorization, verify_factorization_with_limit, Factor, FactorizationRecord};
pub use word::{full_twist, word_algebra, BraidWord, WordMode};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("braid needs at least {min} strands, got {got}")]
    TooFewStrands { min: usize, got: usize },
    #[error("free word length exceeded the limit of {limit} letters")]
    WordLimit { limit: usize },
    #[error("factorization has no factors")]
    EmptyFactorization,
    #[error("conjugator {index} has {found} strands, expected {expected}")]
    ConjugatorStrands { index: usize, expected: usize, found: usize },
}
