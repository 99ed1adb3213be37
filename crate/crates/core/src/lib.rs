//! Eta-invariant and signature obstructions for boundary links, computed
//! exactly from Seifert matrices and unitary representations of free groups.

pub mod algebra;
pub mod error;
pub mod eta;
pub mod reps;
pub mod seifert;

use std::fmt;

pub use error::{Error, Result};

/// Arithmetic used for a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}
