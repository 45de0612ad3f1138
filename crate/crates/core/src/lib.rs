//! Expansions of reals in non-integer bases `q ∈ (1, M+1]` over the digits
//! `{0, …, M}`: univoque tests, inverse base solving, and the Cantor sets of
//! univoque bases together with thickness and dimension estimates.

pub mod cantor;
pub mod cli;
pub mod config;
pub mod error;
pub mod expansion;
pub mod freqsets;
pub mod real;
pub mod solver;
pub mod symbolic;

pub use error::{Error, Result};
pub use real::{CertifiedReal, Quadratic, RationalInterval};
pub use symbolic::{Alphabet, PeriodicSeq, Word};
