//! Quaternary Legendre pairs: exact arithmetic, searches and the Hadamard
//! matrices they produce.
//!
//! All verification is exact over the Gaussian integers. Floating point is
//! used only to prune searches and is always followed by an exact check.

pub mod compress;
pub mod corpus;
pub mod error;
pub mod exactmath;
pub mod filters;
pub mod hadamard;
pub mod legendre;
pub mod matrix;
pub mod search;
pub mod seeds;
pub mod seqcore;

pub use compress::CompressedSeq;
pub use error::{Error, Result};
pub use exactmath::{GaussInt, QSymbol};
pub use legendre::{LegendrePair, PairRecord};
pub use matrix::{GaussMatrix, MatrixKind, MatrixRecord};
pub use search::{SearchOutcome, SearchPlan, SearchStatus};
pub use seeds::{HalfVector, SeedSearchOptions, SeedSearchOutcome};
pub use seqcore::{Psd, QSeq};
