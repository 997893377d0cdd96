//! Burstiness measures for term extraction under a multinomial language model.
//!
//! The central measure is the residual ICF: the expected inverse collection
//! frequency of a term given its document frequency, minus its observed ICF.

pub mod cli;
pub mod error;
pub mod eval;
pub mod exact;
pub mod ingest;
pub mod matrix;
pub mod measures;
pub mod output;
pub mod report;
pub mod stats;

pub use error::{Error, Result};
pub use matrix::{build_matrix, build_matrix_with_ids, TermDocumentMatrix, TermStats};
pub use measures::Measure;
