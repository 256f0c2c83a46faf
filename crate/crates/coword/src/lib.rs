//! Keyword co-occurrence analysis for Web of Science plain-text exports.
//!
//! The crate covers the full desk pipeline: parse exported records, filter
//! them into period/area corpora, normalize keywords, compute co-occurrence
//! statistics against a focal keyword, project the bipartite keyword-article
//! relation onto a weighted keyword network, and characterize the network's
//! minimum spanning tree (diameter, leaves, star/path motifs).
//!
//! Entry points by stage:
//!
//! * [`wos`] — export parsing, corpus filtering, canonical corpus JSON.
//! * [`keyword`] — keyword normalization and per-record keyword sets.
//! * [`stats`] — frequency tables, co-occurrence counts, overlap, growth.
//! * [`net`] — bipartite construction, one-mode projection, distances.
//! * [`mst`] — single-link clustering, spanning forests, topology reports.
//! * [`pipeline`] — end-to-end orchestration with a run manifest.
//! * [`synth`] — deterministic synthetic corpora with ground truth.

use std::fmt;

pub mod keyword;
pub mod mst;
pub mod net;
pub mod pipeline;
pub mod ratio;
pub mod stats;
pub mod synth;
pub mod wos;

pub use keyword::{CanonicalKeyword, FieldKind, SynonymMap};
pub use stats::{CategoryLexicon, CooccurrenceTable, RankedKeywords};

/// Scalar type for edge distances: `f32` or `f64`.
pub trait Scalar:
    num_traits::Float + num_traits::FromPrimitive + fmt::Debug + fmt::Display
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Default distance scalar used by the pipeline and CLI.
pub type Distance = f64;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by parsing, serialization, and analysis.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("{file}: invalid UTF-8 near byte {offset}")]
    Encoding { file: String, offset: usize },

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("{file}: {message}")]
    InvalidInput { file: String, message: String },

    #[error("overlap undefined: both keyword sets are empty")]
    OverlapUndefined,

    #[error("growth ratio undefined: early-period count is zero")]
    ZeroEarlyCount,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("stage {stage}: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },

    #[error("stage {stage}: empty corpus ({detail})")]
    EmptyCorpus { stage: String, detail: String },

    #[error("{0}")]
    Analysis(String),
}

impl Error {
    /// Wrap an error with the pipeline stage it occurred in.
    pub fn in_stage(self, stage: &str) -> Error {
        Error::Stage {
            stage: stage.to_string(),
            source: Box::new(self),
        }
    }

    /// True for errors caused by unreadable or malformed input, as opposed
    /// to analysis-level failures on valid input.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Io(_)
            | Error::Encoding { .. }
            | Error::Parse { .. }
            | Error::Schema { .. }
            | Error::InvalidInput { .. } => true,
            Error::Stage { source, .. } => source.is_input_error(),
            _ => false,
        }
    }
}
