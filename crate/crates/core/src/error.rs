use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong between reading a corpus and writing analysis artifacts.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    MalformedRecord { line: usize, message: String },

    #[error("duplicate paper id `{0}`")]
    DuplicatePaper(String),

    #[error("conflicting definitions for field `{0}`")]
    ConflictingField(String),

    #[error("field hierarchy contains a cycle through `{0}`")]
    FieldCycle(String),

    #[error("unknown author `{0}`")]
    UnknownAuthor(String),

    #[error("unknown field `{0}`")]
    UnknownField(String),

    #[error("unknown paper `{0}`")]
    UnknownPaper(String),

    #[error("no edge between `{src}` and `{dst}`{}", suggestion_suffix(.suggestions))]
    UnknownEdge {
        src: String,
        dst: String,
        suggestions: Vec<String>,
    },

    #[error("graph has no edges")]
    NoEdges,

    #[error("graph has fewer than {required} nodes")]
    TooFewNodes { required: usize },

    #[error("power iteration did not converge after {iterations} iterations (last residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("graph was built without witness retention")]
    WitnessesUnavailable,

    #[error("no field at level {0} is present in the corpus")]
    LevelAbsent(u32),

    #[error("pre and post periods overlap: {0}")]
    OverlappingSplit(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("missing artifact {0}")]
    MissingArtifact(PathBuf),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn suggestion_suffix(suggestions: &[String]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        format!("; nearest edges: {}", suggestions.join(", "))
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
