use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] qcorr_core::Error),

    #[error("invalid scenario: {0}")]
    Spec(String),

    #[error("expected table `{table}` has {got} cells, the outcome grid has {want}")]
    GoldenShape {
        table: String,
        got: usize,
        want: usize,
    },

    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
