use thiserror::Error;

#[derive(Debug, Error)]
pub enum GallaiError {
    #[error("invalid palette: {0}")]
    Palette(String),

    #[error("unknown color {0:?}")]
    UnknownColor(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid vertex set: {0}")]
    VertexSet(String),

    #[error("input is not Gallai: rainbow triangle on {0:?}")]
    NotGallai([usize; 3]),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("search bounds exceeded: {0}")]
    Bounds(String),
}

pub type Result<T, E = GallaiError> = std::result::Result<T, E>;
