use thiserror::Error;

/// Errors raised while loading or assembling knowledge graphs.
#[derive(Debug, Error)]
pub enum KgError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("relation `{relation}` used as both an object-property and a data-property")]
    RelationKindConflict { relation: String },

    #[error("label for `{id}` is empty")]
    EmptyLabel { id: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
