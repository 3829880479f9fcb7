use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Diagram(#[from] diagram::DiagramError),
    #[error(transparent)]
    Laurent(#[from] laurent::LaurentError),
    #[error(transparent)]
    Conway(#[from] conway::ConwayError),
    #[error(transparent)]
    Cover(#[from] cover::CoverError),
    #[error(transparent)]
    Eta(#[from] eta::EtaError),
    #[error(transparent)]
    Chirality(#[from] chirality::ChiralityError),
    #[error("eta_plus: {0}")]
    EtaPlus(String),
    #[error("{0}")]
    Unsupported(String),
}
