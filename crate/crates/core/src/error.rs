use std::path::PathBuf;

/// Crate-wide error type. Every failure mode named by an operation contract
/// gets its own variant so callers (and the CLI) can tell them apart.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("bad magic: not a .vten file")]
    BadMagic,

    #[error("unsupported .vten version {0}")]
    UnsupportedVersion(u16),

    #[error("truncated payload: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: u64, found: u64 },

    #[error("dimension overflow: {0}")]
    DimensionOverflow(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("cannot truncate via pad: target {target} < {frames} frames")]
    PadWouldTruncate { target: usize, frames: usize },

    #[error("downsample target {target} invalid for {frames} frames")]
    BadDownsampleTarget { target: usize, frames: usize },

    #[error("even dimensions required, got {0}x{1}x{2}")]
    EvenDimensionsRequired(usize, usize, usize),

    #[error("matrix condition number {cond:.3e} exceeds bound {bound:.3e}")]
    IllConditioned { cond: f64, bound: f64 },

    #[error("singular matrix in transform spec")]
    SingularMatrix,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("invalid manifest: {0}")]
    InvalidManifest(String),

    #[error("manifest already contains poisoned records")]
    AlreadyPoisoned,

    #[error("no source samples outside the target class")]
    NoSourceSamples,

    #[error("empty manifest")]
    EmptyManifest,

    #[error("missing sample file: {0}")]
    MissingSample(PathBuf),

    #[error("training diverged (non-finite loss) at epoch {0}")]
    Divergence(usize),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("real-valued tensor required for {0}")]
    RealTensorRequired(&'static str),

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
