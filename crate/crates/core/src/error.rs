use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid parabolic subgroup: {0}")]
    InvalidParabolic(String),

    #[error("enumeration of {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },

    #[error("n = {n} is outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },

    #[error("degenerate: all coordinates equal, the spherical coordinate is undefined")]
    Degenerate,

    #[error("malformed coordinates: {0}")]
    MalformedCoordinates(String),

    #[error("bar {index}: birth {birth} must be finite and strictly smaller than death {death}")]
    InvalidBar {
        index: usize,
        birth: f64,
        death: f64,
    },

    #[error("barcode has no bars")]
    EmptyBarcode,

    #[error("sigma_B undefined for a non-strict barcode; use the double coset instead")]
    NotStrict,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn ensure_same_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::SizeMismatch { left, right })
    }
}
