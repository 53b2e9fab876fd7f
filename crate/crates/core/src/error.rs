use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} nonzero values for the indicator bitmap, found {found}")]
    CountMismatch { expected: usize, found: usize },

    #[error("varint truncated at byte {offset}")]
    Truncated { offset: usize },

    #[error("overlong varint at byte {offset}")]
    Overlong { offset: usize },

    #[error("sample is not finite")]
    NonFiniteSample,

    #[error("sample does not fit a 64-bit integer at {digits} decimal digits")]
    OverflowAtScale { digits: u8 },

    #[error("unparseable decimal token {0:?}")]
    BadDecimal(String),

    #[error("lossless input needs {found} fractional digits, at most {max} are supported")]
    TooManyDigits { found: usize, max: u8 },

    #[error("block is empty")]
    EmptyBlock,

    #[error("block has {found} samples, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("block flag {0} is neither 0 nor 1")]
    BadFlag(i64),

    #[error("block cannot be encoded unambiguously (mode at the 64-bit minimum)")]
    Unresolvable,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("corrupt stream: {0}")]
    CorruptStream(String),

    #[error("bad magic {0:?}")]
    BadMagic([u8; 4]),

    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),

    #[error("invalid header: {0}")]
    InvalidHeader(String),

    #[error("input stream is empty")]
    EmptyInput,

    #[error("sample {index}: {source}")]
    AtSample {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn corrupt(msg: impl Into<String>) -> Self {
        Error::CorruptStream(msg.into())
    }

    pub(crate) fn at_sample(self, index: usize) -> Self {
        Error::AtSample {
            index,
            source: Box::new(self),
        }
    }

    /// True for errors that mean the compressed bytes are damaged or not ours.
    pub fn is_format_error(&self) -> bool {
        matches!(
            self,
            Error::CountMismatch { .. }
                | Error::Truncated { .. }
                | Error::Overlong { .. }
                | Error::BadFlag(_)
                | Error::CorruptStream(_)
                | Error::BadMagic(_)
                | Error::UnsupportedVersion(_)
                | Error::InvalidHeader(_)
        )
    }
}
