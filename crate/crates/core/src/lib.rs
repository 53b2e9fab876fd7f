//! Near-lossless compression of univariate time series.
//!
//! The codec works on fixed-length blocks of samples:
//!
//! 1. [`quantizer`] rounds samples to a chosen number of decimal digits
//!    (or keeps them exact) and stores them as scaled integers.
//! 2. [`transform`] replaces each block by deviations from its mode, or by
//!    successive differences when the mode is too rare, then drops zeros and
//!    records their positions in an [`IfzBitmap`].
//! 3. The resulting integers are zigzag/varint serialized ([`varint`]) and
//!    passed through one of three [`entropy`] coders.
//!
//! [`container`] ties the stages together behind [`compress_stream`] and
//! [`decompress_stream`] and defines the on-disk format.

pub mod block;
pub mod container;
pub mod entropy;
pub mod error;
pub mod ifz;
pub mod quantizer;
pub mod transform;
pub mod varint;

pub use block::{Branch, MethodVersion, QuantizedBlock, SignalBlock, TransformedBlock};
pub use container::{
    compress_codes, compress_decimal, compress_stream, compute_metrics, decompress_stream, CodecConfig,
    CompressedStream, DecodedStream, RunMetrics, Scale, StreamHeader,
};
pub use entropy::{BitStream, EntropyCoderId};
pub use error::{Error, Result};
pub use ifz::{ifz_expand, ifz_pack, IfzBitmap};
pub use quantizer::{dequantize, quantize, QuantizerConfig};
pub use transform::{
    compute_mode, detect_branch_v2, diff_encode, inverse_transform, transform_block, ModeStat, TransformConfig,
};
pub use varint::{varint_read, varint_write, zigzag_decode, zigzag_encode};
