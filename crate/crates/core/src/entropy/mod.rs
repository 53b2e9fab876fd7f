//! Lossless entropy back-ends over the serialized symbol bytes.

pub mod adaptive_huffman;
pub mod arithmetic;
pub mod bitio;
pub mod huffman;
pub mod model;

pub use bitio::{BitReader, BitStream, BitWriter};
pub use model::FrequencyModel;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntropyCoderId {
    StaticHuffman = 0,
    AdaptiveHuffman = 1,
    #[default]
    AdaptiveArithmetic = 2,
}

impl EntropyCoderId {
    pub const ALL: [EntropyCoderId; 3] = [
        EntropyCoderId::StaticHuffman,
        EntropyCoderId::AdaptiveHuffman,
        EntropyCoderId::AdaptiveArithmetic,
    ];

    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn from_u8(id: u8) -> Result<Self> {
        match id {
            0 => Ok(EntropyCoderId::StaticHuffman),
            1 => Ok(EntropyCoderId::AdaptiveHuffman),
            2 => Ok(EntropyCoderId::AdaptiveArithmetic),
            other => Err(Error::InvalidHeader(format!("unknown entropy coder id {other}"))),
        }
    }

    /// Name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            EntropyCoderId::StaticHuffman => "static",
            EntropyCoderId::AdaptiveHuffman => "adaptive-huffman",
            EntropyCoderId::AdaptiveArithmetic => "arithmetic",
        }
    }
}

impl std::fmt::Display for EntropyCoderId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for EntropyCoderId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "static" | "static-huffman" | "huffman" => Ok(EntropyCoderId::StaticHuffman),
            "adaptive-huffman" | "fgk" => Ok(EntropyCoderId::AdaptiveHuffman),
            "arithmetic" | "adaptive-arithmetic" => Ok(EntropyCoderId::AdaptiveArithmetic),
            other => Err(Error::InvalidConfig(format!("unknown entropy coder {other:?}"))),
        }
    }
}

pub fn encode(payload: &[u8], coder: EntropyCoderId) -> BitStream {
    assert!(
        (payload.len() as u64) < 1 << 32,
        "entropy payloads are limited to 4 GiB"
    );
    match coder {
        EntropyCoderId::StaticHuffman => huffman::encode(payload),
        EntropyCoderId::AdaptiveHuffman => adaptive_huffman::encode(payload),
        EntropyCoderId::AdaptiveArithmetic => arithmetic::encode(payload),
    }
}

pub fn decode(stream: &BitStream, coder: EntropyCoderId) -> Result<Vec<u8>> {
    match coder {
        EntropyCoderId::StaticHuffman => huffman::decode(stream),
        EntropyCoderId::AdaptiveHuffman => adaptive_huffman::decode(stream),
        EntropyCoderId::AdaptiveArithmetic => arithmetic::decode(stream),
    }
}
