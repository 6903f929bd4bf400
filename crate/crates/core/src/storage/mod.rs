//! Persistence: the `RLII` index file format and corpus ingestion.

mod corpus;
mod format;

use std::fmt;
use std::io;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::codec::CodecError;

pub use corpus::{ingest_corpus, parse_tsv, CorpusMode};
pub use format::{
    decode_index, encode_index, read_header, read_index, read_index_file, write_index,
    write_index_file, IndexFileHeader, Section, SectionRange, FORMAT_VERSION, HEADER_LEN, MAGIC,
};

/// How document numbers inside posting lists are stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PostingCodec {
    /// Every value at the collection-wide width of the largest document number.
    BinaryFixed,
    /// Elias gamma bit stream, padded to a byte per list.
    Gamma,
    /// Digit-run compressed form, nibble packed.
    #[default]
    DigitRunNibble,
}

impl PostingCodec {
    pub const ALL: [PostingCodec; 3] = [
        PostingCodec::BinaryFixed,
        PostingCodec::Gamma,
        PostingCodec::DigitRunNibble,
    ];

    pub fn tag(self) -> u8 {
        match self {
            PostingCodec::BinaryFixed => 0,
            PostingCodec::Gamma => 1,
            PostingCodec::DigitRunNibble => 2,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.tag() == tag)
    }

    pub fn name(self) -> &'static str {
        match self {
            PostingCodec::BinaryFixed => "binary",
            PostingCodec::Gamma => "gamma",
            PostingCodec::DigitRunNibble => "rle",
        }
    }
}

impl fmt::Display for PostingCodec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PostingCodec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown codec {s:?} (expected binary, gamma or rle)"))
    }
}

/// A posting codec, optionally applied to d-gaps instead of raw numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct CodecKind {
    pub codec: PostingCodec,
    pub gap_transform: bool,
}

impl CodecKind {
    pub fn new(codec: PostingCodec, gap_transform: bool) -> Self {
        CodecKind {
            codec,
            gap_transform,
        }
    }

    /// Every codec with and without the gap transform.
    pub fn all() -> impl Iterator<Item = CodecKind> {
        PostingCodec::ALL
            .into_iter()
            .flat_map(|c| [CodecKind::new(c, false), CodecKind::new(c, true)])
    }
}

impl fmt::Display for CodecKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.codec)?;
        if self.gap_transform {
            f.write_str("+dgap")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum StorageError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("{path}: {source}")]
    File { path: PathBuf, source: io::Error },
    #[error("bad magic {0:?}, not an index file")]
    BadMagic([u8; 4]),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u16),
    #[error("unknown codec tag {0}")]
    UnknownCodec(u8),
    #[error("corrupt header: {0}")]
    CorruptHeader(String),
    #[error("corrupt {section} section: {reason}")]
    CorruptSection { section: Section, reason: String },
    #[error("cannot decode {section} section: {source}")]
    CodecDecode {
        section: Section,
        #[source]
        source: CodecError,
    },
    #[error("value exceeds codec capacity: {0}")]
    Capacity(String),
    #[error("corpus line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("corpus line {line}: duplicate document number {docid}")]
    DuplicateDocId { line: usize, docid: String },
    #[error("{path}: not valid UTF-8")]
    NotUtf8 { path: PathBuf },
}
