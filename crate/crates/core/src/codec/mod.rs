//! Integer and document-number codecs.

mod baseline;
mod bits;
mod dgap;
mod digit_run;
mod docid;
mod nibble;

pub use baseline::{
    binary_bits, binary_width, gamma_decode, gamma_encode, gamma_len, read_gamma, write_gamma,
};
pub use bits::{BitReader, BitString, BitWriter};
pub use dgap::{dgap_decode, dgap_encode, GapList};
pub use digit_run::{
    compress_docid, decompress_docid, find_runs, is_compressible, run_code_decode, run_code_encode,
    vlq_bits, vlq_len, CompressedDocId, DigitRun, Symbol, MIN_RUN,
};
pub use docid::{DocId, MAX_DIGITS};
pub use nibble::{nibble_decode, nibble_decode_prefix, nibble_encode, MAX_NIBBLE_SYMBOLS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("invalid document number {0:?}")]
    InvalidDocId(String),
    #[error("run of length {0} is too short for a run code (minimum {MIN_RUN})")]
    RunTooShort(u64),
    #[error("malformed compressed code: {0}")]
    MalformedCode(String),
    #[error("malformed stream: {0}")]
    MalformedStream(String),
    #[error("{0} symbols exceed the nibble encoding capacity of {MAX_NIBBLE_SYMBOLS}")]
    Capacity(usize),
    #[error("value must be at least 1")]
    Zero,
    #[error("document numbers must be strictly increasing (position {0})")]
    NotIncreasing(usize),
    #[error("gap at position {0} is zero")]
    ZeroGap(usize),
    #[error("empty input")]
    Empty,
    #[error("arithmetic overflow")]
    Overflow,
}
