use std::fmt;
use std::num::NonZeroU64;
use std::str::FromStr;

use super::CodecError;

/// Longest accepted decimal form; every 19-digit number fits in a `u64`.
pub const MAX_DIGITS: usize = 19;

const LIMIT: u64 = 10_000_000_000_000_000_000;

/// A document number: a positive integer with at most [`MAX_DIGITS`] decimal
/// digits. Its textual form is `[1-9][0-9]*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DocId(NonZeroU64);

impl DocId {
    pub fn new(value: u64) -> Result<Self, CodecError> {
        if value >= LIMIT {
            return Err(CodecError::InvalidDocId(value.to_string()));
        }
        NonZeroU64::new(value)
            .map(DocId)
            .ok_or_else(|| CodecError::InvalidDocId("0".into()))
    }

    pub fn get(self) -> u64 {
        self.0.get()
    }

    /// Decimal digits as ASCII values `0..=9`, most significant first.
    pub fn digits(self) -> Vec<u8> {
        self.to_string().bytes().map(|b| b - b'0').collect()
    }
}

impl FromStr for DocId {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let ok = !bytes.is_empty()
            && bytes.len() <= MAX_DIGITS
            && bytes[0] != b'0'
            && bytes.iter().all(u8::is_ascii_digit);
        if !ok {
            return Err(CodecError::InvalidDocId(s.to_string()));
        }
        s.parse::<u64>()
            .map_err(|_| CodecError::InvalidDocId(s.to_string()))
            .and_then(DocId::new)
    }
}

impl fmt::Display for DocId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<DocId> for u64 {
    fn from(d: DocId) -> u64 {
        d.get()
    }
}
