//! The digit-run codec.
//!
//! A run of `n >= MIN_RUN` identical decimal digits is written as the digit
//! followed by a letter code for `n - 1`. Letters `A..=F` stand for 4..=9;
//! larger values continue in base 6 over the same letters (`A` = 0 ... `F` = 5)
//! applied to `n - 1 - 4`, never starting with `A`. Shorter runs stay literal.

use std::fmt;
use std::str::FromStr;

use super::{BitString, CodecError, DocId, MAX_DIGITS};

/// Shortest run that is replaced by a run code.
pub const MIN_RUN: u64 = 5;

const LETTER_BASE: u64 = 6;
const FIRST_CODED_VALUE: u64 = MIN_RUN - 1;

/// One of the sixteen output symbols: a literal digit `0..=9` or a run letter `A..=F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u8);

impl Symbol {
    pub fn from_value(value: u8) -> Option<Self> {
        (value < 16).then_some(Symbol(value))
    }

    pub fn digit(d: u8) -> Option<Self> {
        (d < 10).then_some(Symbol(d))
    }

    /// Letter for a base-6 place value: 0 -> `A` ... 5 -> `F`.
    pub fn letter(place: u8) -> Option<Self> {
        (place < 6).then_some(Symbol(10 + place))
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0'..='9' => Some(Symbol(c as u8 - b'0')),
            'A'..='F' => Some(Symbol(c as u8 - b'A' + 10)),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        if self.0 < 10 {
            (b'0' + self.0) as char
        } else {
            (b'A' + self.0 - 10) as char
        }
    }

    /// Nibble value `0..=15`.
    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_letter(self) -> bool {
        self.0 >= 10
    }

    /// Width of this symbol's variable-length size-accounting code.
    pub fn code_len(self) -> u32 {
        (8 - self.0.leading_zeros()).max(1)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A maximal run of one digit inside a document number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitRun {
    pub digit: u8,
    pub len: u64,
}

/// Splits a document number into maximal runs of identical digits.
pub fn find_runs(docid: DocId) -> Vec<DigitRun> {
    runs_of(&docid.digits())
}

fn runs_of(digits: &[u8]) -> Vec<DigitRun> {
    let mut runs: Vec<DigitRun> = Vec::new();
    for &d in digits {
        match runs.last_mut() {
            Some(run) if run.digit == d => run.len += 1,
            _ => runs.push(DigitRun { digit: d, len: 1 }),
        }
    }
    runs
}

/// Letter code for a run of `run_len` digits.
pub fn run_code_encode(run_len: u64) -> Result<Vec<Symbol>, CodecError> {
    if run_len < MIN_RUN {
        return Err(CodecError::RunTooShort(run_len));
    }
    let mut rest = run_len - 1 - FIRST_CODED_VALUE;
    let mut letters = Vec::new();
    loop {
        letters.push(Symbol(10 + (rest % LETTER_BASE) as u8));
        rest /= LETTER_BASE;
        if rest == 0 {
            break;
        }
    }
    letters.reverse();
    Ok(letters)
}

/// Run length encoded by a letter group.
pub fn run_code_decode(letters: &[Symbol]) -> Result<u64, CodecError> {
    let Some(first) = letters.first() else {
        return Err(CodecError::MalformedCode("empty run code".into()));
    };
    if let Some(s) = letters.iter().find(|s| !s.is_letter()) {
        return Err(CodecError::MalformedCode(format!(
            "{s} is not a run letter"
        )));
    }
    if letters.len() > 1 && first.0 == 10 {
        return Err(CodecError::MalformedCode(
            "multi-letter run code starts with A".into(),
        ));
    }
    letters
        .iter()
        .try_fold(0u64, |acc, s| {
            acc.checked_mul(LETTER_BASE)?
                .checked_add(u64::from(s.0 - 10))
        })
        .and_then(|v| v.checked_add(FIRST_CODED_VALUE + 1))
        .ok_or_else(|| CodecError::MalformedCode("run code overflows".into()))
}

fn encode_runs(runs: &[DigitRun]) -> Vec<Symbol> {
    let mut out = Vec::new();
    for run in runs {
        let digit = Symbol(run.digit);
        if run.len >= MIN_RUN {
            out.push(digit);
            out.extend(run_code_encode(run.len).expect("run length checked"));
        } else {
            out.extend(std::iter::repeat_n(digit, run.len as usize));
        }
    }
    out
}

/// A document number in compressed form: `(digit letter*)+`, canonical.
///
/// Canonical means it is exactly what [`compress_docid`] would emit for the
/// runs it denotes: no literal run of five equal digits, no two adjacent
/// groups for the same digit, and no multi-letter code starting with `A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompressedDocId {
    symbols: Vec<Symbol>,
}

impl CompressedDocId {
    pub fn from_symbols(symbols: Vec<Symbol>) -> Result<Self, CodecError> {
        let runs = parse_groups(&symbols)?;
        if encode_runs(&runs) != symbols {
            let text: String = symbols.iter().map(|s| s.to_char()).collect();
            return Err(CodecError::MalformedCode(format!(
                "{text} is not canonical"
            )));
        }
        Ok(CompressedDocId { symbols })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    fn runs(&self) -> Vec<DigitRun> {
        parse_groups(&self.symbols).expect("validated on construction")
    }
}

/// Splits symbols into digit groups and merges neighbours with the same digit.
fn parse_groups(symbols: &[Symbol]) -> Result<Vec<DigitRun>, CodecError> {
    let Some(first) = symbols.first() else {
        return Err(CodecError::MalformedCode("empty code".into()));
    };
    if first.is_letter() {
        return Err(CodecError::MalformedCode(format!(
            "code starts with letter {first}"
        )));
    }
    let mut runs: Vec<DigitRun> = Vec::new();
    let mut i = 0;
    while i < symbols.len() {
        let digit = symbols[i].0;
        let end = symbols[i + 1..]
            .iter()
            .position(|s| !s.is_letter())
            .map_or(symbols.len(), |p| i + 1 + p);
        let letters = &symbols[i + 1..end];
        let len = if letters.is_empty() {
            1
        } else {
            run_code_decode(letters)?
        };
        match runs.last_mut() {
            Some(run) if run.digit == digit => {
                run.len = run
                    .len
                    .checked_add(len)
                    .ok_or_else(|| CodecError::MalformedCode("run overflows".into()))?;
            }
            _ => runs.push(DigitRun { digit, len }),
        }
        i = end;
    }
    Ok(runs)
}

impl FromStr for CompressedDocId {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let symbols = s
            .chars()
            .map(|c| {
                Symbol::from_char(c)
                    .ok_or_else(|| CodecError::MalformedCode(format!("{c:?} is not a symbol")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CompressedDocId::from_symbols(symbols)
    }
}

impl fmt::Display for CompressedDocId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

pub fn compress_docid(docid: DocId) -> CompressedDocId {
    CompressedDocId {
        symbols: encode_runs(&find_runs(docid)),
    }
}

/// Expands every run code back into repeated digits.
///
/// Fails when the expansion is not a valid document number (leading zero or
/// more than [`MAX_DIGITS`] digits).
pub fn decompress_docid(code: &CompressedDocId) -> Result<DocId, CodecError> {
    let runs = code.runs();
    let total = runs
        .iter()
        .try_fold(0u64, |acc, r| acc.checked_add(r.len))
        .unwrap_or(u64::MAX);
    if total > MAX_DIGITS as u64 {
        return Err(CodecError::InvalidDocId(format!(
            "{code} expands to {total} digits"
        )));
    }
    let mut text = String::with_capacity(total as usize);
    for run in runs {
        text.extend(std::iter::repeat_n(
            (b'0' + run.digit) as char,
            run.len as usize,
        ));
    }
    text.parse()
}

/// True when the document number holds a run the codec shortens.
pub fn is_compressible(docid: DocId) -> bool {
    find_runs(docid).iter().any(|r| r.len >= MIN_RUN)
}

/// Size-accounting bit string: each symbol written as its minimal binary
/// form (`0` -> `0`, `2` -> `10`, `F` -> `1111`), concatenated.
///
/// This code is not prefix-free, so it cannot be parsed back; use the nibble
/// encoding for storage.
pub fn vlq_bits(code: &CompressedDocId) -> BitString {
    let mut bits = BitString::new();
    for s in code.symbols() {
        bits.push_bits(u64::from(s.0), s.code_len());
    }
    bits
}

pub fn vlq_len(code: &CompressedDocId) -> usize {
    code.symbols().iter().map(|s| s.code_len() as usize).sum()
}
