//! Storable form of a compressed document number: one symbol-count byte,
//! then one 4-bit nibble per symbol, high nibble first, zero padded.

use super::{CodecError, CompressedDocId, Symbol};

pub const MAX_NIBBLE_SYMBOLS: usize = u8::MAX as usize;

pub fn nibble_encode(code: &CompressedDocId) -> Result<Vec<u8>, CodecError> {
    let symbols = code.symbols();
    if symbols.len() > MAX_NIBBLE_SYMBOLS {
        return Err(CodecError::Capacity(symbols.len()));
    }
    let mut out = Vec::with_capacity(1 + symbols.len().div_ceil(2));
    out.push(symbols.len() as u8);
    for pair in symbols.chunks(2) {
        let hi = pair[0].value() << 4;
        let lo = pair.get(1).map_or(0, |s| s.value());
        out.push(hi | lo);
    }
    Ok(out)
}

/// Decodes a buffer holding exactly one encoded value.
pub fn nibble_decode(bytes: &[u8]) -> Result<CompressedDocId, CodecError> {
    let (code, used) = nibble_decode_prefix(bytes)?;
    if used != bytes.len() {
        return Err(CodecError::MalformedStream(format!(
            "{} trailing bytes",
            bytes.len() - used
        )));
    }
    Ok(code)
}

/// Decodes one value from the front of `bytes`, returning it with the number
/// of bytes consumed.
pub fn nibble_decode_prefix(bytes: &[u8]) -> Result<(CompressedDocId, usize), CodecError> {
    let Some((&count, rest)) = bytes.split_first() else {
        return Err(CodecError::MalformedStream("missing symbol count".into()));
    };
    let count = count as usize;
    if count == 0 {
        return Err(CodecError::MalformedStream("zero symbol count".into()));
    }
    let packed = count.div_ceil(2);
    let body = rest.get(..packed).ok_or_else(|| {
        CodecError::MalformedStream(format!("truncated: need {packed} bytes of nibbles"))
    })?;
    if count % 2 == 1 && body[packed - 1] & 0x0F != 0 {
        return Err(CodecError::MalformedStream("nonzero padding nibble".into()));
    }
    let symbols: Vec<Symbol> = body
        .iter()
        .flat_map(|b| [b >> 4, b & 0x0F])
        .take(count)
        .map(|v| Symbol::from_value(v).expect("nibble < 16"))
        .collect();
    let code = CompressedDocId::from_symbols(symbols)
        .map_err(|e| CodecError::MalformedStream(e.to_string()))?;
    Ok((code, 1 + packed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> CompressedDocId {
        s.parse().unwrap()
    }

    #[test]
    fn packs_nibbles() {
        // 5 = 0101, A = 1010; 2 = 0010, A = 1010, 3 = 0011 + pad
        assert_eq!(nibble_encode(&code("5A")).unwrap(), [0x02, 0x5A]);
        assert_eq!(nibble_encode(&code("9")).unwrap(), [0x01, 0x90]);
        assert_eq!(nibble_encode(&code("2A3")).unwrap(), [0x03, 0x2A, 0x30]);
    }

    #[test]
    fn unpacks_nibbles() {
        assert_eq!(nibble_decode(&[0x02, 0x5A]).unwrap(), code("5A"));
        assert_eq!(nibble_decode(&[0x01, 0x90]).unwrap(), code("9"));
        assert_eq!(nibble_decode(&[0x03, 0x2A, 0x30]).unwrap(), code("2A3"));
    }

    #[test]
    fn rejects_bad_streams() {
        // leading letter
        assert!(nibble_decode(&[0x01, 0xA0]).is_err());
        // truncated
        assert!(nibble_decode(&[0x03, 0x2A]).is_err());
        assert!(nibble_decode(&[]).is_err());
        assert!(nibble_decode(&[0x00]).is_err());
        // padding
        assert!(nibble_decode(&[0x01, 0x91]).is_err());
        // trailing
        assert!(nibble_decode(&[0x01, 0x90, 0x00]).is_err());
        // non-canonical: five literal 1s
        assert!(nibble_decode(&[0x05, 0x11, 0x11, 0x10]).is_err());
    }

    #[test]
    fn prefix_reports_consumed_bytes() {
        let (c, used) = nibble_decode_prefix(&[0x03, 0x2A, 0x30, 0xFF]).unwrap();
        assert_eq!(c, code("2A3"));
        assert_eq!(used, 3);
    }
}
