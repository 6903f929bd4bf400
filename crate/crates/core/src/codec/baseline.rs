//! Baseline integer codes: Elias gamma and minimal-width binary.

use super::{BitReader, BitString, BitWriter, CodecError};

/// Bit length of `n` (0 for 0).
pub fn binary_width(n: u64) -> u32 {
    64 - n.leading_zeros()
}

/// Minimal-width binary representation of `n`.
pub fn binary_bits(n: u64) -> Result<BitString, CodecError> {
    if n == 0 {
        return Err(CodecError::Zero);
    }
    let mut bits = BitString::new();
    bits.push_bits(n, binary_width(n));
    Ok(bits)
}

/// Length of the gamma code for `n >= 1`: `2 * floor(log2 n) + 1`.
pub fn gamma_len(n: u64) -> u32 {
    2 * (binary_width(n) - 1) + 1
}

/// Elias gamma: `floor(log2 n)` zeros, then `n` in binary (its leading 1
/// terminates the prefix, followed by the low-order bits).
pub fn gamma_encode(n: u64) -> Result<BitString, CodecError> {
    if n == 0 {
        return Err(CodecError::Zero);
    }
    let width = binary_width(n);
    let mut bits = BitString::new();
    bits.push_bits(0, width - 1);
    bits.push_bits(n, width);
    Ok(bits)
}

pub fn gamma_decode(bits: &BitString) -> Result<u64, CodecError> {
    let mut it = bits.iter();
    let mut zeros = 0u32;
    loop {
        match it.next() {
            Some(false) => zeros += 1,
            Some(true) => break,
            None => return Err(CodecError::MalformedStream("truncated gamma prefix".into())),
        }
        if zeros > 63 {
            return Err(CodecError::MalformedStream("gamma prefix too long".into()));
        }
    }
    let mut n = 1u64;
    for _ in 0..zeros {
        let bit = it
            .next()
            .ok_or_else(|| CodecError::MalformedStream("truncated gamma body".into()))?;
        n = (n << 1) | u64::from(bit);
    }
    if it.next().is_some() {
        return Err(CodecError::MalformedStream(
            "trailing bits after gamma code".into(),
        ));
    }
    Ok(n)
}

pub fn write_gamma(w: &mut BitWriter, n: u64) -> Result<(), CodecError> {
    if n == 0 {
        return Err(CodecError::Zero);
    }
    let width = binary_width(n);
    w.write_bits(0, width - 1);
    w.write_bits(n, width);
    Ok(())
}

pub fn read_gamma(r: &mut BitReader<'_>) -> Result<u64, CodecError> {
    let mut zeros = 0u32;
    while !r.read_bit()? {
        zeros += 1;
        if zeros > 63 {
            return Err(CodecError::MalformedStream("gamma prefix too long".into()));
        }
    }
    let low = r.read_bits(zeros)?;
    Ok((1u64 << zeros) | low)
}
