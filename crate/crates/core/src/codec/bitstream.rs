//! Bit-granular writer and reader.
//!
//! Bits are packed most-significant-first within each byte. The writer keeps
//! an exact bit count; zero padding is only added by [`BitWriter::finish`].

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitWriter {
    bytes: Vec<u8>,
    bit_len: usize,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bytes: usize) -> Self {
        Self {
            bytes: Vec::with_capacity(bytes),
            bit_len: 0,
        }
    }

    /// Number of bits written so far.
    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    pub fn write_bit(&mut self, bit: bool) {
        let offset = self.bit_len % 8;
        if offset == 0 {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 0x80 >> offset;
        }
        self.bit_len += 1;
    }

    /// Writes the low `count` bits of `value`, most significant first.
    pub fn write_bits(&mut self, value: u64, count: u32) {
        debug_assert!(count <= 64);
        for i in (0..count).rev() {
            self.write_bit((value >> i) & 1 == 1);
        }
    }

    pub fn write_bytes(&mut self, bytes: &[u8]) {
        if self.bit_len.is_multiple_of(8) {
            self.bytes.extend_from_slice(bytes);
            self.bit_len += bytes.len() * 8;
        } else {
            for &b in bytes {
                self.write_bits(u64::from(b), 8);
            }
        }
    }

    /// Pads with zero bits to the next byte boundary and returns the bytes.
    pub fn finish(self) -> Vec<u8> {
        self.bytes
    }

    /// Borrow the bytes written so far; a partial last byte is zero-padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    cursor: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, cursor: 0 }
    }

    /// Current read position in bits.
    pub fn position(&self) -> usize {
        self.cursor
    }

    pub fn remaining_bits(&self) -> usize {
        self.bytes.len() * 8 - self.cursor
    }

    pub fn read_bit(&mut self, what: &'static str) -> Result<bool> {
        let byte = *self
            .bytes
            .get(self.cursor / 8)
            .ok_or(Error::Truncated(what))?;
        let bit = byte & (0x80 >> (self.cursor % 8)) != 0;
        self.cursor += 1;
        Ok(bit)
    }

    pub fn read_bits(&mut self, count: u32, what: &'static str) -> Result<u64> {
        debug_assert!(count <= 64);
        if self.remaining_bits() < count as usize {
            return Err(Error::Truncated(what));
        }
        let mut value = 0u64;
        for _ in 0..count {
            value = (value << 1) | u64::from(self.read_bit(what)?);
        }
        Ok(value)
    }

    pub fn read_bytes<const N: usize>(&mut self, what: &'static str) -> Result<[u8; N]> {
        if self.remaining_bits() < N * 8 {
            return Err(Error::Truncated(what));
        }
        let mut out = [0u8; N];
        if self.cursor.is_multiple_of(8) {
            let start = self.cursor / 8;
            out.copy_from_slice(&self.bytes[start..start + N]);
            self.cursor += N * 8;
        } else {
            for b in &mut out {
                *b = self.read_bits(8, what)? as u8;
            }
        }
        Ok(out)
    }
}
