//! Scalar quantization, Zigzag mappings, delta indexing and chunked Varint.
//!
//! Varint layout: a value is cut into `l`-bit chunks, least significant chunk
//! first. Each chunk is written as one continuation flag (1 = more chunks
//! follow) followed by its `l` payload bits, most significant first.

mod bitstream;

pub use bitstream::{BitReader, BitWriter};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Payload bits per Varint chunk, in `1..=32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChunkLength(u8);

impl ChunkLength {
    pub const MAX: u8 = 32;

    pub fn new(bits: u8) -> Result<Self> {
        if (1..=Self::MAX).contains(&bits) {
            Ok(Self(bits))
        } else {
            Err(Error::InvalidArgument(format!(
                "chunk length must be in 1..=32, got {bits}"
            )))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl Default for ChunkLength {
    fn default() -> Self {
        Self(2)
    }
}

/// Half-width of a quantization cell. Values are snapped to the nearest
/// multiple of `2 * step`, so the reconstruction error is at most `step`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct QuantStep(f64);

impl QuantStep {
    pub fn new(step: f64) -> Result<Self> {
        if step.is_finite() && step > 0.0 {
            Ok(Self(step))
        } else {
            Err(Error::InvalidArgument(format!(
                "quantization step must be finite and positive, got {step}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Width of one quantization cell.
    pub fn cell(self) -> f64 {
        2.0 * self.0
    }
}

/// Index of the multiple of `2 * step` nearest to `x`, rounding half away from zero.
pub fn quantize(x: f64, step: QuantStep) -> Result<i64> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("cannot quantize {x}")));
    }
    let q = (x / step.cell()).round();
    // i64::MAX as f64 rounds up to 2^63, so the upper bound is exclusive
    if q >= -(i64::MIN as f64) || q < i64::MIN as f64 {
        return Err(Error::Range(format!(
            "{x} with step {} does not fit a 64-bit index",
            step.get()
        )));
    }
    Ok(q as i64)
}

pub fn dequantize(q: i64, step: QuantStep) -> f64 {
    q as f64 * step.cell()
}

/// Classic Zigzag: `n >= 0 -> 2n`, `n < 0 -> 2|n| - 1`. Total on `i64`.
pub fn zigzag_map(n: i64) -> u64 {
    ((n << 1) ^ (n >> 63)) as u64
}

pub fn zigzag_unmap(u: u64) -> i64 {
    ((u >> 1) as i64) ^ -((u & 1) as i64)
}

/// Enhanced Zigzag: `n >= 0 -> 2n + 1`, `n < 0 -> 2|n|`. Never returns zero.
pub fn enhanced_zigzag_map(n: i64) -> Result<u64> {
    if n >= 0 {
        Ok(2 * n as u64 + 1)
    } else if n == i64::MIN {
        Err(Error::Range(format!("{n} has no enhanced Zigzag code")))
    } else {
        Ok(2 * n.unsigned_abs())
    }
}

pub fn enhanced_zigzag_unmap(u: u64) -> Result<i64> {
    if u == 0 {
        return Err(Error::Corrupt("enhanced Zigzag code 0 is unused".into()));
    }
    if u & 1 == 1 {
        Ok((u >> 1) as i64)
    } else {
        Ok(-((u >> 1) as i64))
    }
}

/// Number of chunks Varint needs for `u`.
fn chunk_count(u: u64, l: ChunkLength) -> u32 {
    let bits = (64 - u.leading_zeros()).max(1);
    bits.div_ceil(u32::from(l.get()))
}

/// Encoded length in bits of `varint_write(u, l, omit_final_bit)`.
pub fn varint_bit_len(u: u64, l: ChunkLength, omit_final_bit: bool) -> usize {
    let bits = chunk_count(u, l) as usize * (usize::from(l.get()) + 1);
    if omit_final_bit {
        bits - 1
    } else {
        bits
    }
}

/// Writes `u` as a chunked Varint.
///
/// With `omit_final_bit` the payload of the final chunk, which must be the
/// single bit `1`, is left out. That requires `l == 1` and `u >= 1`.
pub fn varint_write(
    out: &mut BitWriter,
    u: u64,
    l: ChunkLength,
    omit_final_bit: bool,
) -> Result<()> {
    if omit_final_bit && (l.get() != 1 || u == 0) {
        return Err(Error::InvalidArgument(format!(
            "final-bit omission needs chunk length 1 and a nonzero value (l={}, u={u})",
            l.get()
        )));
    }
    let width = u32::from(l.get());
    let mask = if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    };
    let chunks = chunk_count(u, l);
    for i in 0..chunks {
        let last = i + 1 == chunks;
        out.write_bit(!last);
        if last && omit_final_bit {
            break;
        }
        let payload = u.checked_shr(i * width).unwrap_or(0) & mask;
        out.write_bits(payload, width);
    }
    Ok(())
}

pub fn varint_read(input: &mut BitReader<'_>, l: ChunkLength, omit_final_bit: bool) -> Result<u64> {
    let width = u32::from(l.get());
    let mut value = 0u64;
    let mut shift = 0u32;
    loop {
        let more = input.read_bit("varint flag")?;
        let payload = if !more && omit_final_bit {
            1
        } else {
            input.read_bits(width, "varint payload")?
        };
        if payload != 0 {
            if shift >= 64 || (payload << shift) >> shift != payload {
                return Err(Error::Corrupt("varint exceeds 64 bits".into()));
            }
            value |= payload << shift;
        }
        if !more {
            return Ok(value);
        }
        shift += width;
        if shift >= 64 + width {
            return Err(Error::Corrupt("varint exceeds 64 bits".into()));
        }
    }
}

/// Signed integer through enhanced Zigzag then Varint; the final payload bit
/// is dropped exactly when `l == 1`.
pub fn write_signed(out: &mut BitWriter, n: i64, l: ChunkLength) -> Result<()> {
    varint_write(out, enhanced_zigzag_map(n)?, l, l.get() == 1)
}

pub fn read_signed(input: &mut BitReader<'_>, l: ChunkLength) -> Result<i64> {
    enhanced_zigzag_unmap(varint_read(input, l, l.get() == 1)?)
}

/// `Y_0 = Q_0`, `Y_n = Q_n - Q_{n-1}` (wrapping, so decoding is always exact).
pub fn delta_index_encode(values: &[i64]) -> Vec<i64> {
    let mut prev = 0i64;
    values
        .iter()
        .map(|&q| {
            let d = q.wrapping_sub(prev);
            prev = q;
            d
        })
        .collect()
}

pub fn delta_index_decode(deltas: &[i64]) -> Vec<i64> {
    let mut acc = 0i64;
    deltas
        .iter()
        .map(|&d| {
            acc = acc.wrapping_add(d);
            acc
        })
        .collect()
}
