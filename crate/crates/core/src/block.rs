//! Coding of one block of one spatial dimension.
//!
//! A block of `m + 1` samples yields `m` velocities. Subtracting the mean
//! velocity leaves a zero-sum array whose DC coefficient vanishes, so only
//! the AC coefficients `C_1..C_{K-1}` are quantized and kept, with
//! `K = max(1, ceil(m * r_ret))`. Trailing zero indices are dropped.

use crate::codec::{dequantize, quantize, QuantStep};
use crate::error::{Error, Result};
use crate::transform::Dct;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockParams {
    /// Frequency precision.
    pub eps_f: QuantStep,
    /// Fraction of low-frequency coefficients considered for storage.
    pub r_ret: f64,
    /// Nominal velocities per block.
    pub block_size: usize,
}

impl BlockParams {
    pub fn new(eps_f: QuantStep, r_ret: f64, block_size: usize) -> Result<Self> {
        if !(r_ret > 0.0 && r_ret <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "retention rate must be in (0, 1], got {r_ret}"
            )));
        }
        if block_size < 2 {
            return Err(Error::InvalidArgument(format!(
                "block size must be at least 2, got {block_size}"
            )));
        }
        Ok(Self {
            eps_f,
            r_ret,
            block_size,
        })
    }
}

/// Quantized AC spectrum of one block. `coeffs[k - 1]` holds `C_k`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EncodedBlock {
    pub coeffs: Vec<i64>,
}

impl EncodedBlock {
    /// Number of retained coefficients.
    pub fn c_f(&self) -> usize {
        self.coeffs.len()
    }
}

/// Maximum number of AC coefficients kept for a block of `m` velocities.
pub fn ac_budget(m: usize, r_ret: f64) -> usize {
    // the slack keeps products like 100 * 0.04 from rounding up a step
    let k = ((m as f64 * r_ret) - 1e-9).ceil().max(1.0) as usize;
    k.min(m.max(1)) - 1
}

/// Zero-centered velocities of a block: `V_i = (S_{i+1} - S_i) - (S_m - S_0) / m`.
pub fn centered_velocities(samples: &[f64]) -> Result<Vec<f64>> {
    let m = samples
        .len()
        .checked_sub(1)
        .filter(|&m| m > 0)
        .ok_or(Error::EmptyBlock)?;
    let avg = (samples[m] - samples[0]) / m as f64;
    Ok(samples.windows(2).map(|w| (w[1] - w[0]) - avg).collect())
}

pub fn block_compress_with(
    samples: &[f64],
    params: &BlockParams,
    dct: &Dct,
) -> Result<EncodedBlock> {
    let velocities = centered_velocities(samples)?;
    let m = velocities.len();
    let budget = ac_budget(m, params.r_ret);
    if budget == 0 {
        return Ok(EncodedBlock::default());
    }
    let spectrum = dct.forward(&velocities);
    let mut coeffs = spectrum[1..=budget]
        .iter()
        .map(|&c| quantize(c, params.eps_f))
        .collect::<Result<Vec<_>>>()?;
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(EncodedBlock { coeffs })
}

pub fn block_compress(samples: &[f64], params: &BlockParams) -> Result<EncodedBlock> {
    let m = samples.len().saturating_sub(1).max(1);
    block_compress_with(samples, params, &Dct::new(m))
}

/// Rebuilds `m + 1` samples running from `start` to `end`. The last sample is
/// `end` exactly.
pub fn block_decompress_with(
    block: &EncodedBlock,
    m: usize,
    start: f64,
    end: f64,
    eps_f: QuantStep,
    dct: &Dct,
) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::EmptyBlock);
    }
    if block.c_f() >= m {
        return Err(Error::MalformedBlock(format!(
            "{} coefficients do not fit a block of {m} velocities",
            block.c_f()
        )));
    }
    let avg = (end - start) / m as f64;
    let mut out = Vec::with_capacity(m + 1);
    out.push(start);
    if block.coeffs.is_empty() {
        out.extend((1..m).map(|i| start + avg * i as f64));
    } else {
        let mut spectrum = vec![0.0; m];
        for (slot, &q) in spectrum[1..].iter_mut().zip(&block.coeffs) {
            *slot = dequantize(q, eps_f);
        }
        let velocities = dct.inverse(&spectrum);
        let mut acc = start;
        for v in &velocities[..m - 1] {
            acc += v + avg;
            out.push(acc);
        }
    }
    out.push(end);
    Ok(out)
}

pub fn block_decompress(
    block: &EncodedBlock,
    m: usize,
    start: f64,
    end: f64,
    eps_f: QuantStep,
) -> Result<Vec<f64>> {
    block_decompress_with(block, m, start, end, eps_f, &Dct::new(m.max(1)))
}
