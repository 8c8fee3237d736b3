//! Decompression and timestamp queries.
//!
//! Original timestamps are not stored in a container. Positions are recovered
//! by asking a [`Decoder`] for the timestamps of interest: the enclosing
//! sub-trajectory's uniform series is interpolated linearly, a stored
//! correction for that timestamp is added, and outliers take precedence.

use crate::block::block_decompress_with;
use crate::codec::dequantize;
use crate::container::{block_lengths, CompressedTrajectory, SubTrajectory};
use crate::error::{Error, Result};
use crate::transform::DctCache;

/// Quantized time index of `t`: nearest multiple of `eps_t`.
pub fn time_index(t: f64, eps_t: f64) -> i64 {
    (t / eps_t).round() as i64
}

/// Samples of one sub-trajectory on a fixed time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformSeries {
    pub t0: f64,
    pub dt: f64,
    /// `samples[d][j]` is dimension `d` at `t0 + j * dt`.
    pub samples: Vec<Vec<f64>>,
}

impl UniformSeries {
    pub fn dim(&self) -> usize {
        self.samples.len()
    }

    pub fn len(&self) -> usize {
        self.samples.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn time_at(&self, j: usize) -> f64 {
        grid_time(self.t0, self.dt, j)
    }

    pub fn end_time(&self) -> f64 {
        self.time_at(self.len().saturating_sub(1))
    }

    pub fn sample(&self, j: usize) -> Vec<f64> {
        self.samples.iter().map(|s| s[j]).collect()
    }

    /// Linear interpolation between the bracketing samples; clamps outside the span.
    pub fn interpolate(&self, t: f64, out: &mut [f64]) {
        let last = self.len() - 1;
        let s = ((t - self.t0) / self.dt).max(0.0);
        let b = (s.floor() as usize).min(last);
        if b >= last {
            for (o, d) in out.iter_mut().zip(&self.samples) {
                *o = d[last];
            }
            return;
        }
        let frac = s - b as f64;
        for (o, d) in out.iter_mut().zip(&self.samples) {
            *o = if frac == 0.0 {
                d[b]
            } else {
                d[b] + (d[b + 1] - d[b]) * frac
            };
        }
    }
}

pub(crate) fn grid_time(t0: f64, dt: f64, j: usize) -> f64 {
    t0 + j as f64 * dt
}

fn decode_segment(
    model: &CompressedTrajectory,
    seg: &SubTrajectory,
    cache: &mut DctCache,
) -> Result<UniformSeries> {
    let point_step = model.point_step()?;
    let end_step = model.dimension_step()?;
    let eps_f = model.frequency_step()?;
    let mut samples = Vec::with_capacity(model.dim);
    for (d, blocks) in seg.blocks.iter().enumerate() {
        let start = dequantize(seg.start[d], point_step);
        let mut series = Vec::with_capacity(seg.samples);
        series.push(start);
        let mut index = 0i64;
        let mut prev = start;
        let lengths = block_lengths(seg.velocity_count(), model.block_size);
        if blocks.len() != seg.velocity_count().div_ceil(model.block_size) {
            return Err(Error::Corrupt(
                "block count does not match the sample count".into(),
            ));
        }
        for (block, m) in blocks.iter().zip(lengths) {
            index = index
                .checked_add(block.end_delta)
                .ok_or_else(|| Error::Corrupt("block end index overflows".into()))?;
            let end = start + dequantize(index, end_step);
            let dct = cache.get(m);
            let values = block_decompress_with(&block.spectrum, m, prev, end, eps_f, &dct)?;
            series.extend_from_slice(&values[1..]);
            prev = end;
        }
        samples.push(series);
    }
    Ok(UniformSeries {
        t0: seg.t0_index as f64 * model.eps_t,
        dt: model.dt,
        samples,
    })
}

/// Rebuilds the uniform series of every sub-trajectory.
pub fn decompress_uniform(model: &CompressedTrajectory) -> Result<Vec<UniformSeries>> {
    let mut cache = DctCache::new();
    model
        .segments
        .iter()
        .map(|seg| decode_segment(model, seg, &mut cache))
        .collect()
}

/// A decoded container ready for position queries.
#[derive(Debug, Clone)]
pub struct Decoder {
    dim: usize,
    eps_t: f64,
    series: Vec<UniformSeries>,
    outliers: Vec<(i64, Vec<f64>)>,
    corrections: Vec<(i64, Vec<f64>)>,
}

impl Decoder {
    pub fn new(model: &CompressedTrajectory) -> Result<Self> {
        let outlier_step = model.outlier_step()?;
        let correction_step = model.dimension_step()?;
        let outliers = model
            .outliers
            .iter()
            .map(|o| {
                let p = o
                    .coords
                    .iter()
                    .map(|&c| dequantize(c, outlier_step))
                    .collect();
                (o.time_index as i64, p)
            })
            .collect();
        let corrections = model
            .corrections
            .iter()
            .map(|c| {
                let p = c
                    .offsets
                    .iter()
                    .map(|&q| dequantize(q, correction_step))
                    .collect();
                (c.time_index as i64, p)
            })
            .collect();
        Ok(Self {
            dim: model.dim,
            eps_t: model.eps_t,
            series: decompress_uniform(model)?,
            outliers,
            corrections,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn series(&self) -> &[UniformSeries] {
        &self.series
    }

    fn lookup(table: &[(i64, Vec<f64>)], index: i64) -> Option<&[f64]> {
        table
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| table[k].1.as_slice())
    }

    fn enclosing(&self, t: f64) -> Option<&UniformSeries> {
        // grid origins are products idx * eps_t and may overshoot by an ulp
        let tol = 1e-6 * self.eps_t + t.abs() * 1e-14;
        let k = self.series.partition_point(|s| s.t0 <= t + tol);
        let s = self.series.get(k.checked_sub(1)?)?;
        (t <= s.end_time() + tol).then_some(s)
    }

    /// Position without the correction array applied.
    pub fn query_uncorrected_into(&self, t: f64, out: &mut [f64]) -> Result<()> {
        let index = time_index(t, self.eps_t);
        if let Some(p) = Self::lookup(&self.outliers, index) {
            out.copy_from_slice(p);
            return Ok(());
        }
        let series = self.enclosing(t).ok_or(Error::OutOfRange(t))?;
        series.interpolate(t, out);
        Ok(())
    }

    pub fn query_into(&self, t: f64, out: &mut [f64]) -> Result<()> {
        let index = time_index(t, self.eps_t);
        if let Some(p) = Self::lookup(&self.outliers, index) {
            out.copy_from_slice(p);
            return Ok(());
        }
        self.query_uncorrected_into(t, out)?;
        if let Some(c) = Self::lookup(&self.corrections, index) {
            for (o, d) in out.iter_mut().zip(c) {
                *o += d;
            }
        }
        Ok(())
    }

    pub fn query(&self, t: f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim];
        self.query_into(t, &mut out)?;
        Ok(out)
    }

    pub fn query_many(&self, timestamps: &[f64]) -> Result<Vec<Vec<f64>>> {
        timestamps.iter().map(|&t| self.query(t)).collect()
    }
}

/// Positions of `model` at each timestamp.
pub fn query(model: &CompressedTrajectory, timestamps: &[f64]) -> Result<Vec<Vec<f64>>> {
    Decoder::new(model)?.query_many(timestamps)
}
