//! End-to-end compression of one trajectory.
//!
//! 1. Split the input where it jumps faster than `v_max` or stalls for much
//!    longer than its running sampling interval. Pieces of one or two points
//!    become outliers.
//! 2. Pick one sampling interval for all pieces and resample each piece onto
//!    a uniform grid by linear interpolation.
//! 3. Code every dimension of every piece block by block.
//! 4. Decode at every original timestamp and store a correction for each
//!    point that misses the error bound.

use crate::block::{block_compress_with, BlockParams};
use crate::codec::{dequantize, quantize, QuantStep};
use crate::container::{
    block_lengths, BlockRecord, CompressedTrajectory, CorrectionEntry, OutlierEntry, SubTrajectory,
};
use crate::error::{Error, Result};
use crate::params::CodecParams;
use crate::reconstruct::{grid_time, time_index, Decoder, UniformSeries};
use crate::trajectory::{distance, Trajectory};
use crate::transform::DctCache;

/// A run of consecutive points, `start..end` in the source trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fragment {
    pub start: usize,
    pub end: usize,
}

impl Fragment {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

/// Fewer points than this and a fragment is stored as outliers.
pub const MIN_FRAGMENT_LEN: usize = 3;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Segmentation {
    pub fragments: Vec<Fragment>,
    /// Indices of points stored verbatim, ascending.
    pub outliers: Vec<usize>,
}

/// Splits `traj` into temporally continuous fragments.
///
/// A new fragment starts at point `j` when
/// `|p_j - p_{j-1}| > (t_j - t_{j-1}) * v_max` or when
/// `t_j - t_{j-1} > b_s * (t_j - t_start) / len`, where `len` is the current
/// fragment's length; a fragment of length one uses `default_dt` for the
/// expected interval instead.
pub fn segment(traj: &Trajectory, params: &CodecParams, default_dt: f64) -> Segmentation {
    let mut runs = Vec::new();
    let mut start = 0usize;
    for j in 1..traj.len() {
        let gap = traj.time(j) - traj.time(j - 1);
        let jump = distance(traj.point(j), traj.point(j - 1)) > gap * params.v_max;
        let len = j - start;
        let expected = if len == 1 {
            default_dt
        } else {
            (traj.time(j) - traj.time(start)) / len as f64
        };
        let stall = gap > params.block_size as f64 * expected;
        if jump || stall {
            runs.push(Fragment { start, end: j });
            start = j;
        }
    }
    if !traj.is_empty() {
        runs.push(Fragment {
            start,
            end: traj.len(),
        });
    }
    let mut out = Segmentation::default();
    for run in runs {
        if run.len() >= MIN_FRAGMENT_LEN {
            out.fragments.push(run);
        } else {
            out.outliers.extend(run.start..run.end);
        }
    }
    out
}

fn snap_interval(raw: f64, eps_t: f64) -> f64 {
    (raw / eps_t).round().max(1.0) * eps_t
}

/// Sum of fragment durations over the total point count, snapped to a
/// positive multiple of `eps_t`.
pub fn choose_dt(traj: &Trajectory, fragments: &[Fragment], eps_t: f64) -> Result<f64> {
    if fragments.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot choose a sampling interval without fragments".into(),
        ));
    }
    let duration: f64 = fragments
        .iter()
        .map(|f| traj.time(f.end - 1) - traj.time(f.start))
        .sum();
    let points: usize = fragments.iter().map(Fragment::len).sum();
    Ok(snap_interval(duration / points as f64, eps_t))
}

/// Median gap between consecutive timestamps, or `fallback` for fewer than two points.
pub fn median_interval(traj: &Trajectory, fallback: f64) -> f64 {
    let mut gaps: Vec<f64> = traj.times().windows(2).map(|w| w[1] - w[0]).collect();
    if gaps.is_empty() {
        return fallback;
    }
    let mid = gaps.len() / 2;
    let (_, m, _) = gaps.select_nth_unstable_by(mid, f64::total_cmp);
    *m
}

/// Samples `frag` at `grid_t0 + j * dt` for `j = 0..=M`, with
/// `M = ceil((t_last - grid_t0) / dt)`. Grid times outside the fragment take
/// the nearest end point.
pub fn resample(traj: &Trajectory, frag: Fragment, grid_t0: f64, dt: f64) -> UniformSeries {
    let dim = traj.dim();
    let first = frag.start;
    let last = frag.end - 1;
    let t_last = traj.time(last);
    let steps = ((t_last - grid_t0) / dt - 1e-9).ceil().max(1.0) as usize;
    let mut samples = vec![Vec::with_capacity(steps + 1); dim];
    let mut a = first;
    for j in 0..=steps {
        let tau = grid_time(grid_t0, dt, j);
        if tau <= traj.time(first) {
            push_point(&mut samples, traj.point(first));
        } else if tau >= t_last {
            push_point(&mut samples, traj.point(last));
        } else {
            while traj.time(a + 1) < tau {
                a += 1;
            }
            // t_a < tau <= t_{a+1}
            let (ta, tb) = (traj.time(a), traj.time(a + 1));
            let w = (tau - ta) / (tb - ta);
            let (pa, pb) = (traj.point(a), traj.point(a + 1));
            for (d, s) in samples.iter_mut().enumerate() {
                s.push(pa[d] + (pb[d] - pa[d]) * w);
            }
        }
    }
    UniformSeries {
        t0: grid_t0,
        dt,
        samples,
    }
}

fn push_point(samples: &mut [Vec<f64>], p: &[f64]) {
    for (s, &v) in samples.iter_mut().zip(p) {
        s.push(v);
    }
}

fn encode_series(
    series: &UniformSeries,
    t0_index: u64,
    model: &CompressedTrajectory,
    block: &BlockParams,
    cache: &mut DctCache,
) -> Result<SubTrajectory> {
    let point_step = model.point_step()?;
    let end_step = model.dimension_step()?;
    let velocities = series.len() - 1;
    let mut start = Vec::with_capacity(series.dim());
    let mut blocks = Vec::with_capacity(series.dim());
    for s in &series.samples {
        let q0 = quantize(s[0], point_step)?;
        let origin = dequantize(q0, point_step);
        start.push(q0);
        let mut records = Vec::new();
        let mut prev_index = 0i64;
        let mut offset = 0usize;
        for m in block_lengths(velocities, model.block_size) {
            let values = &s[offset..=offset + m];
            let index = quantize(values[m] - origin, end_step)?;
            let end_delta = index
                .checked_sub(prev_index)
                .ok_or_else(|| Error::Range("block end delta overflows".into()))?;
            prev_index = index;
            let dct = cache.get(m);
            records.push(BlockRecord {
                end_delta,
                spectrum: block_compress_with(values, block, &dct)?,
            });
            offset += m;
        }
        blocks.push(records);
    }
    Ok(SubTrajectory {
        t0_index,
        start,
        samples: series.len(),
        blocks,
    })
}

fn check_timestamps(traj: &Trajectory, eps_t: f64) -> Result<()> {
    if let Some(&t) = traj.times().first() {
        if t < 0.0 {
            return Err(Error::InvalidInput(format!(
                "timestamps must be non-negative, first is {t}"
            )));
        }
    }
    let mut prev = None;
    for &t in traj.times() {
        let idx = time_index(t, eps_t);
        if prev.is_some_and(|p| p >= idx) {
            return Err(Error::InvalidInput(format!(
                "time precision {eps_t} s is too coarse: t={t} shares its index with the previous point"
            )));
        }
        prev = Some(idx);
    }
    Ok(())
}

/// Compresses `traj`. Decoding the result at any original timestamp lands
/// within `params.eps` of the original point.
pub fn compress(traj: &Trajectory, params: &CodecParams) -> Result<CompressedTrajectory> {
    params.validate()?;
    check_timestamps(traj, params.eps_t)?;
    let block = params.block_params()?;
    let dim = traj.dim();
    let mut model = CompressedTrajectory::empty(
        dim,
        params.chunk,
        params.eps,
        params.eps_t,
        params.eps_p,
        params.eps_f,
        params.block_size,
    );
    let default_dt = median_interval(traj, params.eps_t);
    let seg = segment(traj, params, default_dt);
    model.dt = if seg.fragments.is_empty() {
        snap_interval(default_dt, params.eps_t)
    } else {
        choose_dt(traj, &seg.fragments, params.eps_t)?
    };

    let outlier_step = model.outlier_step()?;
    for &i in &seg.outliers {
        let coords = traj
            .point(i)
            .iter()
            .map(|&x| quantize(x, outlier_step))
            .collect::<Result<Vec<_>>>()?;
        model.outliers.push(OutlierEntry {
            time_index: time_index(traj.time(i), params.eps_t) as u64,
            coords,
        });
    }

    let mut cache = DctCache::new();
    for frag in &seg.fragments {
        let t0_index = (traj.time(frag.start) / params.eps_t).floor() as u64;
        let grid_t0 = t0_index as f64 * params.eps_t;
        let series = resample(traj, *frag, grid_t0, model.dt);
        model.segments.push(encode_series(
            &series, t0_index, &model, &block, &mut cache,
        )?);
    }

    validate_and_correct(traj, &mut model)?;
    Ok(model)
}

/// Compresses and serializes in one step.
pub fn compress_to_bytes(traj: &Trajectory, params: &CodecParams) -> Result<Vec<u8>> {
    compress(traj, params)?.to_bytes()
}

/// Rebuilds the correction array of `model` against the original trajectory.
/// Returns the number of corrected points.
pub fn validate_and_correct(traj: &Trajectory, model: &mut CompressedTrajectory) -> Result<usize> {
    model.corrections.clear();
    let decoder = Decoder::new(model)?;
    let step: QuantStep = model.dimension_step()?;
    let mut recon = vec![0.0; traj.dim()];
    let mut corrections = Vec::new();
    for (t, p) in traj.points() {
        decoder.query_uncorrected_into(t, &mut recon)?;
        if distance(p, &recon) <= model.eps {
            continue;
        }
        let index = time_index(t, model.eps_t);
        if model
            .outliers
            .binary_search_by_key(&(index as u64), |o| o.time_index)
            .is_ok()
        {
            continue;
        }
        let offsets = p
            .iter()
            .zip(&recon)
            .map(|(&o, &r)| quantize(o - r, step))
            .collect::<Result<Vec<_>>>()?;
        corrections.push(CorrectionEntry {
            time_index: index as u64,
            offsets,
        });
    }
    model.corrections = corrections;
    Ok(model.corrections.len())
}
