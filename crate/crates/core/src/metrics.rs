//! Evaluation metrics and closed-form error predictions.
//!
//! Raw storage counts 8 bytes per coordinate plus 8 for the timestamp, so a
//! 2-D point costs 24 bytes. Ratios are compressed size over raw size (lower
//! is better).
//!
//! The predictors model each retained DCT coefficient's quantization error as
//! uniform on `[-eps_f, eps_f]`. The cumulative position error at index `k` of
//! a block of `b_s` velocities then has variance
//! `(k*b_s - k^2) * eps_f^2 / (6 * b_s^2)` per dimension, and the Euclidean
//! error follows a chi distribution with that scale.

use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;
use statrs::function::gamma::gamma;

use crate::container::CompressedTrajectory;
use crate::error::{Error, Result};
use crate::reconstruct::Decoder;
use crate::trajectory::{distance, Trajectory};

/// Bytes used to store one raw value (timestamp or coordinate).
pub const BYTES_PER_VALUE: usize = 8;

/// Ratio `eps / eps_f` at which the reference mean errors are stated.
pub const REFERENCE_A: f64 = 0.6;

pub fn raw_bytes(points: usize, dim: usize) -> usize {
    points * (dim + 1) * BYTES_PER_VALUE
}

/// Σ compressed bytes / Σ raw bytes over matched trajectories and containers.
pub fn compression_ratio(originals: &[&Trajectory], containers: &[&[u8]]) -> Result<f64> {
    if originals.len() != containers.len() {
        return Err(Error::InvalidArgument(format!(
            "{} trajectories but {} containers",
            originals.len(),
            containers.len()
        )));
    }
    let raw: usize = originals.iter().map(|t| raw_bytes(t.len(), t.dim())).sum();
    let packed: usize = containers.iter().map(|c| c.len()).sum();
    ratio(packed, raw)
}

fn ratio(compressed: usize, raw: usize) -> Result<f64> {
    if raw == 0 {
        return Err(Error::InvalidArgument(
            "no raw points to compare against".into(),
        ));
    }
    Ok(compressed as f64 / raw as f64)
}

/// Euclidean distance per matched point.
pub fn sed_errors<P: AsRef<[f64]>>(original: &Trajectory, reconstructed: &[P]) -> Result<Vec<f64>> {
    if original.len() != reconstructed.len() {
        return Err(Error::InvalidArgument(format!(
            "{} original points but {} reconstructed",
            original.len(),
            reconstructed.len()
        )));
    }
    original
        .points()
        .zip(reconstructed)
        .map(|((_, p), q)| {
            let q = q.as_ref();
            if q.len() != p.len() {
                return Err(Error::InvalidArgument(format!(
                    "reconstructed point has {} coordinates, expected {}",
                    q.len(),
                    p.len()
                )));
            }
            Ok(distance(p, q))
        })
        .collect()
}

pub fn max_sed<P: AsRef<[f64]>>(original: &Trajectory, reconstructed: &[P]) -> Result<f64> {
    Ok(SedStats::from_errors(&sed_errors(original, reconstructed)?).max)
}

pub fn mean_sed<P: AsRef<[f64]>>(original: &Trajectory, reconstructed: &[P]) -> Result<f64> {
    Ok(SedStats::from_errors(&sed_errors(original, reconstructed)?).mean())
}

/// Running maximum and sum of distances.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SedStats {
    pub max: f64,
    pub sum: f64,
    pub count: usize,
}

impl SedStats {
    pub fn from_errors(errors: &[f64]) -> Self {
        let mut s = Self::default();
        for &e in errors {
            s.push(e);
        }
        s
    }

    pub fn push(&mut self, e: f64) {
        self.max = self.max.max(e);
        self.sum += e;
        self.count += 1;
    }

    pub fn merge(&mut self, other: &Self) {
        self.max = self.max.max(other.max);
        self.sum += other.sum;
        self.count += other.count;
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sum / self.count as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub name: String,
    pub points: usize,
    pub compression_ratio: f64,
    pub max_sed: f64,
    pub mean_sed: f64,
    pub corrected_fraction: f64,
    pub raw_bytes: usize,
    pub compressed_bytes: usize,
}

impl EvalReport {
    /// Decodes `bytes` and measures it against `original` at the original timestamps.
    pub fn evaluate(name: &str, original: &Trajectory, bytes: &[u8]) -> Result<Self> {
        let model = CompressedTrajectory::from_bytes(bytes)?;
        if model.dim != original.dim() {
            return Err(Error::InvalidArgument(format!(
                "container has {} dimensions, trajectory has {}",
                model.dim,
                original.dim()
            )));
        }
        let decoder = Decoder::new(&model)?;
        let mut stats = SedStats::default();
        let mut out = vec![0.0; model.dim];
        for (t, p) in original.points() {
            decoder.query_into(t, &mut out)?;
            stats.push(distance(p, &out));
        }
        Self::from_parts(name, original, bytes.len(), model.corrections.len(), stats)
    }

    pub fn from_parts(
        name: &str,
        original: &Trajectory,
        compressed_bytes: usize,
        corrections: usize,
        stats: SedStats,
    ) -> Result<Self> {
        let raw = raw_bytes(original.len(), original.dim());
        Ok(Self {
            name: name.to_string(),
            points: original.len(),
            compression_ratio: ratio(compressed_bytes, raw)?,
            max_sed: stats.max,
            mean_sed: stats.mean(),
            corrected_fraction: corrections as f64 / original.len() as f64,
            raw_bytes: raw,
            compressed_bytes,
        })
    }

    /// Corpus-level row: byte totals, worst maximum, point-weighted means.
    pub fn aggregate(name: &str, reports: &[EvalReport]) -> Result<Self> {
        let points: usize = reports.iter().map(|r| r.points).sum();
        if points == 0 {
            return Err(Error::InvalidArgument("nothing to aggregate".into()));
        }
        let raw: usize = reports.iter().map(|r| r.raw_bytes).sum();
        let packed: usize = reports.iter().map(|r| r.compressed_bytes).sum();
        let weighted = |f: fn(&EvalReport) -> f64| {
            reports.iter().map(|r| f(r) * r.points as f64).sum::<f64>() / points as f64
        };
        Ok(Self {
            name: name.to_string(),
            points,
            compression_ratio: ratio(packed, raw)?,
            max_sed: reports.iter().map(|r| r.max_sed).fold(0.0, f64::max),
            mean_sed: weighted(|r| r.mean_sed),
            corrected_fraction: weighted(|r| r.corrected_fraction),
            raw_bytes: raw,
            compressed_bytes: packed,
        })
    }
}

/// One JSON object per line.
pub fn write_json_lines<W: Write>(mut w: W, reports: &[EvalReport]) -> Result<()> {
    for r in reports {
        serde_json::to_writer(&mut w, r).map_err(|e| Error::InvalidInput(e.to_string()))?;
        writeln!(w).map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    Ok(())
}

/// Comma-separated table with a header row.
pub fn write_csv<W: Write>(w: W, reports: &[EvalReport]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in reports {
        out.serialize(r)
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    out.flush().map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Least-squares line through `(xs, ys)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidArgument(
            "a fit needs at least two matched points".into(),
        ));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("x values are all equal".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

/// Shape of an error-bound sweep: ratio should not grow and mean error
/// should grow roughly linearly with `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrendCheck {
    pub ratio_non_increasing: bool,
    pub mean_sed_fit: LinearFit,
}

impl TrendCheck {
    pub fn passes(&self, min_r_squared: f64) -> bool {
        self.ratio_non_increasing
            && self.mean_sed_fit.slope > 0.0
            && self.mean_sed_fit.r_squared >= min_r_squared
    }
}

/// `reports[i]` must be the aggregate at `eps[i]`, with `eps` increasing.
pub fn trend_check(eps: &[f64], reports: &[EvalReport]) -> Result<TrendCheck> {
    if eps.len() != reports.len() {
        return Err(Error::InvalidArgument(
            "one report per error bound expected".into(),
        ));
    }
    if eps.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "error bounds must be increasing".into(),
        ));
    }
    let ratios: Vec<f64> = reports.iter().map(|r| r.compression_ratio).collect();
    let means: Vec<f64> = reports.iter().map(|r| r.mean_sed).collect();
    Ok(TrendCheck {
        ratio_non_increasing: ratios.windows(2).all(|w| w[1] <= w[0]),
        mean_sed_fit: linear_fit(eps, &means)?,
    })
}

/// Probability that the 2-D error at a block midpoint exceeds `eps`.
pub fn predicted_exceedance(eps: f64, eps_f: f64) -> f64 {
    (-12.0 * eps * eps / (eps_f * eps_f)).exp()
}

/// Expected mean error with the reference `eps_f = eps / 0.6`.
pub fn predicted_mean_error(eps: f64, dim: usize) -> Result<f64> {
    mean_error_for_step(eps / REFERENCE_A, dim)
}

/// Expected error averaged over a block, for a given frequency step.
pub fn mean_error_for_step(eps_f: f64, dim: usize) -> Result<f64> {
    // mean of sqrt(x - x^2) over [0, 1] is approximated by pi / 8
    Ok(chi_mean_factor(dim)? * eps_f / 6f64.sqrt() * PI / 8.0)
}

/// Per-dimension variance of the cumulative error at index `k` of a block.
pub fn var_delta_s(k: usize, b_s: usize, eps_f: f64) -> Result<f64> {
    if k == 0 || k > b_s {
        return Err(Error::InvalidArgument(format!(
            "index {k} outside 1..={b_s}"
        )));
    }
    let (k, b) = (k as f64, b_s as f64);
    Ok((k * b - k * k) * eps_f * eps_f / (6.0 * b * b))
}

/// Mean of a chi variable with unit scale.
fn chi_mean_factor(dim: usize) -> Result<f64> {
    check_dim(dim)?;
    let d = dim as f64;
    Ok(2f64.sqrt() * gamma((d + 1.0) / 2.0) / gamma(d / 2.0))
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 3 => Ok(()),
        _ => Err(Error::InvalidArgument(format!(
            "error predictions cover 2 and 3 dimensions, got {dim}"
        ))),
    }
}

/// `P(|error| <= r)` when each dimension is normal with deviation `sigma`.
pub fn chi_cdf(r: f64, sigma: f64, dim: usize) -> Result<f64> {
    check_dim(dim)?;
    if r <= 0.0 {
        return Ok(0.0);
    }
    if sigma <= 0.0 {
        return Ok(1.0);
    }
    let x = r / sigma;
    let tail = (-x * x / 2.0).exp();
    Ok(match dim {
        2 => 1.0 - tail,
        _ => erf(x / 2f64.sqrt()) - (2.0 / PI).sqrt() * x * tail,
    })
}

/// Probability that the error at index `k` of a `b_s` block exceeds `r`.
pub fn exceedance_at(r: f64, k: usize, b_s: usize, eps_f: f64, dim: usize) -> Result<f64> {
    let sigma = var_delta_s(k, b_s, eps_f)?.sqrt();
    Ok(1.0 - chi_cdf(r, sigma, dim)?)
}
