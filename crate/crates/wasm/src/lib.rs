//! Browser bindings for the static demo page in `www/`.
//!
//! Three operations are exported:
//! - [`compress_demo`]: compress a synthetic 2-D trajectory and return the
//!   original points, the reconstruction at the original timestamps and size
//!   and error statistics;
//! - [`predict_errors`]: the closed-form error predictions along one block;
//! - [`sweep_demo`]: compression ratio and mean error over a list of bounds.

use trajzip::metrics::{
    exceedance_at, mean_error_for_step, predicted_exceedance, raw_bytes, trend_check, var_delta_s,
    EvalReport, SedStats,
};
use trajzip::synth::{generate, SynthConfig};
use trajzip::trajectory::distance;
use trajzip::{pipeline, CodecParams, Decoder, Profile, Trajectory};
use wasm_bindgen::prelude::*;

fn corpus_config(kind: &str, points: usize) -> Result<SynthConfig, String> {
    if !(2..=200_000).contains(&points) {
        return Err(format!("point count must be in 2..=200000, got {points}"));
    }
    match kind {
        "smooth" => Ok(SynthConfig::smooth(2, points)),
        "jittery" => Ok(SynthConfig::jittery(2, points)),
        "irregular" => Ok(SynthConfig::irregular(2, points)),
        _ => Err(format!("unknown trajectory kind {kind:?}")),
    }
}

fn codec(profile: &str, epsilon: f64) -> Result<CodecParams, String> {
    let p = Profile::by_name(profile).ok_or_else(|| format!("unknown profile {profile:?}"))?;
    CodecParams::from_profile(epsilon, &p).map_err(|e| e.to_string())
}

/// Result of compressing one synthetic trajectory.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Demo {
    times: Vec<f64>,
    original: Vec<f64>,
    reconstructed: Vec<f64>,
    grid: Vec<f64>,
    errors: Vec<f64>,
    compressed_bytes: usize,
    raw_bytes: usize,
    max_sed: f64,
    mean_sed: f64,
    corrections: usize,
    outliers: usize,
    segments: usize,
    block_size: usize,
    eps_f: f64,
}

#[wasm_bindgen]
impl Demo {
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }
    /// Interleaved `x, y` of the input.
    pub fn original(&self) -> Vec<f64> {
        self.original.clone()
    }
    /// Interleaved `x, y` decoded at the input timestamps.
    pub fn reconstructed(&self) -> Vec<f64> {
        self.reconstructed.clone()
    }
    /// Interleaved `x, y` of every uniform-grid sample.
    pub fn grid(&self) -> Vec<f64> {
        self.grid.clone()
    }
    /// Per-point distance between input and reconstruction.
    pub fn errors(&self) -> Vec<f64> {
        self.errors.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn compressed_bytes(&self) -> usize {
        self.compressed_bytes
    }
    #[wasm_bindgen(getter)]
    pub fn raw_bytes(&self) -> usize {
        self.raw_bytes
    }
    #[wasm_bindgen(getter)]
    pub fn ratio(&self) -> f64 {
        self.compressed_bytes as f64 / self.raw_bytes as f64
    }
    #[wasm_bindgen(getter)]
    pub fn max_sed(&self) -> f64 {
        self.max_sed
    }
    #[wasm_bindgen(getter)]
    pub fn mean_sed(&self) -> f64 {
        self.mean_sed
    }
    #[wasm_bindgen(getter)]
    pub fn corrections(&self) -> usize {
        self.corrections
    }
    #[wasm_bindgen(getter)]
    pub fn outliers(&self) -> usize {
        self.outliers
    }
    #[wasm_bindgen(getter)]
    pub fn segments(&self) -> usize {
        self.segments
    }
    #[wasm_bindgen(getter)]
    pub fn block_size(&self) -> usize {
        self.block_size
    }
    #[wasm_bindgen(getter)]
    pub fn eps_f(&self) -> f64 {
        self.eps_f
    }
}

pub fn run_demo(
    kind: &str,
    points: usize,
    seed: u32,
    epsilon: f64,
    profile: &str,
) -> Result<Demo, String> {
    let traj = generate(&corpus_config(kind, points)?, u64::from(seed));
    compress_trajectory(&traj, epsilon, profile)
}

fn compress_trajectory(traj: &Trajectory, epsilon: f64, profile: &str) -> Result<Demo, String> {
    let params = codec(profile, epsilon)?;
    let model = pipeline::compress(traj, &params).map_err(|e| e.to_string())?;
    let bytes = model.to_bytes().map_err(|e| e.to_string())?;
    let decoder = Decoder::new(&model).map_err(|e| e.to_string())?;
    let mut reconstructed = Vec::with_capacity(traj.coords().len());
    let mut errors = Vec::with_capacity(traj.len());
    let mut stats = SedStats::default();
    let mut out = vec![0.0; traj.dim()];
    for (t, p) in traj.points() {
        decoder.query_into(t, &mut out).map_err(|e| e.to_string())?;
        let e = distance(p, &out);
        stats.push(e);
        errors.push(e);
        reconstructed.extend_from_slice(&out);
    }
    let grid = decoder
        .series()
        .iter()
        .flat_map(|s| (0..s.len()).flat_map(move |j| s.sample(j)))
        .collect();
    Ok(Demo {
        times: traj.times().to_vec(),
        original: traj.coords().to_vec(),
        reconstructed,
        grid,
        errors,
        compressed_bytes: bytes.len(),
        raw_bytes: raw_bytes(traj.len(), traj.dim()),
        max_sed: stats.max,
        mean_sed: stats.mean(),
        corrections: model.corrections.len(),
        outliers: model.outliers.len(),
        segments: model.segments.len(),
        block_size: params.block_size,
        eps_f: params.eps_f,
    })
}

/// Compresses a seeded synthetic trajectory (`smooth`, `jittery` or `irregular`).
#[wasm_bindgen]
pub fn compress_demo(
    kind: &str,
    points: usize,
    seed: u32,
    epsilon: f64,
    profile: &str,
) -> Result<Demo, JsError> {
    run_demo(kind, points, seed, epsilon, profile).map_err(|e| JsError::new(&e))
}

/// Predicted error behaviour inside one block.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Prediction {
    sigma: Vec<f64>,
    exceedance: Vec<f64>,
    midpoint_exceedance: f64,
    mean_error: f64,
}

#[wasm_bindgen]
impl Prediction {
    /// Per-dimension standard deviation of the error at block index `k = 0..=b_s`.
    pub fn sigma(&self) -> Vec<f64> {
        self.sigma.clone()
    }
    /// Probability that the 2-D error at index `k` exceeds the bound.
    pub fn exceedance(&self) -> Vec<f64> {
        self.exceedance.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn midpoint_exceedance(&self) -> f64 {
        self.midpoint_exceedance
    }
    #[wasm_bindgen(getter)]
    pub fn mean_error(&self) -> f64 {
        self.mean_error
    }
}

pub fn run_prediction(epsilon: f64, a: f64, block_size: usize) -> Result<Prediction, String> {
    if !(epsilon > 0.0 && a > 0.0 && block_size >= 2) {
        return Err("need epsilon > 0, a > 0 and a block size of at least 2".into());
    }
    let eps_f = epsilon / a;
    let mut sigma = vec![0.0];
    let mut exceedance = vec![0.0];
    for k in 1..=block_size {
        sigma.push(
            var_delta_s(k, block_size, eps_f)
                .map_err(|e| e.to_string())?
                .sqrt(),
        );
        exceedance
            .push(exceedance_at(epsilon, k, block_size, eps_f, 2).map_err(|e| e.to_string())?);
    }
    Ok(Prediction {
        sigma,
        exceedance,
        midpoint_exceedance: predicted_exceedance(epsilon, eps_f),
        mean_error: mean_error_for_step(eps_f, 2).map_err(|e| e.to_string())?,
    })
}

#[wasm_bindgen]
pub fn predict_errors(epsilon: f64, a: f64, block_size: usize) -> Result<Prediction, JsError> {
    run_prediction(epsilon, a, block_size).map_err(|e| JsError::new(&e))
}

/// Aggregate statistics over a list of error bounds.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Sweep {
    epsilon: Vec<f64>,
    ratio: Vec<f64>,
    mean_sed: Vec<f64>,
    max_sed: Vec<f64>,
    ratio_non_increasing: bool,
    r_squared: f64,
}

#[wasm_bindgen]
impl Sweep {
    pub fn epsilon(&self) -> Vec<f64> {
        self.epsilon.clone()
    }
    pub fn ratio(&self) -> Vec<f64> {
        self.ratio.clone()
    }
    pub fn mean_sed(&self) -> Vec<f64> {
        self.mean_sed.clone()
    }
    pub fn max_sed(&self) -> Vec<f64> {
        self.max_sed.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn ratio_non_increasing(&self) -> bool {
        self.ratio_non_increasing
    }
    /// Coefficient of determination of a line fitted to mean error over epsilon.
    #[wasm_bindgen(getter)]
    pub fn r_squared(&self) -> f64 {
        self.r_squared
    }
}

pub fn run_sweep(
    kind: &str,
    points: usize,
    seed: u32,
    profile: &str,
    epsilon: &[f64],
) -> Result<Sweep, String> {
    let traj = generate(&corpus_config(kind, points)?, u64::from(seed));
    let mut eps = epsilon.to_vec();
    eps.sort_by(f64::total_cmp);
    eps.dedup();
    let mut reports = Vec::with_capacity(eps.len());
    for &e in &eps {
        let bytes =
            pipeline::compress_to_bytes(&traj, &codec(profile, e)?).map_err(|e| e.to_string())?;
        reports.push(EvalReport::evaluate(kind, &traj, &bytes).map_err(|e| e.to_string())?);
    }
    let trend = trend_check(&eps, &reports).map_err(|e| e.to_string())?;
    Ok(Sweep {
        ratio: reports.iter().map(|r| r.compression_ratio).collect(),
        mean_sed: reports.iter().map(|r| r.mean_sed).collect(),
        max_sed: reports.iter().map(|r| r.max_sed).collect(),
        epsilon: eps,
        ratio_non_increasing: trend.ratio_non_increasing,
        r_squared: trend.mean_sed_fit.r_squared,
    })
}

#[wasm_bindgen]
pub fn sweep_demo(
    kind: &str,
    points: usize,
    seed: u32,
    profile: &str,
    epsilon: Vec<f64>,
) -> Result<Sweep, JsError> {
    run_sweep(kind, points, seed, profile, &epsilon).map_err(|e| JsError::new(&e))
}
