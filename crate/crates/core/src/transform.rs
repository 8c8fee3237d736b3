//! Forward and inverse DCT with the codec's scale factors.
//!
//! Forward (DCT-II): `C_0 = sqrt(1/n) * sum v_i` and, for `k >= 1`,
//! `C_k = 2 * sum_i v_i cos((2i + 1) k pi / 2n)`.
//!
//! Inverse (DCT-III): `v_i = (1/n) * sum_k C_k cos((2i + 1) k pi / 2n)`, with
//! the same `1/n` weight on `C_0`. The pair is exact for zero-sum inputs, whose
//! `C_0` vanishes. For nonzero `C_0` the inverse does not undo the forward.
//!
//! Lengths of 16 and above go through a length-`2n` FFT of the symmetric
//! extension; shorter blocks use direct evaluation.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Below this length the direct sum is used.
pub const FFT_MIN_LEN: usize = 16;

/// Direct `O(n^2)` forward transform.
pub fn dct_forward_direct(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let nf = n as f64;
    (0..n)
        .map(|k| {
            let s: f64 = v
                .iter()
                .enumerate()
                .map(|(i, &x)| x * ((2 * i + 1) as f64 * k as f64 * PI / (2.0 * nf)).cos())
                .sum();
            if k == 0 {
                s * (1.0 / nf).sqrt()
            } else {
                2.0 * s
            }
        })
        .collect()
}

/// Direct `O(n^2)` inverse transform.
pub fn dct_inverse_direct(c: &[f64]) -> Vec<f64> {
    let n = c.len();
    let nf = n as f64;
    (0..n)
        .map(|i| {
            let s: f64 = c
                .iter()
                .enumerate()
                .map(|(k, &x)| x * ((2 * i + 1) as f64 * k as f64 * PI / (2.0 * nf)).cos())
                .sum();
            s / nf
        })
        .collect()
}

/// A planned transform for one block length. Immutable after construction,
/// so it can be shared between threads.
pub struct Dct {
    len: usize,
    plan: Option<FftPlan>,
}

struct FftPlan {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    // e^{-i pi k / 2n}
    twiddles: Vec<Complex64>,
}

impl std::fmt::Debug for Dct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dct")
            .field("len", &self.len)
            .field("fft", &self.plan.is_some())
            .finish()
    }
}

impl Dct {
    pub fn new(len: usize) -> Self {
        Self::with_planner(len, &mut FftPlanner::new())
    }

    fn with_planner(len: usize, planner: &mut FftPlanner<f64>) -> Self {
        assert!(len >= 1, "DCT length must be at least 1");
        let plan = (len >= FFT_MIN_LEN).then(|| {
            let twiddles = (0..len)
                .map(|k| Complex64::from_polar(1.0, -PI * k as f64 / (2.0 * len as f64)))
                .collect();
            FftPlan {
                forward: planner.plan_fft_forward(2 * len),
                inverse: planner.plan_fft_inverse(2 * len),
                twiddles,
            }
        });
        Self { len, plan }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn forward(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.len, "input length does not match the plan");
        let Some(plan) = &self.plan else {
            return dct_forward_direct(v);
        };
        let n = self.len;
        let mut buf: Vec<Complex64> = v
            .iter()
            .chain(v.iter().rev())
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        plan.forward.process(&mut buf);
        let mut out: Vec<f64> = buf[..n]
            .iter()
            .zip(&plan.twiddles)
            .map(|(y, w)| (y * w).re)
            .collect();
        // the FFT yields 2 * sum for every k; bin 0 carries the unmodified weight
        out[0] = 0.5 * out[0] * (1.0 / n as f64).sqrt();
        out
    }

    pub fn inverse(&self, c: &[f64]) -> Vec<f64> {
        assert_eq!(c.len(), self.len, "input length does not match the plan");
        let Some(plan) = &self.plan else {
            return dct_inverse_direct(c);
        };
        let n = self.len;
        let mut buf = vec![Complex64::new(0.0, 0.0); 2 * n];
        for ((slot, &x), w) in buf.iter_mut().zip(c).zip(&plan.twiddles) {
            *slot = x * w.conj();
        }
        plan.inverse.process(&mut buf);
        let scale = 1.0 / n as f64;
        buf[..n].iter().map(|z| z.re * scale).collect()
    }
}

/// Caches one [`Dct`] per block length.
pub struct DctCache {
    planner: FftPlanner<f64>,
    plans: HashMap<usize, Arc<Dct>>,
}

impl Default for DctCache {
    fn default() -> Self {
        Self {
            planner: FftPlanner::new(),
            plans: HashMap::new(),
        }
    }
}

impl DctCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, len: usize) -> Arc<Dct> {
        let planner = &mut self.planner;
        self.plans
            .entry(len)
            .or_insert_with(|| Arc::new(Dct::with_planner(len, planner)))
            .clone()
    }
}

pub fn dct_forward(v: &[f64]) -> Vec<f64> {
    Dct::new(v.len()).forward(v)
}

pub fn dct_inverse(c: &[f64]) -> Vec<f64> {
    Dct::new(c.len()).inverse(c)
}
