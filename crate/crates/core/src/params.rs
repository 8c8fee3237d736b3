//! Codec parameters and the per-dataset profiles they are derived from.
//!
//! All tuning knobs follow from the error bound `eps` and four dataset
//! constants: `eps_f = eps / a`, `b_s = round(b * eps + c)` and
//! `r_ret = min(1, d / sqrt(eps))`.

use serde::{Deserialize, Serialize};

use crate::block::BlockParams;
use crate::codec::{ChunkLength, QuantStep};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DatasetConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    pub name: String,
    pub constants: DatasetConstants,
    /// Speed above which consecutive points are treated as discontinuous (m/s).
    pub v_max: f64,
    /// Time precision in seconds.
    pub eps_t: f64,
    pub chunk_bits: u8,
    /// `eps_p = eps_p_factor * eps`.
    pub eps_p_factor: f64,
}

impl Profile {
    fn builtin(name: &str, a: f64, b: f64, c: f64, d: f64, eps_t: f64) -> Self {
        Self {
            name: name.to_owned(),
            constants: DatasetConstants { a, b, c, d },
            v_max: 200.0,
            eps_t,
            chunk_bits: 2,
            eps_p_factor: 0.5,
        }
    }

    /// Autonomous-driving logs at 10 Hz.
    pub fn nuplan() -> Self {
        Self::builtin("nuplan", 0.6, 20.0, 100.0, 0.04, 0.01)
    }

    /// Irregular 1-5 s GPS logs with integer-second timestamps.
    pub fn geolife() -> Self {
        Self::builtin("geolife", 0.6, 0.5, 25.0, 1.1, 1.0)
    }

    pub fn geolife3d() -> Self {
        Self::builtin("geolife3d", 0.7, 0.5, 25.0, 0.8, 1.0)
    }

    /// 2 s GPS logs with millisecond timestamps.
    pub fn mopsi() -> Self {
        Self::builtin("mopsi", 0.6, 1.0, 25.0, 0.6, 0.001)
    }

    pub fn all() -> Vec<Self> {
        vec![
            Self::nuplan(),
            Self::geolife(),
            Self::geolife3d(),
            Self::mopsi(),
        ]
    }

    pub fn by_name(name: &str) -> Option<Self> {
        Self::all()
            .into_iter()
            .find(|p| p.name.eq_ignore_ascii_case(name))
    }

    pub fn validate(&self) -> Result<()> {
        let DatasetConstants { a, b, c, d } = self.constants;
        for (label, v) in [
            ("a", a),
            ("b", b),
            ("c", c),
            ("d", d),
            ("v_max", self.v_max),
            ("eps_t", self.eps_t),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "profile {}: {label} must be positive, got {v}",
                    self.name
                )));
            }
        }
        if !(self.eps_p_factor > 0.0 && self.eps_p_factor <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "eps_p factor must be in (0, 1], got {}",
                self.eps_p_factor
            )));
        }
        ChunkLength::new(self.chunk_bits)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CodecParams {
    /// Maximum synchronized Euclidean distance, in coordinate units.
    pub eps: f64,
    pub eps_f: f64,
    pub block_size: usize,
    pub r_ret: f64,
    /// Point precision used for start points, block ends and corrections.
    pub eps_p: f64,
    pub eps_t: f64,
    pub chunk: ChunkLength,
    pub v_max: f64,
}

impl CodecParams {
    pub fn from_profile(eps: f64, profile: &Profile) -> Result<Self> {
        profile.validate()?;
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "error bound must be positive, got {eps}"
            )));
        }
        let DatasetConstants { a, b, c, d } = profile.constants;
        let params = Self {
            eps,
            eps_f: eps / a,
            block_size: ((b * eps + c).round() as usize).max(2),
            r_ret: (d / eps.sqrt()).min(1.0),
            eps_p: profile.eps_p_factor * eps,
            eps_t: profile.eps_t,
            chunk: ChunkLength::new(profile.chunk_bits)?,
            v_max: profile.v_max,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |label: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "{label} must be positive, got {v}"
                )))
            }
        };
        positive("eps", self.eps)?;
        positive("eps_f", self.eps_f)?;
        positive("eps_p", self.eps_p)?;
        positive("eps_t", self.eps_t)?;
        positive("r_ret", self.r_ret)?;
        positive("v_max", self.v_max)?;
        if self.r_ret > 1.0 {
            return Err(Error::InvalidArgument(format!(
                "retention rate must not exceed 1, got {}",
                self.r_ret
            )));
        }
        if self.eps_p > self.eps {
            return Err(Error::InvalidArgument(format!(
                "eps_p ({}) must not exceed eps ({})",
                self.eps_p, self.eps
            )));
        }
        if self.block_size < 2 {
            return Err(Error::InvalidArgument(format!(
                "block size must be at least 2, got {}",
                self.block_size
            )));
        }
        Ok(())
    }

    pub fn block_params(&self) -> Result<BlockParams> {
        BlockParams::new(QuantStep::new(self.eps_f)?, self.r_ret, self.block_size)
    }
}
