//! Error-bounded lossy compression of timestamped trajectories.
//!
//! A trajectory is split into well-sampled sub-trajectories, each resampled on
//! a uniform grid. Per dimension, the grid is cut into blocks of velocities
//! whose zero-centered DCT spectra are truncated and quantized. Points too
//! isolated to resample are stored verbatim, and any original point whose
//! reconstruction misses the error bound gets an explicit correction, so every
//! original timestamp decodes within `eps`.
//!
//! ```
//! use trajzip::{params::{CodecParams, Profile}, pipeline, reconstruct, Trajectory};
//!
//! let times: Vec<f64> = (0..200).map(f64::from).collect();
//! let coords: Vec<f64> = times.iter().flat_map(|&t| [t * 4.0, t * 0.5]).collect();
//! let traj = Trajectory::new(2, times.clone(), coords).unwrap();
//! let params = CodecParams::from_profile(10.0, &Profile::geolife()).unwrap();
//! let model = pipeline::compress(&traj, &params).unwrap();
//! let back = reconstruct::query(&model, &times).unwrap();
//! assert!((back[100][0] - 400.0).abs() <= 10.0);
//! ```

pub mod block;
pub mod codec;
pub mod container;
pub mod error;
pub mod metrics;
pub mod params;
pub mod pipeline;
pub mod reconstruct;
pub mod synth;
pub mod trajectory;
pub mod transform;

pub use container::CompressedTrajectory;
pub use error::{Error, Result};
pub use params::{CodecParams, Profile};
pub use reconstruct::Decoder;
pub use trajectory::Trajectory;
