//! Seeded synthetic trajectories for tests, benchmarks and the demo.
//!
//! A vehicle cycles through accelerate, cruise, brake and stop phases while its
//! heading drifts smoothly. Samples can carry GPS-like noise, irregular
//! intervals, long recording gaps and isolated position spikes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::trajectory::Trajectory;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub dim: usize,
    pub points: usize,
    /// Nominal seconds between samples.
    pub interval: f64,
    /// Each interval is scaled by `1 + U(-j, j)`.
    pub interval_jitter: f64,
    /// Timestamps are whole multiples of this.
    pub eps_t: f64,
    /// Cruise speeds are drawn from this range (m/s).
    pub cruise_speed: (f64, f64),
    /// Acceleration and braking magnitude (m/s^2).
    pub accel: f64,
    /// Standard deviation of additive position noise (m).
    pub position_noise: f64,
    /// Standard deviation of the heading rate (rad/s).
    pub turn_rate: f64,
    /// Per-sample probability of a recording gap.
    pub gap_probability: f64,
    /// Per-sample probability of a far-off position spike.
    pub spike_probability: f64,
}

impl SynthConfig {
    /// Regular 1 Hz sampling, light noise.
    pub fn smooth(dim: usize, points: usize) -> Self {
        Self {
            dim,
            points,
            interval: 1.0,
            interval_jitter: 0.0,
            eps_t: 1.0,
            cruise_speed: (8.0, 30.0),
            accel: 1.5,
            position_noise: 1.0,
            turn_rate: 0.02,
            gap_probability: 0.0,
            spike_probability: 0.0,
        }
    }

    /// Regular sampling with heavy noise and sharper turns.
    pub fn jittery(dim: usize, points: usize) -> Self {
        Self {
            position_noise: 6.0,
            turn_rate: 0.08,
            ..Self::smooth(dim, points)
        }
    }

    /// Irregular 1-5 s sampling with gaps and spikes.
    pub fn irregular(dim: usize, points: usize) -> Self {
        Self {
            interval: 3.0,
            interval_jitter: 0.66,
            eps_t: 1.0,
            position_noise: 3.0,
            gap_probability: 2e-4,
            spike_probability: 2e-4,
            ..Self::smooth(dim, points)
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Phase {
    Accelerate { target: f64 },
    Cruise { until: f64 },
    Brake { target: f64 },
    Stop { until: f64 },
}

/// Generates one trajectory; the same seed yields the same points.
pub fn generate(config: &SynthConfig, seed: u64) -> Trajectory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = config.dim.max(1);
    let unit = Normal::new(0.0, 1.0).expect("unit normal");
    let noise = config.position_noise.max(0.0);

    let mut pos = vec![0.0; dim];
    for p in pos.iter_mut() {
        *p = rng.gen_range(-1e4..1e4);
    }
    let mut heading: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut heading_rate = 0.0;
    let mut climb_rate = 0.0;
    let mut speed = 0.0;
    let mut phase = Phase::Accelerate {
        target: rng.gen_range(config.cruise_speed.0..config.cruise_speed.1),
    };

    let mut t = (rng.gen_range(0.0..1000.0) / config.eps_t).round() * config.eps_t;
    let mut times = Vec::with_capacity(config.points);
    let mut coords = Vec::with_capacity(config.points * dim);

    for i in 0..config.points {
        if i > 0 {
            let scale = 1.0 + rng.gen_range(-1.0..=1.0) * config.interval_jitter;
            let mut step = config.interval * scale;
            if rng.gen_bool(config.gap_probability.clamp(0.0, 1.0)) {
                step += config.interval * rng.gen_range(300.0..1000.0);
            }
            let step = ((step / config.eps_t).round() * config.eps_t).max(config.eps_t);
            advance(
                config,
                &mut rng,
                &unit,
                step,
                t,
                &mut phase,
                &mut speed,
                &mut heading,
                &mut heading_rate,
                &mut climb_rate,
                &mut pos,
            );
            t += step;
            // keep timestamps exact multiples of eps_t
            t = (t / config.eps_t).round() * config.eps_t;
        }
        times.push(t);
        let spike = rng.gen_bool(config.spike_probability.clamp(0.0, 1.0));
        for &p in &pos {
            let mut v = p + noise * unit.sample(&mut rng);
            if spike {
                v += rng.gen_range(3000.0..8000.0);
            }
            coords.push(v);
        }
    }
    Trajectory::new(dim, times, coords).expect("generator yields a valid trajectory")
}

#[allow(clippy::too_many_arguments)]
fn advance(
    config: &SynthConfig,
    rng: &mut ChaCha8Rng,
    unit: &Normal<f64>,
    step: f64,
    now: f64,
    phase: &mut Phase,
    speed: &mut f64,
    heading: &mut f64,
    heading_rate: &mut f64,
    climb_rate: &mut f64,
    pos: &mut [f64],
) {
    // sub-steps of at most one second keep the integration smooth across gaps
    let n = step.ceil().clamp(1.0, 60.0) as usize;
    let h = step / n as f64;
    for s in 0..n {
        let clock = now + h * s as f64;
        match *phase {
            Phase::Accelerate { target } => {
                *speed = (*speed + config.accel * h).min(target);
                if *speed >= target {
                    *phase = Phase::Cruise {
                        until: clock + rng.gen_range(60.0..600.0),
                    };
                }
            }
            Phase::Cruise { until } => {
                if clock >= until {
                    *phase = Phase::Brake {
                        target: if rng.gen_bool(0.5) {
                            0.0
                        } else {
                            rng.gen_range(2.0..8.0)
                        },
                    };
                }
            }
            Phase::Brake { target } => {
                *speed = (*speed - config.accel * h).max(target);
                if *speed <= target {
                    *phase = if target == 0.0 {
                        Phase::Stop {
                            until: clock + rng.gen_range(5.0..60.0),
                        }
                    } else {
                        Phase::Accelerate {
                            target: rng.gen_range(config.cruise_speed.0..config.cruise_speed.1),
                        }
                    };
                }
            }
            Phase::Stop { until } => {
                if clock >= until {
                    *phase = Phase::Accelerate {
                        target: rng.gen_range(config.cruise_speed.0..config.cruise_speed.1),
                    };
                }
            }
        }
        // mean-reverting heading rate
        let theta = 0.05;
        *heading_rate += -theta * *heading_rate * h
            + config.turn_rate * (2.0 * theta * h).sqrt() * unit.sample(rng);
        *heading += *heading_rate * h;
        *climb_rate += -theta * *climb_rate * h + 0.3 * (2.0 * theta * h).sqrt() * unit.sample(rng);

        pos[0] += *speed * heading.cos() * h;
        if pos.len() > 1 {
            pos[1] += *speed * heading.sin() * h;
        }
        if pos.len() > 2 {
            pos[2] += *climb_rate * h;
        }
    }
}
