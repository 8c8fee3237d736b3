use crate::error::{Error, Result};

/// Timestamped points in `dim` Cartesian dimensions, strictly increasing in time.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    dim: usize,
    times: Vec<f64>,
    // row-major, `dim` values per point
    coords: Vec<f64>,
}

impl Trajectory {
    pub fn new(dim: usize, times: Vec<f64>, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput(
                "trajectory needs at least one dimension".into(),
            ));
        }
        if coords.len() != times.len() * dim {
            return Err(Error::InvalidInput(format!(
                "{} coordinates do not match {} points of dimension {dim}",
                coords.len(),
                times.len()
            )));
        }
        if let Some(i) = times.iter().position(|t| !t.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "point {i} has a non-finite timestamp"
            )));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "point {} has a non-finite coordinate",
                i / dim
            )));
        }
        if let Some(i) = times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(format!(
                "timestamps must be strictly increasing (point {} at t={})",
                i + 1,
                times[i + 1]
            )));
        }
        Ok(Self { dim, times, coords })
    }

    /// Builds from `(t, point)` pairs.
    pub fn from_points<P: AsRef<[f64]>>(
        dim: usize,
        points: impl IntoIterator<Item = (f64, P)>,
    ) -> Result<Self> {
        let mut times = Vec::new();
        let mut coords = Vec::new();
        for (t, p) in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::InvalidInput(format!(
                    "point at t={t} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            times.push(t);
            coords.extend_from_slice(p);
        }
        Self::new(dim, times, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn time(&self, i: usize) -> f64 {
        self.times[i]
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, &[f64])> + '_ {
        self.times
            .iter()
            .copied()
            .zip(self.coords.chunks_exact(self.dim))
    }
}

/// Drops every point whose timestamp repeats an earlier one, keeping the first.
/// Input must be sorted by time (non-decreasing).
pub fn dedup_timestamps(dim: usize, times: &mut Vec<f64>, coords: &mut Vec<f64>) -> usize {
    let mut keep_t = Vec::with_capacity(times.len());
    let mut keep_c = Vec::with_capacity(coords.len());
    for (i, &t) in times.iter().enumerate() {
        if keep_t.last() == Some(&t) {
            continue;
        }
        keep_t.push(t);
        keep_c.extend_from_slice(&coords[i * dim..(i + 1) * dim]);
    }
    let removed = times.len() - keep_t.len();
    *times = keep_t;
    *coords = keep_c;
    removed
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
