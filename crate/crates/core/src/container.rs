//! The `.plc` container: in-memory model and its bit-exact serialization.
//!
//! Layout (bits packed MSB-first, signed values as enhanced Zigzag + Varint,
//! unsigned values as Varint, both with the container's chunk length `l`):
//!
//! ```text
//! magic "PLTC" | version u8 | dim u8 | flags u8 | l u8
//! dt, eps, eps_t, eps_p, eps_f          f64 little-endian each
//! block size                            varint
//! #sub-trajectories, #outliers, #corrections   varint each
//! outliers:    time-index delta (varint), dim coordinate-index deltas (signed)
//! corrections: time-index delta (varint), dim quantized offsets (signed)
//! per sub-trajectory:
//!     t0 index delta from the previous sub-trajectory's t0 index (varint)
//!     start point indices, step eps_p (dim signed)
//!     sample count |T^u| (varint)
//!     per dimension, per block: end-index delta (signed, step eps_p/sqrt(dim)),
//!                               c_F (varint), c_F coefficients (signed, step eps_f)
//! zero padding to a byte boundary
//! ```

use crate::block::EncodedBlock;
use crate::codec::{
    read_signed, varint_read, varint_write, write_signed, BitReader, BitWriter, ChunkLength,
    QuantStep,
};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"PLTC";
pub const VERSION: u8 = 1;
pub const FILE_EXTENSION: &str = "plc";
/// Largest block size a container may declare.
pub const MAX_BLOCK_SIZE: usize = 1 << 20;

/// One point stored outside every sub-trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutlierEntry {
    pub time_index: u64,
    /// Absolute coordinate indices, step `eps / sqrt(dim)`.
    pub coords: Vec<i64>,
}

/// Residual for an original point whose reconstruction missed the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionEntry {
    pub time_index: u64,
    /// Per-dimension offsets, step `eps_p / sqrt(dim)`.
    pub offsets: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRecord {
    /// Change of the cumulative end-point index since the previous block.
    pub end_delta: i64,
    pub spectrum: EncodedBlock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubTrajectory {
    /// Grid origin as a multiple of `eps_t`.
    pub t0_index: u64,
    /// First sample per dimension, step `eps_p`.
    pub start: Vec<i64>,
    /// Number of uniform samples, at least 2.
    pub samples: usize,
    /// `blocks[dim][j]`.
    pub blocks: Vec<Vec<BlockRecord>>,
}

impl SubTrajectory {
    pub fn velocity_count(&self) -> usize {
        self.samples - 1
    }
}

/// Number of velocities in each block of a series with `velocities` steps.
pub fn block_lengths(velocities: usize, block_size: usize) -> impl Iterator<Item = usize> {
    (0..velocities.div_ceil(block_size)).map(move |j| block_size.min(velocities - j * block_size))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompressedTrajectory {
    pub dim: usize,
    pub chunk: ChunkLength,
    pub dt: f64,
    pub eps: f64,
    pub eps_t: f64,
    pub eps_p: f64,
    pub eps_f: f64,
    pub block_size: usize,
    pub outliers: Vec<OutlierEntry>,
    pub corrections: Vec<CorrectionEntry>,
    pub segments: Vec<SubTrajectory>,
}

impl CompressedTrajectory {
    pub fn empty(
        dim: usize,
        chunk: ChunkLength,
        eps: f64,
        eps_t: f64,
        eps_p: f64,
        eps_f: f64,
        block_size: usize,
    ) -> Self {
        Self {
            dim,
            chunk,
            dt: eps_t,
            eps,
            eps_t,
            eps_p,
            eps_f,
            block_size,
            outliers: Vec::new(),
            corrections: Vec::new(),
            segments: Vec::new(),
        }
    }

    fn dim_sqrt(&self) -> f64 {
        (self.dim as f64).sqrt()
    }

    pub fn point_step(&self) -> Result<QuantStep> {
        QuantStep::new(self.eps_p)
    }

    /// `eps_d = eps_p / sqrt(dim)`: step for block ends and corrections.
    pub fn dimension_step(&self) -> Result<QuantStep> {
        QuantStep::new(self.eps_p / self.dim_sqrt())
    }

    pub fn outlier_step(&self) -> Result<QuantStep> {
        QuantStep::new(self.eps / self.dim_sqrt())
    }

    pub fn frequency_step(&self) -> Result<QuantStep> {
        QuantStep::new(self.eps_f)
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        serialize(self)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        parse(bytes)
    }

    fn check_scalars(&self, err: fn(String) -> Error) -> Result<()> {
        if self.dim == 0 || self.dim > u8::MAX as usize {
            return Err(err(format!("dimension {} outside 1..=255", self.dim)));
        }
        for (label, v) in [
            ("dt", self.dt),
            ("eps", self.eps),
            ("eps_t", self.eps_t),
            ("eps_p", self.eps_p),
            ("eps_f", self.eps_f),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(err(format!("{label} must be finite and positive, got {v}")));
            }
        }
        if !(1..=MAX_BLOCK_SIZE).contains(&self.block_size) {
            return Err(err(format!("block size {} out of range", self.block_size)));
        }
        Ok(())
    }

    fn check_consistency(&self) -> Result<()> {
        let err = Error::InvalidArgument;
        self.check_scalars(err)?;
        let mut prev: Option<u64> = None;
        for o in &self.outliers {
            if o.coords.len() != self.dim {
                return Err(err("outlier has the wrong dimension".into()));
            }
            if prev.is_some_and(|p| p >= o.time_index) {
                return Err(err(
                    "outlier time indices must be strictly increasing".into()
                ));
            }
            prev = Some(o.time_index);
        }
        let mut prev: Option<u64> = None;
        for c in &self.corrections {
            if c.offsets.len() != self.dim {
                return Err(err("correction has the wrong dimension".into()));
            }
            if prev.is_some_and(|p| p >= c.time_index) {
                return Err(err(
                    "correction time indices must be strictly increasing".into()
                ));
            }
            prev = Some(c.time_index);
        }
        let mut prev = 0u64;
        for s in &self.segments {
            if s.t0_index < prev {
                return Err(err(
                    "sub-trajectory start indices must be non-decreasing".into()
                ));
            }
            prev = s.t0_index;
            if s.start.len() != self.dim || s.blocks.len() != self.dim {
                return Err(err("sub-trajectory has the wrong dimension".into()));
            }
            if s.samples < 2 {
                return Err(err("sub-trajectory needs at least two samples".into()));
            }
            let lengths: Vec<usize> = block_lengths(s.velocity_count(), self.block_size).collect();
            for blocks in &s.blocks {
                if blocks.len() != lengths.len() {
                    return Err(err(format!(
                        "expected {} blocks, found {}",
                        lengths.len(),
                        blocks.len()
                    )));
                }
                for (b, &m) in blocks.iter().zip(&lengths) {
                    if b.spectrum.c_f() >= m.max(1) && b.spectrum.c_f() > 0 {
                        return Err(err(
                            "block keeps more coefficients than it has velocities".into()
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn write_unsigned(w: &mut BitWriter, u: u64, l: ChunkLength) -> Result<()> {
    varint_write(w, u, l, false)
}

fn write_count(w: &mut BitWriter, n: usize, l: ChunkLength) -> Result<()> {
    write_unsigned(w, n as u64, l)
}

/// Serializes a model. Fails if the model is internally inconsistent or an
/// index has no code.
pub fn serialize(model: &CompressedTrajectory) -> Result<Vec<u8>> {
    model.check_consistency()?;
    let l = model.chunk;
    let mut w = BitWriter::with_capacity(64);
    w.write_bytes(&MAGIC);
    w.write_bytes(&[VERSION, model.dim as u8, 0, l.get()]);
    for v in [model.dt, model.eps, model.eps_t, model.eps_p, model.eps_f] {
        w.write_bytes(&v.to_le_bytes());
    }
    write_count(&mut w, model.block_size, l)?;
    write_count(&mut w, model.segments.len(), l)?;
    write_count(&mut w, model.outliers.len(), l)?;
    write_count(&mut w, model.corrections.len(), l)?;

    let mut prev_time = 0u64;
    let mut prev_coords = vec![0i64; model.dim];
    for o in &model.outliers {
        write_unsigned(&mut w, o.time_index - prev_time, l)?;
        prev_time = o.time_index;
        for (p, &c) in prev_coords.iter_mut().zip(&o.coords) {
            let delta = c
                .checked_sub(*p)
                .ok_or_else(|| Error::Range("outlier coordinate delta overflows".into()))?;
            write_signed(&mut w, delta, l)?;
            *p = c;
        }
    }

    let mut prev_time = 0u64;
    for c in &model.corrections {
        write_unsigned(&mut w, c.time_index - prev_time, l)?;
        prev_time = c.time_index;
        for &o in &c.offsets {
            write_signed(&mut w, o, l)?;
        }
    }

    let mut prev_t0 = 0u64;
    for s in &model.segments {
        write_unsigned(&mut w, s.t0_index - prev_t0, l)?;
        prev_t0 = s.t0_index;
        for &p in &s.start {
            write_signed(&mut w, p, l)?;
        }
        write_count(&mut w, s.samples, l)?;
        for blocks in &s.blocks {
            for b in blocks {
                write_signed(&mut w, b.end_delta, l)?;
                write_count(&mut w, b.spectrum.c_f(), l)?;
                for &q in &b.spectrum.coeffs {
                    write_signed(&mut w, q, l)?;
                }
            }
        }
    }
    Ok(w.finish())
}

fn read_count(r: &mut BitReader<'_>, l: ChunkLength, what: &str) -> Result<usize> {
    let n = varint_read(r, l, false)?;
    // every counted item occupies at least one bit, so larger counts cannot be genuine
    if n > r.remaining_bits() as u64 {
        return Err(Error::Truncated("counted entries"));
    }
    usize::try_from(n).map_err(|_| Error::Corrupt(format!("{what} count {n} is too large")))
}

fn read_f64(r: &mut BitReader<'_>) -> Result<f64> {
    Ok(f64::from_le_bytes(r.read_bytes::<8>("header scalar")?))
}

fn add_index(prev: u64, delta: u64) -> Result<u64> {
    prev.checked_add(delta)
        .ok_or_else(|| Error::Corrupt("time index overflows".into()))
}

pub fn parse(bytes: &[u8]) -> Result<CompressedTrajectory> {
    let mut r = BitReader::new(bytes);
    let magic = r.read_bytes::<4>("magic")?;
    if magic != MAGIC {
        return Err(Error::Format(format!("bad magic {magic:02x?}")));
    }
    let [version, dim, flags, l] = r.read_bytes::<4>("header")?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    if flags != 0 {
        return Err(Error::Format(format!("unknown flags {flags:#04x}")));
    }
    if dim == 0 {
        return Err(Error::Format("dimension 0".into()));
    }
    let l = ChunkLength::new(l).map_err(|_| Error::Format(format!("bad chunk length {l}")))?;
    let dim = usize::from(dim);
    let dt = read_f64(&mut r)?;
    let eps = read_f64(&mut r)?;
    let eps_t = read_f64(&mut r)?;
    let eps_p = read_f64(&mut r)?;
    let eps_f = read_f64(&mut r)?;
    let block_size = varint_read(&mut r, l, false)?;
    if !(1..=MAX_BLOCK_SIZE as u64).contains(&block_size) {
        return Err(Error::Format(format!(
            "block size {block_size} out of range"
        )));
    }
    let block_size = block_size as usize;
    let mut model = CompressedTrajectory::empty(dim, l, eps, eps_t, eps_p, eps_f, block_size);
    model.dt = dt;
    model.check_scalars(Error::Format)?;

    let n_segments = read_count(&mut r, l, "sub-trajectory")?;
    let n_outliers = read_count(&mut r, l, "outlier")?;
    let n_corrections = read_count(&mut r, l, "correction")?;

    let mut time = 0u64;
    let mut coords = vec![0i64; dim];
    model.outliers.reserve(n_outliers);
    for i in 0..n_outliers {
        let delta = varint_read(&mut r, l, false)?;
        if i > 0 && delta == 0 {
            return Err(Error::Corrupt("repeated outlier timestamp".into()));
        }
        time = add_index(time, delta)?;
        for c in coords.iter_mut() {
            *c = c
                .checked_add(read_signed(&mut r, l)?)
                .ok_or_else(|| Error::Corrupt("outlier coordinate overflows".into()))?;
        }
        model.outliers.push(OutlierEntry {
            time_index: time,
            coords: coords.clone(),
        });
    }

    let mut time = 0u64;
    model.corrections.reserve(n_corrections);
    for i in 0..n_corrections {
        let delta = varint_read(&mut r, l, false)?;
        if i > 0 && delta == 0 {
            return Err(Error::Corrupt("repeated correction timestamp".into()));
        }
        time = add_index(time, delta)?;
        let offsets = (0..dim)
            .map(|_| read_signed(&mut r, l))
            .collect::<Result<Vec<_>>>()?;
        model.corrections.push(CorrectionEntry {
            time_index: time,
            offsets,
        });
    }

    let mut t0 = 0u64;
    model.segments.reserve(n_segments);
    for _ in 0..n_segments {
        t0 = add_index(t0, varint_read(&mut r, l, false)?)?;
        let start = (0..dim)
            .map(|_| read_signed(&mut r, l))
            .collect::<Result<Vec<_>>>()?;
        let samples = varint_read(&mut r, l, false)?;
        if samples < 2 {
            return Err(Error::Corrupt(format!(
                "sub-trajectory with {samples} samples"
            )));
        }
        // each block costs at least two bits per dimension
        if (samples - 1).div_ceil(block_size as u64) > r.remaining_bits() as u64 {
            return Err(Error::Truncated("sub-trajectory blocks"));
        }
        let samples = samples as usize;
        let mut per_dim = Vec::with_capacity(dim);
        for _ in 0..dim {
            let mut blocks = Vec::new();
            for m in block_lengths(samples - 1, block_size) {
                let end_delta = read_signed(&mut r, l)?;
                let c_f = read_count(&mut r, l, "coefficient")?;
                if c_f >= m && c_f > 0 {
                    return Err(Error::MalformedBlock(format!(
                        "{c_f} coefficients in a block of {m} velocities"
                    )));
                }
                let coeffs = (0..c_f)
                    .map(|_| read_signed(&mut r, l))
                    .collect::<Result<Vec<_>>>()?;
                blocks.push(BlockRecord {
                    end_delta,
                    spectrum: EncodedBlock { coeffs },
                });
            }
            per_dim.push(blocks);
        }
        model.segments.push(SubTrajectory {
            t0_index: t0,
            start,
            samples,
            blocks: per_dim,
        });
    }

    let rest = r.remaining_bits();
    if rest >= 8 || (rest > 0 && r.read_bits(rest as u32, "padding")? != 0) {
        return Err(Error::Corrupt(format!(
            "{rest} bits of trailing data after the declared entries"
        )));
    }
    Ok(model)
}

const ARCHIVE_PREFIX_BITS: u8 = 7;

/// Concatenates containers, each prefixed by its byte length as a 7-bit-chunk Varint.
pub fn write_archive<B: AsRef<[u8]>>(containers: &[B]) -> Vec<u8> {
    let l = ChunkLength::new(ARCHIVE_PREFIX_BITS).expect("valid chunk length");
    let mut w = BitWriter::new();
    for c in containers {
        let c = c.as_ref();
        varint_write(&mut w, c.len() as u64, l, false).expect("no omission requested");
        w.write_bytes(c);
    }
    w.finish()
}

/// Splits an archive into its container byte ranges.
pub fn read_archive(bytes: &[u8]) -> Result<Vec<&[u8]>> {
    let l = ChunkLength::new(ARCHIVE_PREFIX_BITS).expect("valid chunk length");
    let mut out = Vec::new();
    let mut offset = 0usize;
    while offset < bytes.len() {
        let mut r = BitReader::new(&bytes[offset..]);
        let len = varint_read(&mut r, l, false)?;
        // 8-bit prefix groups keep the reader byte aligned
        let start = offset + r.position() / 8;
        let end = usize::try_from(len)
            .ok()
            .and_then(|len| start.checked_add(len))
            .filter(|&end| end <= bytes.len())
            .ok_or(Error::Truncated("archive entry"))?;
        out.push(&bytes[start..end]);
        offset = end;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_model() -> CompressedTrajectory {
        let mut m =
            CompressedTrajectory::empty(2, ChunkLength::new(2).unwrap(), 10.0, 1.0, 5.0, 16.0, 4);
        m.dt = 2.0;
        m.outliers = vec![
            OutlierEntry {
                time_index: 3,
                coords: vec![10, -4],
            },
            OutlierEntry {
                time_index: 90,
                coords: vec![-7, 0],
            },
        ];
        m.corrections = vec![CorrectionEntry {
            time_index: 40,
            offsets: vec![1, -2],
        }];
        m.segments = vec![SubTrajectory {
            t0_index: 5,
            start: vec![100, -3],
            samples: 7,
            blocks: vec![
                vec![
                    BlockRecord {
                        end_delta: 4,
                        spectrum: EncodedBlock {
                            coeffs: vec![3, -1],
                        },
                    },
                    BlockRecord {
                        end_delta: -2,
                        spectrum: EncodedBlock::default(),
                    },
                ],
                vec![
                    BlockRecord {
                        end_delta: 0,
                        spectrum: EncodedBlock::default(),
                    },
                    BlockRecord {
                        end_delta: 9,
                        spectrum: EncodedBlock { coeffs: vec![1] },
                    },
                ],
            ],
        }];
        m
    }

    #[test]
    fn round_trip() {
        let m = sample_model();
        let bytes = serialize(&m).unwrap();
        assert_eq!(&bytes[..4], b"PLTC");
        let back = parse(&bytes).unwrap();
        assert_eq!(back, m);
        assert_eq!(serialize(&back).unwrap(), bytes);
    }

    #[test]
    fn empty_model_is_small() {
        let m =
            CompressedTrajectory::empty(3, ChunkLength::new(2).unwrap(), 1.0, 0.01, 0.5, 1.5, 100);
        let bytes = serialize(&m).unwrap();
        assert!(bytes.len() < 64);
        assert_eq!(parse(&bytes).unwrap(), m);
    }

    #[test]
    fn block_lengths_cover_the_series() {
        assert_eq!(block_lengths(10, 4).collect::<Vec<_>>(), vec![4, 4, 2]);
        assert_eq!(block_lengths(8, 4).collect::<Vec<_>>(), vec![4, 4]);
        assert_eq!(block_lengths(1, 4).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn bad_header() {
        let mut bytes = serialize(&sample_model()).unwrap();
        bytes[0] = b'X';
        assert!(matches!(parse(&bytes), Err(Error::Format(_))));
        let mut bytes = serialize(&sample_model()).unwrap();
        bytes[4] = 9;
        assert!(matches!(parse(&bytes), Err(Error::Format(_))));
        let mut bytes = serialize(&sample_model()).unwrap();
        bytes[6] = 1;
        assert!(matches!(parse(&bytes), Err(Error::Format(_))));
    }

    #[test]
    fn every_prefix_is_truncated() {
        let bytes = serialize(&sample_model()).unwrap();
        for cut in 0..bytes.len() {
            assert!(
                matches!(parse(&bytes[..cut]), Err(Error::Truncated(_))),
                "prefix {cut}"
            );
        }
    }

    #[test]
    fn trailing_bytes_are_corrupt() {
        let mut bytes = serialize(&sample_model()).unwrap();
        bytes.push(0);
        assert!(matches!(parse(&bytes), Err(Error::Corrupt(_))));
    }

    #[test]
    fn inconsistent_model_rejected() {
        let mut m = sample_model();
        m.segments[0].blocks[0].pop();
        assert!(matches!(serialize(&m), Err(Error::InvalidArgument(_))));
        let mut m = sample_model();
        m.outliers.swap(0, 1);
        assert!(serialize(&m).is_err());
    }

    #[test]
    fn archive_round_trip() {
        let a = serialize(&sample_model()).unwrap();
        let big = vec![7u8; 300];
        let archive = write_archive(&[a.as_slice(), &[], &big]);
        let parts = read_archive(&archive).unwrap();
        assert_eq!(parts, vec![a.as_slice(), &[][..], big.as_slice()]);
        assert!(read_archive(&archive[..archive.len() - 1]).is_err());
    }
}
