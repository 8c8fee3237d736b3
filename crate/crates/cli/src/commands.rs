use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use trajzip::metrics::{trend_check, write_csv, write_json_lines, EvalReport, LinearFit};
use trajzip::synth::{generate, SynthConfig};
use trajzip::{pipeline, CodecParams, CompressedTrajectory, Decoder, Profile, Trajectory};

use crate::error::{CliError, CliResult};
use crate::io::{list_files, read_timestamps, read_trajectory, stem, trajectory_csv, write_atomic};
use crate::{CompressArgs, DecompressArgs, EvalArgs, Format, Kind, SynthArgs};

const CONTAINER_EXT: &str = trajzip::container::FILE_EXTENSION;

struct Compressed {
    name: String,
    points: usize,
    bytes: usize,
    corrections: usize,
    outliers: usize,
}

fn compress_file(
    input: &Path,
    output: &Path,
    params: &CodecParams,
    dedup: bool,
) -> CliResult<Compressed> {
    let traj = read_trajectory(input, dedup)?;
    let model = pipeline::compress(&traj, params)
        .map_err(|e| CliError::from(e).context(input.display()))?;
    let bytes = model.to_bytes()?;
    write_atomic(output, &bytes)?;
    Ok(Compressed {
        name: stem(input),
        points: traj.len(),
        bytes: bytes.len(),
        corrections: model.corrections.len(),
        outliers: model.outliers.len(),
    })
}

pub fn compress(args: CompressArgs) -> CliResult<()> {
    let params = args.params.codec(args.epsilon)?;
    let jobs: Vec<(PathBuf, PathBuf)> = if args.input.is_dir() {
        let out_dir = args.output.clone().unwrap_or_else(|| args.input.clone());
        fs::create_dir_all(&out_dir)?;
        let files = list_files(&args.input, "csv")?;
        if files.is_empty() {
            return Err(CliError::Data(format!(
                "{}: no .csv files",
                args.input.display()
            )));
        }
        files
            .into_iter()
            .map(|f| {
                let out = out_dir.join(format!("{}.{CONTAINER_EXT}", stem(&f)));
                (f, out)
            })
            .collect()
    } else {
        let out = args
            .output
            .clone()
            .unwrap_or_else(|| args.input.with_extension(CONTAINER_EXT));
        vec![(args.input.clone(), out)]
    };

    let results: Vec<CliResult<Compressed>> = jobs
        .par_iter()
        .map(|(input, output)| compress_file(input, output, &params, args.dedup))
        .collect();
    let mut stdout = std::io::stdout().lock();
    for r in results {
        let c = r?;
        writeln!(
            stdout,
            "{}\t{} points\t{} bytes\t{} corrections\t{} outliers",
            c.name, c.points, c.bytes, c.corrections, c.outliers
        )?;
    }
    Ok(())
}

fn load_container(path: &Path) -> CliResult<CompressedTrajectory> {
    let bytes = fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    CompressedTrajectory::from_bytes(&bytes).map_err(|e| CliError::from(e).context(path.display()))
}

fn emit(output: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match output {
        Some(path) => write_atomic(path, bytes),
        None => Ok(std::io::stdout().lock().write_all(bytes)?),
    }
}

pub fn decompress(args: DecompressArgs) -> CliResult<()> {
    let model = load_container(&args.input)?;
    let decoder =
        Decoder::new(&model).map_err(|e| CliError::from(e).context(args.input.display()))?;
    let dim = model.dim;
    let csv = if let Some(at) = &args.at {
        let times = read_timestamps(at)?;
        let points = decoder.query_many(&times).map_err(|e| match e {
            trajzip::Error::OutOfRange(t) => CliError::Data(format!(
                "timestamp {t} is outside the compressed trajectory"
            )),
            other => other.into(),
        })?;
        trajectory_csv(
            dim,
            times.iter().copied().zip(points.iter().map(Vec::as_slice)),
        )?
    } else {
        let rows: Vec<(f64, Vec<f64>)> = decoder
            .series()
            .iter()
            .flat_map(|s| (0..s.len()).map(move |j| (s.time_at(j), s.sample(j))))
            .collect();
        trajectory_csv(dim, rows.iter().map(|(t, p)| (*t, p.as_slice())))?
    };
    emit(args.output.as_deref(), &csv)
}

fn load_originals(path: &Path, dedup: bool) -> CliResult<Vec<(String, Trajectory)>> {
    let files = if path.is_dir() {
        list_files(path, "csv")?
    } else {
        vec![path.to_path_buf()]
    };
    if files.is_empty() {
        return Err(CliError::Data(format!("{}: no .csv files", path.display())));
    }
    files
        .par_iter()
        .map(|f| Ok((stem(f), read_trajectory(f, dedup)?)))
        .collect()
}

#[derive(Serialize)]
struct SweepRow {
    epsilon: f64,
    points: usize,
    compression_ratio: f64,
    max_sed: f64,
    mean_sed: f64,
    mean_sed_over_epsilon: f64,
    corrected_fraction: f64,
    ratio_non_increasing: bool,
    mean_sed_slope: f64,
    mean_sed_r_squared: f64,
}

pub fn eval(args: EvalArgs) -> CliResult<()> {
    let originals = load_originals(&args.originals, args.dedup)?;
    let out = match &args.epsilon_list {
        Some(list) => sweep(&args, &originals, list)?,
        None => {
            let compressed = args
                .compressed
                .as_deref()
                .expect("clap requires compressed without a sweep");
            compare(&args, &originals, compressed)?
        }
    };
    emit(args.output.as_deref(), &out)
}

fn compare(
    args: &EvalArgs,
    originals: &[(String, Trajectory)],
    compressed: &Path,
) -> CliResult<Vec<u8>> {
    let containers = if compressed.is_dir() {
        list_files(compressed, CONTAINER_EXT)?
    } else {
        vec![compressed.to_path_buf()]
    };
    let names: Vec<String> = containers.iter().map(|p| stem(p)).collect();
    let expected: Vec<&String> = originals.iter().map(|(n, _)| n).collect();
    let matched = if compressed.is_dir() {
        names.iter().collect::<Vec<_>>() == expected
    } else {
        originals.len() == 1
    };
    if !matched {
        return Err(CliError::Data(format!(
            "trajectory and container sets differ: {} originals, {} containers",
            originals.len(),
            names.len()
        )));
    }
    let mut reports: Vec<EvalReport> = originals
        .par_iter()
        .zip(containers.par_iter())
        .map(|((name, traj), path)| {
            let bytes =
                fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            let model = CompressedTrajectory::from_bytes(&bytes)
                .map_err(|e| CliError::from(e).context(path.display()))?;
            let report = EvalReport::evaluate(name, traj, &bytes)
                .map_err(|e| CliError::from(e).context(path.display()))?;
            if report.max_sed > model.eps {
                eprintln!(
                    "trajzip: {name}: max SED {} exceeds the bound {}",
                    report.max_sed, model.eps
                );
            }
            Ok(report)
        })
        .collect::<CliResult<_>>()?;
    let total = EvalReport::aggregate("ALL", &reports)?;
    reports.push(total);
    let mut buf = Vec::new();
    match args.format {
        Format::Csv => write_csv(&mut buf, &reports)?,
        Format::Jsonl => write_json_lines(&mut buf, &reports)?,
    }
    Ok(buf)
}

fn sweep(args: &EvalArgs, originals: &[(String, Trajectory)], list: &[f64]) -> CliResult<Vec<u8>> {
    let mut eps = list.to_vec();
    eps.sort_by(f64::total_cmp);
    eps.dedup();
    if eps.len() < 2 {
        return Err(CliError::Usage(
            "--epsilon-list needs at least two distinct values".into(),
        ));
    }
    let mut totals = Vec::with_capacity(eps.len());
    for &e in &eps {
        let params = args.params.codec(e)?;
        let reports: Vec<EvalReport> = originals
            .par_iter()
            .map(|(name, traj)| {
                let bytes = pipeline::compress_to_bytes(traj, &params)
                    .map_err(|err| CliError::from(err).context(name))?;
                Ok(EvalReport::evaluate(name, traj, &bytes)?)
            })
            .collect::<CliResult<_>>()?;
        totals.push(EvalReport::aggregate(&format!("eps={e}"), &reports)?);
    }
    let trend = trend_check(&eps, &totals)?;
    let LinearFit {
        slope, r_squared, ..
    } = trend.mean_sed_fit;
    let rows: Vec<SweepRow> = eps
        .iter()
        .zip(&totals)
        .map(|(&e, r)| SweepRow {
            epsilon: e,
            points: r.points,
            compression_ratio: r.compression_ratio,
            max_sed: r.max_sed,
            mean_sed: r.mean_sed,
            mean_sed_over_epsilon: r.mean_sed / e,
            corrected_fraction: r.corrected_fraction,
            ratio_non_increasing: trend.ratio_non_increasing,
            mean_sed_slope: slope,
            mean_sed_r_squared: r_squared,
        })
        .collect();
    eprintln!(
        "trend: ratio_non_increasing={} mean_sed_slope={slope:.4} mean_sed_r_squared={r_squared:.4}",
        trend.ratio_non_increasing
    );
    let mut buf = Vec::new();
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            for r in &rows {
                w.serialize(r).map_err(|e| CliError::Data(e.to_string()))?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            for r in &rows {
                serde_json::to_writer(&mut buf, r).map_err(|e| CliError::Data(e.to_string()))?;
                buf.push(b'\n');
            }
        }
    }
    Ok(buf)
}

pub fn synth(args: SynthArgs) -> CliResult<()> {
    if args.dim == 0 || args.points == 0 || args.count == 0 {
        return Err(CliError::Usage(
            "--dim, --points and --count must be positive".into(),
        ));
    }
    let config = match args.kind {
        Kind::Smooth => SynthConfig::smooth(args.dim, args.points),
        Kind::Jittery => SynthConfig::jittery(args.dim, args.points),
        Kind::Irregular => SynthConfig::irregular(args.dim, args.points),
    };
    fs::create_dir_all(&args.output)?;
    (0..args.count).into_par_iter().try_for_each(|i| {
        let traj = generate(&config, args.seed.wrapping_add(i as u64));
        let csv = trajectory_csv(traj.dim(), traj.points())?;
        write_atomic(&args.output.join(format!("synth_{i:04}.csv")), &csv)
    })
}

pub fn profiles() -> CliResult<()> {
    let mut stdout = std::io::stdout().lock();
    writeln!(
        stdout,
        "name\ta\tb\tc\td\tv_max\teps_t\tchunk_bits\teps_p_factor"
    )?;
    for p in Profile::all() {
        let c = p.constants;
        writeln!(
            stdout,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            p.name, c.a, c.b, c.c, c.d, p.v_max, p.eps_t, p.chunk_bits, p.eps_p_factor
        )?;
    }
    Ok(())
}
