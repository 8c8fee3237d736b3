//! Acceptance suite: prints one PASS/FAIL line per primary criterion and
//! exits non-zero if an unexpected failure occurs.
//!
//! Statistical checks inject noise through the crate's own inverse transform
//! and compare against closed forms computed here; pipeline checks measure
//! distances independently of the library's metrics module.
//!
//! A criterion listed in `KNOWN_FAILURES` still prints FAIL, but does not fail
//! the run; if it starts passing, the run fails so the list stays accurate.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use trajzip::block::EncodedBlock;
use trajzip::codec::{
    dequantize, enhanced_zigzag_map, quantize, read_signed, varint_bit_len, write_signed,
    BitReader, BitWriter, ChunkLength, QuantStep,
};
use trajzip::container::{
    block_lengths, BlockRecord, CompressedTrajectory, CorrectionEntry, OutlierEntry, SubTrajectory,
};
use trajzip::synth::{generate, SynthConfig};
use trajzip::transform::{dct_forward_direct, dct_inverse_direct, Dct};
use trajzip::{pipeline, CodecParams, Decoder, Error, Profile, Trajectory};

type Check = fn() -> Result<String, String>;

/// Criteria that cannot hold as stated, with the reason.
const KNOWN_FAILURES: &[(&str, &str)] = &[(
    "exceedance prediction",
    "the 1.3% figure assumes a Gaussian midpoint error; under uniform coefficient noise the \
     midpoint sum is dominated by the first odd harmonic (8/pi^2 of the variance) and its tail \
     is far lighter, see the Gaussian diagnostic",
)];

fn main() {
    let checks: [(&str, Check); 9] = [
        ("hard error bound", hard_error_bound),
        ("mean-error prediction", mean_error_prediction),
        ("variance law", variance_law),
        ("exceedance prediction", exceedance_prediction),
        ("codec bijections", codec_bijections),
        ("DCT round trip and fast/direct equivalence", dct_accuracy),
        ("container robustness", container_robustness),
        ("trend reproduction", trend_reproduction),
        ("linear complexity", linear_complexity),
    ];
    let mut failed = 0;
    let mut known = 0;
    for (name, check) in checks {
        let expected_failure = KNOWN_FAILURES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, why)| *why);
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match (outcome, expected_failure) {
            (Ok(detail), None) => println!("PASS  {name}: {detail} [{secs:.1}s]"),
            (Ok(detail), Some(_)) => {
                failed += 1;
                println!("PASS  {name}: {detail} [{secs:.1}s]");
                println!("      listed as a known failure but passed; update KNOWN_FAILURES");
            }
            (Err(detail), None) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{secs:.1}s]");
            }
            (Err(detail), Some(why)) => {
                known += 1;
                println!("FAIL  {name}: {detail} [{secs:.1}s]");
                println!("      known failure: {why}");
            }
        }
    }
    println!(
        "{} passed, {} failed ({known} known)",
        checks.len() - failed - known,
        failed + known
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Maximum and mean distance at the original timestamps, decoded from bytes.
fn measure(traj: &Trajectory, bytes: &[u8]) -> (f64, f64) {
    let model = CompressedTrajectory::from_bytes(bytes).expect("container parses");
    let decoder = Decoder::new(&model).expect("container decodes");
    let (mut max, mut sum) = (0.0f64, 0.0);
    for (t, p) in traj.points() {
        let q = decoder.query(t).expect("original timestamp is covered");
        let d = distance(p, &q);
        max = max.max(d);
        sum += d;
    }
    (max, sum / traj.len() as f64)
}

fn run_parallel<T: Send, F: Fn(usize) -> T + Sync>(jobs: usize, f: F) -> Vec<T> {
    let threads = std::thread::available_parallelism()
        .map_or(4, |n| n.get())
        .min(jobs.max(1));
    let next = AtomicUsize::new(0);
    let out = Mutex::new(Vec::with_capacity(jobs));
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs {
                    break;
                }
                let r = f(i);
                out.lock().unwrap().push((i, r));
            });
        }
    });
    let mut out = out.into_inner().unwrap();
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().map(|(_, r)| r).collect()
}

fn hard_error_bound() -> Result<String, String> {
    let start = Instant::now();
    let eps_list = [1.0, 5.0, 10.0, 50.0, 100.0];
    let jobs = 200;
    let results = run_parallel(jobs, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(9000 + i as u64);
        let dim = 2 + i % 2;
        let points = 10f64.powf(rng.gen_range(3.0..=5.0)).round() as usize;
        let config = match i % 3 {
            0 => SynthConfig::smooth(dim, points),
            1 => SynthConfig::jittery(dim, points),
            _ => SynthConfig::irregular(dim, points),
        };
        let profile = match (dim, i % 4) {
            (3, _) => Profile::geolife3d(),
            (_, 0) => Profile::nuplan(),
            (_, 2) => Profile::mopsi(),
            _ => Profile::geolife(),
        };
        let traj = generate(&config, 5000 + i as u64);
        let mut violations = 0usize;
        let mut worst = 0.0f64;
        for &eps in &eps_list {
            let params = CodecParams::from_profile(eps, &profile).unwrap();
            let bytes = pipeline::compress_to_bytes(&traj, &params).unwrap();
            let model = CompressedTrajectory::from_bytes(&bytes).unwrap();
            let decoder = Decoder::new(&model).unwrap();
            for (t, p) in traj.points() {
                let d = distance(p, &decoder.query(t).unwrap());
                worst = worst.max(d / eps);
                violations += usize::from(d > eps);
            }
        }
        (traj.len(), violations, worst)
    });
    let points: usize = results.iter().map(|r| r.0).sum();
    let violations: usize = results.iter().map(|r| r.1).sum();
    let worst = results.iter().map(|r| r.2).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    let detail = format!(
        "{jobs} trajectories, {points} points x {} bounds, {violations} violations, worst max SED {worst:.4} eps, {:.1}s",
        eps_list.len(),
        elapsed.as_secs_f64()
    );
    if violations == 0 && elapsed < Duration::from_secs(300) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn corpus_mean_over_eps(dim: usize, profile: &Profile, eps_list: &[f64]) -> f64 {
    let corpus: Vec<Trajectory> = (0..20)
        .map(|s| generate(&SynthConfig::smooth(dim, 5000), 300 + s))
        .collect();
    let per_eps: Vec<f64> = eps_list
        .iter()
        .map(|&eps| {
            let params = CodecParams::from_profile(eps, profile).unwrap();
            let sums = run_parallel(corpus.len(), |i| {
                let bytes = pipeline::compress_to_bytes(&corpus[i], &params).unwrap();
                let (_, mean) = measure(&corpus[i], &bytes);
                mean * corpus[i].len() as f64
            });
            let n: usize = corpus.iter().map(Trajectory::len).sum();
            sums.iter().sum::<f64>() / n as f64 / eps
        })
        .collect();
    per_eps.iter().sum::<f64>() / per_eps.len() as f64
}

fn mean_error_prediction() -> Result<String, String> {
    let eps_list = [5.0, 10.0, 20.0, 50.0, 100.0];
    let p2 = Profile::geolife();
    let mut p3 = Profile::geolife3d();
    p3.constants.a = 0.6;
    for p in [&p2, &p3] {
        assert_eq!((p.constants.a, p.eps_p_factor, p.chunk_bits), (0.6, 0.5, 2));
    }
    let m2 = corpus_mean_over_eps(2, &p2, &eps_list);
    let m3 = corpus_mean_over_eps(3, &p3, &eps_list);
    let detail = format!(
        "smooth corpus, eps {eps_list:?}: 2-D mean SED {m2:.3} eps (range [0.20, 0.45], predicted 0.335), \
         3-D {m3:.3} eps (range [0.28, 0.55], predicted 0.426)"
    );
    if (0.20..=0.45).contains(&m2) && (0.28..=0.55).contains(&m3) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Cumulative error `ΔS_k`, k = 0..=n, of a block whose AC coefficients carry
/// independent uniform errors on `[-eps_f, eps_f]`.
fn noisy_cumulative(
    dct: &Dct,
    eps_f: f64,
    rng: &mut ChaCha8Rng,
    spectrum: &mut [f64],
    out: &mut Vec<f64>,
) {
    spectrum[0] = 0.0;
    for c in spectrum.iter_mut().skip(1) {
        *c = rng.gen_range(-eps_f..=eps_f);
    }
    cumulate(dct, spectrum, out);
}

fn gaussian_cumulative(
    dct: &Dct,
    normal: &Normal<f64>,
    rng: &mut ChaCha8Rng,
    spectrum: &mut [f64],
    out: &mut Vec<f64>,
) {
    spectrum[0] = 0.0;
    for c in spectrum.iter_mut().skip(1) {
        *c = normal.sample(rng);
    }
    cumulate(dct, spectrum, out);
}

fn cumulate(dct: &Dct, spectrum: &[f64], out: &mut Vec<f64>) {
    let v = dct.inverse(spectrum);
    out.clear();
    out.push(0.0);
    let mut s = 0.0;
    for x in v {
        s += x;
        out.push(s);
    }
}

fn expected_variance(k: usize, n: usize, eps_f: f64) -> f64 {
    let (k, n) = (k as f64, n as f64);
    (k * n - k * k) * eps_f * eps_f / (6.0 * n * n)
}

fn variance_law() -> Result<String, String> {
    let (n, trials, eps_f) = (100usize, 100_000usize, 1.0);
    let dct = Dct::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut spectrum = vec![0.0; n];
    let mut path = Vec::with_capacity(n + 1);
    let probes = [10usize, 25, 50, 75, 90];
    let mut sq = [0.0f64; 5];
    let mut end_max = 0.0f64;
    for _ in 0..trials {
        noisy_cumulative(&dct, eps_f, &mut rng, &mut spectrum, &mut path);
        for (acc, &k) in sq.iter_mut().zip(&probes) {
            *acc += path[k] * path[k];
        }
        end_max = end_max.max(path[n].abs());
    }
    // mean is zero by symmetry, so the raw second moment is the variance
    let var: Vec<f64> = sq.iter().map(|s| s / trials as f64).collect();
    let predicted = expected_variance(50, n, eps_f);
    let rel = (var[2] - predicted).abs() / predicted;
    let sym = [(var[0], var[4]), (var[1], var[3])]
        .iter()
        .map(|(a, b)| (a - b).abs() / a.max(*b))
        .fold(0.0, f64::max);
    let detail = format!(
        "b_s={n}, {trials} trials: var(50) {:.6} vs predicted {predicted:.6} ({:.2}% off); \
         symmetry gap {:.2}% (k=10/90, 25/75); endpoint |dS| <= {end_max:.1e}",
        var[2],
        100.0 * rel,
        100.0 * sym
    );
    // sampling noise of a variance estimate at 1e5 trials is about 0.45%
    if rel <= 0.05 && sym <= 0.03 && end_max < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Midpoint exceedance probability in 2-D. With `gaussian`, coefficient
/// errors are normal with the uniform model's variance (diagnostic only).
fn midpoint_exceedance(a: f64, trials: usize, seed: u64, gaussian: bool) -> f64 {
    let (n, eps) = (100usize, 1.0);
    let eps_f = eps / a;
    let dct = Dct::new(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spectrum = vec![0.0; n];
    let (mut px, mut py) = (Vec::new(), Vec::new());
    let normal = Normal::new(0.0, eps_f / 3f64.sqrt()).unwrap();
    let mut hits = 0usize;
    for _ in 0..trials {
        if gaussian {
            gaussian_cumulative(&dct, &normal, &mut rng, &mut spectrum, &mut px);
            gaussian_cumulative(&dct, &normal, &mut rng, &mut spectrum, &mut py);
        } else {
            noisy_cumulative(&dct, eps_f, &mut rng, &mut spectrum, &mut px);
            noisy_cumulative(&dct, eps_f, &mut rng, &mut spectrum, &mut py);
        }
        hits += usize::from(px[n / 2].hypot(py[n / 2]) > eps);
    }
    hits as f64 / trials as f64
}

fn exceedance_prediction() -> Result<String, String> {
    let trials = 100_000;
    let p6 = midpoint_exceedance(0.6, trials, 11, false);
    let p8 = midpoint_exceedance(0.8, trials, 12, false);
    let g6 = midpoint_exceedance(0.6, trials, 13, true);
    let g8 = midpoint_exceedance(0.8, trials, 14, true);
    let detail = format!(
        "2-D midpoint, uniform noise, {trials} trials: eps_f=eps/0.6 -> {:.3}% (target 1.3 +/- 0.4, \
         closed form {:.3}%), eps_f=eps/0.8 -> {:.3}% (limit 0.15%, closed form {:.3}%); \
         Gaussian noise of equal variance gives {:.3}% and {:.3}%",
        100.0 * p6,
        100.0 * (-12.0f64 * 0.36).exp(),
        100.0 * p8,
        100.0 * (-12.0f64 * 0.64).exp(),
        100.0 * g6,
        100.0 * g8
    );
    if (p6 - 0.013).abs() <= 0.004 && p8 <= 0.0015 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn codec_bijections() -> Result<String, String> {
    const LIMIT: i64 = 1 << 16;
    let mut failures = 0usize;
    let mut values = 0usize;
    for bits in 1..=8u8 {
        let l = ChunkLength::new(bits).unwrap();
        let mut w = BitWriter::new();
        let mut expected_bits = 0usize;
        for n in -LIMIT..=LIMIT {
            write_signed(&mut w, n, l).unwrap();
            expected_bits += varint_bit_len(enhanced_zigzag_map(n).unwrap(), l, bits == 1);
        }
        if w.bit_len() != expected_bits {
            failures += 1;
        }
        let bytes = w.finish();
        let mut r = BitReader::new(&bytes);
        for n in -LIMIT..=LIMIT {
            values += 1;
            if read_signed(&mut r, l) != Ok(n) {
                failures += 1;
            }
        }
        if r.remaining_bits() >= 8 {
            failures += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let quant_trials = 1_000_000;
    let mut worst = 0.0f64;
    for _ in 0..quant_trials {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let x = sign * 10f64.powf(rng.gen_range(-3.0..6.0));
        let step = QuantStep::new(10f64.powf(rng.gen_range(-4.0..2.0))).unwrap();
        let back = dequantize(quantize(x, step).unwrap(), step);
        let err = (x - back).abs() / step.get();
        worst = worst.max(err);
        if err > 1.0 {
            failures += 1;
        }
    }
    let detail = format!(
        "{values} signed values over l=1..8 and {quant_trials} quantizations, worst error {worst:.6} step, {failures} failures"
    );
    if failures == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dct_accuracy() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut worst_round = 0.0f64;
    let mut worst_fast = 0.0f64;
    for n in 1..=1024usize {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-100.0..100.0)).collect();
        let mean = v.iter().sum::<f64>() / n as f64;
        v.iter_mut().for_each(|x| *x -= mean);
        let dct = Dct::new(n);
        let c = dct.forward(&v);
        let back = dct.inverse(&c);
        let scale = v
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()))
            .max(f64::MIN_POSITIVE);
        for (a, b) in v.iter().zip(&back) {
            worst_round = worst_round.max((a - b).abs() / scale);
        }
        let direct = dct_forward_direct(&v);
        let direct_inv = dct_inverse_direct(&c);
        for (a, b) in c.iter().zip(&direct).chain(back.iter().zip(&direct_inv)) {
            worst_fast = worst_fast.max((a - b).abs());
        }
    }
    let detail = format!(
        "n=1..1024: round-trip worst relative error {worst_round:.2e} (limit 1e-9), \
         fast vs direct worst absolute gap {worst_fast:.2e} (limit 1e-8)"
    );
    if worst_round <= 1e-9 && worst_fast <= 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_model(rng: &mut ChaCha8Rng) -> CompressedTrajectory {
    let dim = rng.gen_range(1..=4usize);
    let chunk = ChunkLength::new(rng.gen_range(1..=12u8)).unwrap();
    let block_size = rng.gen_range(2..=64usize);
    let small = |rng: &mut ChaCha8Rng| -> i64 {
        match rng.gen_range(0..10) {
            0 => rng.gen_range(-(1i64 << 40)..(1i64 << 40)),
            1 => 0,
            _ => rng.gen_range(-300..300),
        }
    };
    let mut m = CompressedTrajectory::empty(
        dim,
        chunk,
        rng.gen_range(0.01..500.0),
        rng.gen_range(1e-4..10.0),
        rng.gen_range(0.01..100.0),
        rng.gen_range(0.01..1000.0),
        block_size,
    );
    m.dt = rng.gen_range(1e-3..100.0);
    let mut t = 0u64;
    for _ in 0..rng.gen_range(0..6) {
        t += rng.gen_range(1..5000);
        let coords = (0..dim).map(|_| small(rng)).collect();
        m.outliers.push(OutlierEntry {
            time_index: t,
            coords,
        });
    }
    let mut t = 0u64;
    for _ in 0..rng.gen_range(0..6) {
        t += rng.gen_range(1..5000);
        let offsets = (0..dim).map(|_| small(rng)).collect();
        m.corrections.push(CorrectionEntry {
            time_index: t,
            offsets,
        });
    }
    let mut t0 = 0u64;
    for _ in 0..rng.gen_range(0..4) {
        t0 += rng.gen_range(0..100_000);
        let samples = rng.gen_range(2..300usize);
        let start = (0..dim).map(|_| small(rng)).collect();
        let blocks = (0..dim)
            .map(|_| {
                block_lengths(samples - 1, block_size)
                    .map(|len| {
                        let c_f = rng.gen_range(0..len.max(1));
                        BlockRecord {
                            end_delta: small(rng),
                            spectrum: EncodedBlock {
                                coeffs: (0..c_f).map(|_| small(rng)).collect(),
                            },
                        }
                    })
                    .collect()
            })
            .collect();
        m.segments.push(SubTrajectory {
            t0_index: t0,
            start,
            samples,
            blocks,
        });
    }
    m
}

fn container_robustness() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let models = 1000;
    let (mut mismatches, mut unclean, mut prefixes, mut bytes_total) =
        (0usize, 0usize, 0usize, 0usize);
    for _ in 0..models {
        let model = random_model(&mut rng);
        let bytes = model.to_bytes().unwrap();
        bytes_total += bytes.len();
        match CompressedTrajectory::from_bytes(&bytes) {
            Ok(parsed) => {
                if parsed != model || parsed.to_bytes().as_deref() != Ok(&bytes[..]) {
                    mismatches += 1;
                }
            }
            Err(_) => mismatches += 1,
        }
        for cut in 0..bytes.len() {
            prefixes += 1;
            if !matches!(
                CompressedTrajectory::from_bytes(&bytes[..cut]),
                Err(Error::Truncated(_))
            ) {
                unclean += 1;
            }
        }
    }
    let detail = format!(
        "{models} random models ({bytes_total} bytes): {mismatches} round-trip mismatches; \
         {prefixes} strict prefixes, {unclean} without a truncation error"
    );
    if mismatches == 0 && unclean == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn trend_reproduction() -> Result<String, String> {
    let corpus: Vec<Trajectory> = (0..8u64)
        .map(|s| {
            let config = if s % 2 == 0 {
                SynthConfig::smooth(2, 5000)
            } else {
                SynthConfig::irregular(2, 5000)
            };
            generate(&config, 700 + s)
        })
        .collect();
    let raw: usize = corpus.iter().map(|t| t.len() * 24).sum();
    let points: usize = corpus.iter().map(Trajectory::len).sum();
    let eps_list: Vec<f64> = (1..=10).map(|i| 10.0 * i as f64).collect();
    let mut ratios = Vec::new();
    let mut means = Vec::new();
    for &eps in &eps_list {
        let params = CodecParams::from_profile(eps, &Profile::geolife()).unwrap();
        let rows = run_parallel(corpus.len(), |i| {
            let bytes = pipeline::compress_to_bytes(&corpus[i], &params).unwrap();
            let (_, mean) = measure(&corpus[i], &bytes);
            (bytes.len(), mean * corpus[i].len() as f64)
        });
        ratios.push(rows.iter().map(|r| r.0).sum::<usize>() as f64 / raw as f64);
        means.push(rows.iter().map(|r| r.1).sum::<f64>() / points as f64);
    }
    let monotone = ratios.windows(2).all(|w| w[1] <= w[0]);
    // ordinary least squares, computed here rather than by the metrics module
    let n = eps_list.len() as f64;
    let mx = eps_list.iter().sum::<f64>() / n;
    let my = means.iter().sum::<f64>() / n;
    let sxy: f64 = eps_list
        .iter()
        .zip(&means)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum();
    let sxx: f64 = eps_list.iter().map(|x| (x - mx) * (x - mx)).sum();
    let syy: f64 = means.iter().map(|y| (y - my) * (y - my)).sum();
    let r2 = sxy * sxy / (sxx * syy);
    let slope = sxy / sxx;
    let detail = format!(
        "eps 10..100: ratio {:.4} -> {:.4} (non-increasing: {monotone}), mean SED {:.2} -> {:.2} m, \
         linear fit slope {slope:.3}, R^2 {r2:.4} (limit 0.95)",
        ratios[0],
        ratios[ratios.len() - 1],
        means[0],
        means[means.len() - 1]
    );
    if monotone && slope > 0.0 && r2 >= 0.95 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn median_time(runs: usize, f: impl Fn()) -> Duration {
    let mut times: Vec<Duration> = (0..runs)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed()
        })
        .collect();
    times.sort();
    times[runs / 2]
}

fn linear_complexity() -> Result<String, String> {
    let big = generate(&SynthConfig::irregular(2, 1_000_000), 99);
    let n_small = 100_000;
    let small = Trajectory::new(
        2,
        big.times()[..n_small].to_vec(),
        big.coords()[..2 * n_small].to_vec(),
    )
    .unwrap();
    let params = CodecParams::from_profile(10.0, &Profile::geolife()).unwrap();
    let run = |t: &Trajectory| {
        std::hint::black_box(pipeline::compress_to_bytes(t, &params).unwrap());
    };
    run(&small);
    let t_small = median_time(5, || run(&small));
    let t_big = median_time(3, || run(&big));
    let ratio = t_big.as_secs_f64() / t_small.as_secs_f64();
    let detail = format!(
        "compress 1e5 points {:.1} ms, 1e6 points {:.1} ms, ratio {ratio:.2} (limit 13)",
        1e3 * t_small.as_secs_f64(),
        1e3 * t_big.as_secs_f64()
    );
    if ratio <= 13.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}
