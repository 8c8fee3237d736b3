import init, { compress_demo, predict_errors, sweep_demo } from "./pkg/trajzip_wasm.js";

const $ = (id) => document.getElementById(id);

// slider position 0..1 maps to epsilon 1..200 on a log scale
const epsilon = () => Math.round(Math.pow(200, Number($("eps").value)) * 10) / 10;

function frame(canvas, pad = 30) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  return { ctx, w: canvas.width - 2 * pad, h: canvas.height - 2 * pad, pad };
}

function scaler(lo, hi, size, offset, flip) {
  const span = hi - lo || 1;
  return flip ? (v) => offset + size - ((v - lo) / span) * size : (v) => offset + ((v - lo) / span) * size;
}

function polyline(ctx, xs, ys, color, width = 1) {
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(x, ys[i]) : ctx.moveTo(x, ys[i])));
  ctx.stroke();
}

function drawTrajectory(demo) {
  const { ctx, w, h, pad } = frame($("traj"));
  const orig = demo.original();
  const rec = demo.reconstructed();
  let [x0, x1, y0, y1] = [Infinity, -Infinity, Infinity, -Infinity];
  for (let i = 0; i < orig.length; i += 2) {
    x0 = Math.min(x0, orig[i]); x1 = Math.max(x1, orig[i]);
    y0 = Math.min(y0, orig[i + 1]); y1 = Math.max(y1, orig[i + 1]);
  }
  // equal scale on both axes
  const s = Math.max((x1 - x0) / w, (y1 - y0) / h) || 1;
  const sx = (v) => pad + (v - x0) / s;
  const sy = (v) => pad + h - (v - y0) / s;
  const pick = (arr, k) => arr.filter((_, i) => i % 2 === k);
  polyline(ctx, pick(orig, 0).map(sx), pick(orig, 1).map(sy), "#bbb", 3);
  polyline(ctx, pick(rec, 0).map(sx), pick(rec, 1).map(sy), "#1565c0", 1);
  ctx.fillStyle = "#555";
  ctx.fillText(`${Math.round(100 * s) } m per 100 px`, pad, pad - 10);
}

function drawErrors(demo, eps) {
  const { ctx, w, h, pad } = frame($("err"), 20);
  const errs = demo.errors();
  const sx = scaler(0, errs.length - 1, w, pad, false);
  const sy = scaler(0, eps, h, pad, true);
  polyline(ctx, [pad, pad + w], [sy(eps), sy(eps)], "#d32f2f", 1);
  polyline(ctx, errs.map((_, i) => sx(i)), errs.map(sy), "#455a64", 1);
  ctx.fillStyle = "#555";
  ctx.fillText(`error per point (red line: ε = ${eps} m)`, pad, 12);
}

function drawPrediction() {
  const eps = epsilon();
  const p = predict_errors(eps, Number($("a").value), Number($("bs").value));
  const sigma = p.sigma();
  const exc = p.exceedance();
  $("pred-stats").textContent =
    `midpoint exceedance ${(100 * p.midpoint_exceedance).toFixed(3)} %\n` +
    `predicted mean error ${p.mean_error.toFixed(2)} m (${(p.mean_error / eps).toFixed(3)} ε)`;
  const { ctx, w, h, pad } = frame($("pred"));
  const sx = scaler(0, sigma.length - 1, w, pad, false);
  const sy1 = scaler(0, Math.max(...sigma), h, pad, true);
  const sy2 = scaler(0, Math.max(...exc, 1e-9), h, pad, true);
  polyline(ctx, sigma.map((_, i) => sx(i)), sigma.map(sy1), "#1565c0", 2);
  polyline(ctx, exc.map((_, i) => sx(i)), exc.map(sy2), "#d32f2f", 2);
  ctx.fillStyle = "#555";
  ctx.fillText(`max σ ${Math.max(...sigma).toFixed(2)} m`, pad, pad - 10);
  ctx.fillText(`max P ${(100 * Math.max(...exc)).toFixed(3)} %`, pad + w - 110, pad - 10);
}

function compress() {
  const eps = epsilon();
  $("eps-value").textContent = eps;
  const t0 = performance.now();
  const demo = compress_demo($("kind").value, Number($("points").value), Number($("seed").value), eps, $("profile").value);
  const ms = performance.now() - t0;
  $("stats").textContent =
    `raw ${demo.raw_bytes} B -> ${demo.compressed_bytes} B  (ratio ${demo.ratio.toFixed(4)})   ${ms.toFixed(0)} ms\n` +
    `max error ${demo.max_sed.toFixed(3)} m   mean ${demo.mean_sed.toFixed(3)} m (${(demo.mean_sed / eps).toFixed(3)} ε)\n` +
    `${demo.segments} sub-trajectories, block size ${demo.block_size}, eps_f ${demo.eps_f.toFixed(2)}, ` +
    `${demo.corrections} corrections, ${demo.outliers} outliers`;
  drawTrajectory(demo);
  drawErrors(demo, eps);
  demo.free();
}

function sweep() {
  const eps = new Float64Array([10, 20, 30, 40, 50, 60, 70, 80, 90, 100]);
  const s = sweep_demo($("kind").value, Number($("points").value), Number($("seed").value), $("profile").value, eps);
  const e = s.epsilon();
  const ratio = s.ratio();
  const mean = s.mean_sed();
  $("sweep-stats").textContent =
    `ratio non-increasing: ${s.ratio_non_increasing}\nmean error linear fit R² = ${s.r_squared.toFixed(4)}`;
  const { ctx, w, h, pad } = frame($("sweep-plot"));
  const sx = scaler(e[0], e[e.length - 1], w, pad, false);
  const sr = scaler(0, Math.max(...ratio), h, pad, true);
  const sm = scaler(0, Math.max(...mean), h, pad, true);
  polyline(ctx, Array.from(e, sx), Array.from(ratio, sr), "#1565c0", 2);
  polyline(ctx, Array.from(e, sx), Array.from(mean, sm), "#d32f2f", 2);
  ctx.fillStyle = "#555";
  ctx.fillText(`ratio max ${Math.max(...ratio).toFixed(4)}`, pad, pad - 10);
  ctx.fillText(`mean error max ${Math.max(...mean).toFixed(2)} m`, pad + w - 150, pad - 10);
  s.free();
}

function guarded(f) {
  return () => {
    try {
      $("failure").textContent = "";
      f();
    } catch (err) {
      $("failure").textContent = String(err);
    }
  };
}

await init();
const refresh = guarded(() => { compress(); drawPrediction(); });
for (const id of ["kind", "points", "seed", "profile", "eps"]) $(id).addEventListener("change", refresh);
$("eps").addEventListener("input", () => ($("eps-value").textContent = epsilon()));
for (const id of ["a", "bs"]) $(id).addEventListener("change", guarded(drawPrediction));
$("sweep").addEventListener("click", guarded(sweep));
refresh();
