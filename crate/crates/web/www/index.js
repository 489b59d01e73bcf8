import init, { dispersion, landau_levels, zitter_series } from "../pkg/negspin_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);

function frame(canvas, xs, ys) {
  const ctx = canvas.getContext("2d");
  const pad = 40;
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (y1 - y0 < 1e-12) { y0 -= 1; y1 += 1; }
  const sx = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (canvas.width - 2 * pad);
  const sy = (y) => canvas.height - pad - ((y - y0) / (y1 - y0)) * (canvas.height - 2 * pad);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, canvas.width - 2 * pad, canvas.height - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.fillText(y1.toFixed(2), 2, pad + 4);
  ctx.fillText(y0.toFixed(2), 2, canvas.height - pad + 4);
  ctx.fillText(x0.toFixed(2), pad, canvas.height - pad + 14);
  ctx.fillText(x1.toFixed(2), canvas.width - pad - 20, canvas.height - pad + 14);
  if (y0 < 0 && y1 > 0) {
    ctx.strokeStyle = "#ddd";
    ctx.beginPath(); ctx.moveTo(pad, sy(0)); ctx.lineTo(canvas.width - pad, sy(0)); ctx.stroke();
  }
  return { ctx, sx, sy };
}

function line(ctx, sx, sy, xs, ys, color) {
  ctx.strokeStyle = color;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(sx(x), sy(ys[i])) : ctx.moveTo(sx(x), sy(ys[i]))));
  ctx.stroke();
}

function drawDispersion() {
  const res = JSON.parse(dispersion($("d-model").value, num("d-pmax"), 61));
  if (res.error) { $("d-out").textContent = res.error; return; }
  const ps = res.map((r) => r.p);
  const all = res.flatMap((r) => r.energies);
  const { ctx, sx, sy } = frame($("d-plot"), ps, all);
  for (let k = 0; k < 4; k++) line(ctx, sx, sy, ps, res.map((r) => r.energies[k]), k < 2 ? "#c33" : "#36c");
  const worst = Math.max(...res.map((r) => r.residual));
  $("d-out").textContent = `max relative deviation from ±closed form: ${worst.toExponential(2)}`;
}

function drawLandau() {
  const res = JSON.parse(landau_levels(num("l-b"), num("l-pz"), Math.round(num("l-nmax")), 4));
  if (res.error) { $("l-out").textContent = res.error; return; }
  const ev = res.eigenvalues;
  const { ctx, sx, sy } = frame($("l-plot"), [0, 1], ev);
  ctx.strokeStyle = "#bbb";
  for (const e of ev) { ctx.beginPath(); ctx.moveTo(sx(0.05), sy(e)); ctx.lineTo(sx(0.45), sy(e)); ctx.stroke(); }
  ctx.strokeStyle = "#c33";
  for (const l of res.levels) {
    for (const e of [l.analytic_plus, l.analytic_minus]) {
      ctx.beginPath(); ctx.moveTo(sx(0.55), sy(e)); ctx.lineTo(sx(0.95), sy(e)); ctx.stroke();
    }
  }
  const rows = res.levels.map((l) =>
    `k=${l.k}  E±=±${l.analytic_plus.toFixed(4)}  mult ${l.multiplicity}/${l.numeric_multiplicity}  residual ${l.residual.toExponential(1)}`);
  $("l-out").textContent = `ħω_c = ${res.omega_c.toFixed(4)}   left: all eigenvalues, right: analytic ladder\n` + rows.join("\n");
}

function drawZitter() {
  const res = JSON.parse(zitter_series(num("z-pz"), num("z-wp"), num("z-wm"), 8 * Math.PI, 512));
  if (res.error) { $("z-out").textContent = res.error; return; }
  const { ctx, sx, sy } = frame($("z-plot"), res.t, res.value);
  line(ctx, sx, sy, res.t, res.value, "#36c");
  $("z-out").textContent = res.omega === null
    ? "no oscillation"
    : `measured Ω = ${res.omega.toFixed(5)}, expected ${res.expected.map((x) => x.toFixed(5)).join(", ")}`;
}

await init();
for (const [ids, draw] of [
  [["d-model", "d-pmax"], drawDispersion],
  [["l-b", "l-pz", "l-nmax"], drawLandau],
  [["z-pz", "z-wp", "z-wm"], drawZitter],
]) {
  ids.forEach((id) => $(id).addEventListener("input", draw));
  draw();
}
