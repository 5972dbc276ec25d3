import init, { adjustment, figure_series, decide_rule } from "./pkg/collin_wasm.js";

const $ = (id) => document.getElementById(id);
const fmt = (x, d = 3) => (Number.isFinite(x) ? x.toFixed(d) : String(x));

function bindRange(id, onChange) {
  const input = $(id);
  const out = $(id + "-out");
  const update = () => {
    if (out) out.textContent = input.value;
    onChange();
  };
  input.addEventListener("input", update);
  return update;
}

function renderFactors() {
  const r = JSON.parse(adjustment(+$("fn").value, +$("fk").value));
  $("f-err").textContent = r.error ?? "";
  $("fa").textContent = r.error ? "" : fmt(r.a);
  $("fsa").textContent = r.error ? "" : fmt(r.sqrt_a);
  $("fb").textContent = r.error ? "" : fmt(r.b);
}

function drawSeries(s) {
  const canvas = $("plot");
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, pad = { l: 50, r: 15, t: 15, b: 35 };
  ctx.clearRect(0, 0, W, H);
  if (s.error || s.k.length === 0) {
    ctx.fillStyle = "#b91c1c";
    ctx.fillText(s.error ?? "empty series", pad.l, pad.t + 20);
    return;
  }
  const kMin = s.k[0], kMax = s.k[s.k.length - 1];
  const finite = s.max_vif.filter(Number.isFinite);
  const yMax = Math.max(12, Math.min(60, Math.max(...finite) * 1.05));
  const x = (k) => pad.l + ((k - kMin) / Math.max(1, kMax - kMin)) * (W - pad.l - pad.r);
  const y = (v) => H - pad.b - (Math.min(v, yMax) / yMax) * (H - pad.t - pad.b);

  ctx.strokeStyle = "#ccc";
  ctx.fillStyle = "#555";
  ctx.font = "12px system-ui";
  ctx.beginPath();
  ctx.moveTo(pad.l, pad.t);
  ctx.lineTo(pad.l, H - pad.b);
  ctx.lineTo(W - pad.r, H - pad.b);
  ctx.stroke();
  for (let v = 0; v <= yMax; v += yMax > 30 ? 10 : 5) {
    ctx.fillText(String(v), 8, y(v) + 4);
  }
  const kStep = Math.max(1, Math.ceil((kMax - kMin) / 12));
  for (let k = kMin; k <= kMax; k += kStep) {
    ctx.fillText(String(k), x(k) - 6, H - pad.b + 16);
  }
  ctx.fillText("k", W - pad.r - 10, H - 6);

  ctx.setLineDash([6, 4]);
  ctx.strokeStyle = "#888";
  ctx.beginPath();
  ctx.moveTo(pad.l, y(10));
  ctx.lineTo(W - pad.r, y(10));
  ctx.stroke();
  ctx.setLineDash([]);

  for (const [key, color] of [["max_vif", "#2563eb"], ["max_avif", "#c2410c"]]) {
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    s.k.forEach((k, i) => {
      const v = Number.isFinite(s[key][i]) ? s[key][i] : yMax;
      i === 0 ? ctx.moveTo(x(k), y(v)) : ctx.lineTo(x(k), y(v));
    });
    ctx.stroke();
    ctx.lineWidth = 1;
  }
}

function renderCurves() {
  const n = +$("cn").value;
  const cp = $("cp");
  cp.max = String(Math.max(2, n - 2));
  if (+cp.value > +cp.max) cp.value = cp.max;
  $("cp-out").textContent = cp.value;
  const s = JSON.parse(figure_series(n, +$("cs").value >>> 0, +cp.value));
  drawSeries(s);
  $("c-summary").textContent = s.error
    ? ""
    : `first k with max VIF > 10: ${s.vif_threshold_k ?? "none"}; first k with max aVIF > 10: ${s.avif_threshold_k ?? "none"}`;
}

function renderRule() {
  const r = JSON.parse(decide_rule(+$("rt").value, +$("rn").value, +$("rk").value, +$("ra").value));
  $("r-err").textContent = r.error ?? "";
  const cells = r.error
    ? ["", "", "", "", ""]
    : [fmt(r.t_crit), fmt(r.at_crit), r.reject_classic ? "yes" : "no", r.reject_adjusted ? "yes" : "no", r.option];
  ["rtc", "rat", "rrc", "rra", "ropt"].forEach((id, i) => ($(id).textContent = cells[i]));
  $("ropt").className = r.error ? "" : "opt-" + r.option;
}

await init();

bindRange("fn", renderFactors)();
bindRange("fk", renderFactors)();
bindRange("cp", renderCurves)();
bindRange("cn", renderCurves)();
$("cs").addEventListener("change", renderCurves);
$("cs-next").addEventListener("click", () => {
  $("cs").value = String(+$("cs").value + 1);
  renderCurves();
});
for (const id of ["rt", "rn", "rk", "ra"]) $(id).addEventListener("input", renderRule);
renderRule();
