import init, { analyze, certificate, edge_removal } from "./pkg/specgap_wasm.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";
let current = "glued_complete:4";

function call(fn, ...args) {
  const v = JSON.parse(fn(...args));
  if (v.error) throw new Error(v.error);
  return v;
}

function fail(el, e) {
  el.innerHTML = `<p class="err">${e.message}</p>`;
}

function svgEl(tag, attrs, text) {
  const el = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  if (text !== undefined) el.textContent = text;
  return el;
}

const fmt = (x, d = 6) => Number(x).toFixed(d);

function boundRows(b) {
  const rows = [["n/(n−1)", b.classical], ["(n+1)/(n−1)", b.non_complete], ["1+1/√(δ(n−1−δ))", b.min_degree], ["2m/(2m−Δ)", b.li_guo_shiu]];
  return rows
    .filter(([, v]) => v)
    .map(([name, v]) => `<tr><td style="text-align:left">${name}</td><td>${fmt(v.value)}</td><td>${v.exact ?? ""}</td></tr>`)
    .join("");
}

// Eigenvalues on [0, 2] as stems, bounds as dashed lines.
function plotSpectrum(v) {
  const svg = $("spectrum-plot");
  svg.replaceChildren();
  const W = 420, H = 200, pad = 30;
  const x = (t) => pad + (t / 2) * (W - 2 * pad);
  svg.append(svgEl("line", { x1: x(0), y1: H - pad, x2: x(2), y2: H - pad, stroke: "#555" }));
  for (const t of [0, 0.5, 1, 1.5, 2]) {
    svg.append(svgEl("text", { x: x(t), y: H - pad + 16, "font-size": 11, "text-anchor": "middle" }, t));
  }
  const maxMult = Math.max(...v.spectrum.map((s) => s.multiplicity));
  for (const s of v.spectrum) {
    const h = ((H - 2 * pad - 20) * s.multiplicity) / maxMult;
    svg.append(svgEl("line", { x1: x(s.value), y1: H - pad, x2: x(s.value), y2: H - pad - h, stroke: "#1f5fbf", "stroke-width": 3 }));
    svg.append(svgEl("text", { x: x(s.value), y: H - pad - h - 4, "font-size": 10, "text-anchor": "middle" }, `×${s.multiplicity}`));
  }
  const b = v.bounds;
  const marks = [[b.non_complete, "#c0392b"], [b.min_degree, "#8e44ad"], [b.li_guo_shiu, "#16a085"]];
  for (const [m, colour] of marks) {
    if (!m) continue;
    svg.append(svgEl("line", { x1: x(m.value), y1: pad - 10, x2: x(m.value), y2: H - pad, stroke: colour, "stroke-dasharray": "4 3" }));
  }
}

function showAnalysis(v) {
  plotSpectrum(v);
  $("g6").innerHTML = `graph6 <code>${v.graph6}</code>, n = ${v.n}, m = ${v.m}`;
  const verdict = v.verdict ? v.verdict.kind.replaceAll("_", " ") : "complete graph";
  const explicit = v.explicit_spectrum
    ? `<p>From explicit eigenfunctions: ${v.explicit_spectrum.map((e) => `${e.value} ×${e.multiplicity}`).join(", ")}</p>`
    : "";
  $("explore-out").innerHTML = `
    <p>λ<sub>n</sub> = <b>${fmt(v.lambda_n, 10)}</b> (${v.components} component${v.components > 1 ? "s" : ""})</p>
    <table><tr><th style="text-align:left">bound</th><th>value</th><th>exact</th></tr>${boundRows(v.bounds)}</table>
    <p>Equality with (n+1)/(n−1): <b>${verdict}</b></p>${explicit}`;
}

function runAnalysis(input) {
  try {
    showAnalysis(call(analyze, input));
    current = input;
    runCertificate();
  } catch (e) {
    fail($("explore-out"), e);
  }
}

// Circle layout; node colour encodes the witness sign.
function plotCertificate(v) {
  const svg = $("cert-plot");
  svg.replaceChildren();
  const R = 140, C = 180, n = v.n;
  const pos = (i) => [C + R * Math.cos((2 * Math.PI * i) / n - Math.PI / 2), C + R * Math.sin((2 * Math.PI * i) / n - Math.PI / 2)];
  for (const [a, b] of v.edges) {
    const [x1, y1] = pos(a), [x2, y2] = pos(b);
    svg.append(svgEl("line", { x1, y1, x2, y2, stroke: "#bbb" }));
  }
  const f = v.record.witness;
  const big = Math.max(...f.map(Math.abs));
  for (let i = 0; i < n; i++) {
    const [cx, cy] = pos(i);
    const colour = f[i] > 0 ? "#1f5fbf" : f[i] < 0 ? "#c0392b" : "#ddd";
    svg.append(svgEl("circle", { cx, cy, r: 8 + (10 * Math.abs(f[i])) / big, fill: colour, opacity: 0.85 }));
    svg.append(svgEl("text", { x: cx, y: cy + 4, "font-size": 11, "text-anchor": "middle", fill: "#fff" }, i));
  }
}

function runCertificate() {
  const method = document.querySelector("input[name=method]:checked").value;
  try {
    const v = call(certificate, current, method);
    plotCertificate(v);
    const r = v.record;
    const rows = v.audit
      .map((e) => `<tr><td>${e.vertex}</td><td>${e.role}</td><td>${fmt(e.f, 4)}</td><td>${fmt(e.lf, 4)}</td><td>${fmt(e.slack, 4)}</td></tr>`)
      .join("");
    const closing = r.closing ? ` closing ${r.closing}` : "";
    $("cert-out").innerHTML = `
      <p>${r.method}${closing}, pair ${r.pair ? `(${r.pair.join(", ")})` : "none"}, common neighbours [${r.common.join(", ")}]</p>
      <p>bound ${fmt(r.bound_value)}${r.bound ? ` = ${r.bound}` : ""}, Rayleigh quotient ${fmt(r.rayleigh)}, λ<sub>n</sub> ${fmt(v.lambda_n)}</p>
      <p class="${v.holds ? "ok" : "bad"}">pointwise check ${v.holds ? "holds" : "fails"}, min slack ${v.min_slack.toExponential(2)}</p>
      <table><tr><th>x</th><th>role</th><th>f</th><th>Lf</th><th>slack</th></tr>${rows}</table>`;
  } catch (e) {
    $("cert-plot").replaceChildren();
    fail($("cert-out"), e);
  }
}

function runRemoval() {
  const k = Number($("k").value);
  $("k-val").textContent = k;
  try {
    const v = call(edge_removal, k);
    const rows = v.additions
      .map((a) => `<tr><td>(${a.u}, ${a.v})</td><td>${fmt(a.lambda_n, 8)}</td><td class="ok">+${fmt(a.lambda_n - v.lambda_base, 6)}</td></tr>`)
      .join("");
    $("removal-out").innerHTML = `
      <p>n = ${v.n}, λ<sub>n</sub> = ${fmt(v.lambda_base, 10)} = ${v.target}</p>
      <p>${v.additions.length} possible edges; every one raises λ<sub>n</sub>: <b>${v.strictly_decreases}</b></p>
      <table><tr><th>added edge</th><th>λ<sub>n</sub></th><th>change</th></tr>${rows}</table>`;
  } catch (e) {
    fail($("removal-out"), e);
  }
}

await init();
$("use-family").onclick = () => runAnalysis(`${$("family").value}:${$("param").value.trim()}`);
$("analyze").onclick = () => runAnalysis($("graph-text").value);
$("run-cert").onclick = runCertificate;
$("k").oninput = runRemoval;
for (const r of document.querySelectorAll("input[name=method]")) r.onchange = runCertificate;
runAnalysis(current);
runRemoval();
