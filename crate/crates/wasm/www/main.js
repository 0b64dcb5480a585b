import init, { normal_form, decompose, toeplitz_window, toeplitz_source } from "./pkg/leavitt_wasm.js";

const $ = (id) => document.getElementById(id);

function show(id, json) {
  $(id).textContent = JSON.stringify(JSON.parse(json), null, 2);
  return JSON.parse(json);
}

// Rationals arrive as strings like "-3/2".
function value(s) {
  const [n, d] = s.split("/");
  return Number(n) / (d === undefined ? 1 : Number(d));
}

function heatmap(r) {
  const table = $("heatmap");
  table.replaceChildren();
  if (r.error) return;
  const max = Math.max(1, ...r.matrix.flat().map((s) => Math.abs(value(s))));
  r.matrix.forEach((row, i) => {
    const tr = document.createElement("tr");
    row.forEach((s, j) => {
      const td = document.createElement("td");
      const v = value(s);
      const a = Math.abs(v) / max;
      td.style.background = v > 0 ? `rgba(40,90,200,${a})` : v < 0 ? `rgba(200,60,40,${a})` : "white";
      td.style.color = a > 0.5 ? "white" : "black";
      if (v !== 0) td.textContent = s;
      if (i >= r.validity_bound || j >= r.validity_bound) td.className = "outside";
      tr.appendChild(td);
    });
    table.appendChild(tr);
  });
}

await init();
$("graph").value = toeplitz_source();
$("nf").onclick = () => show("nf-out", normal_form($("graph").value, $("expr").value, $("field").value));
$("decompose").onclick = () => show("decompose-out", decompose($("graph").value));
$("window").onclick = () => {
  const r = show("window-out", toeplitz_window($("win-expr").value, Number($("win-size").value)));
  heatmap(r);
};
