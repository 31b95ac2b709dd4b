import init, { construct_shape, exact_shape, hypercube } from "./pkg/cliqueband_wasm.js";

const $ = (id) => document.getElementById(id);

function el(tag, attrs = {}, ...children) {
  const node = document.createElement(tag);
  Object.assign(node, attrs);
  node.append(...children);
  return node;
}

function facts(pairs) {
  const dl = el("dl");
  for (const [k, v] of pairs) dl.append(el("dt", {}, k), el("dd", {}, String(v)));
  return dl;
}

// Row-major values shown as 2D slices over the last two axes.
function grids(shape, values, marked) {
  const wide = new Set(marked);
  const d = shape.length;
  const rows = d >= 2 ? shape[d - 2] : 1;
  const cols = shape[d - 1];
  const lead = shape.slice(0, Math.max(d - 2, 0));
  const per = rows * cols;
  const box = el("div", { className: "slices" });
  for (let s = 0; s < values.length / per; s++) {
    const table = el("table", { className: "grid slice" });
    if (lead.length) {
      const idx = [];
      let rest = s;
      for (let a = lead.length - 1; a >= 0; a--) {
        idx.unshift(rest % lead[a]);
        rest = Math.floor(rest / lead[a]);
      }
      table.append(el("caption", {}, `[${idx.join(", ")}, :, :]`));
    }
    for (let r = 0; r < rows; r++) {
      const tr = el("tr");
      for (let c = 0; c < cols; c++) {
        const i = s * per + r * cols + c;
        tr.append(el("td", { className: wide.has(i) ? "wide" : "" }, String(values[i])));
      }
      table.append(tr);
    }
    box.append(table);
  }
  return box;
}

function show(target, fn) {
  target.replaceChildren();
  try {
    target.append(...fn());
  } catch (e) {
    target.append(el("p", { className: "err" }, e.message ?? String(e)));
  }
}

function construct() {
  show($("construct-out"), () => {
    const r = JSON.parse(construct_shape($("dims").value));
    const pairs = [
      ["shape", r.shape.join(" × ")],
      ["spread", r.spread],
      ["bounds", `${r.lower} ≤ bandwidth ≤ ${r.upper}`],
    ];
    if (r.general) pairs.push(["general formulas", `${r.general.lower} … ${r.general.upper}`]);
    pairs.push(["widest line", `axis ${r.widest_line.axis + 1}, width ${r.widest_line.width}`]);
    return [facts(pairs), grids(r.shape, r.values, r.widest_line.cells)];
  });
}

function exact() {
  show($("construct-out"), () => {
    const r = JSON.parse(exact_shape($("dims").value));
    return [
      facts([
        ["shape", r.shape.join(" × ")],
        ["exact optimum", r.optimum],
        ["search nodes", r.nodes],
      ]),
      grids(r.shape, r.values, r.widest_line.cells),
    ];
  });
}

function cube() {
  show($("cube-out"), () => {
    const r = JSON.parse(hypercube(Number($("cube-d").value), $("aligned").checked));
    const list = el("ol", { className: "cube" });
    for (const bits of r.order) list.append(el("li", {}, bits));
    const coords = [...new Set(r.max_edges.map((e) => e.coordinate + 1))].join(", ");
    return [
      facts([
        ["bandwidth", r.bandwidth],
        ["widest edges", `${r.max_edges.length}, along coordinate ${coords}`],
      ]),
      list,
    ];
  });
}

await init();
$("construct-form").addEventListener("submit", (e) => {
  e.preventDefault();
  construct();
});
$("exact").addEventListener("click", exact);
$("cube-form").addEventListener("input", cube);
$("cube-form").addEventListener("submit", (e) => e.preventDefault());
construct();
cube();
