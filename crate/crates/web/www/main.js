import init, { corpus_names, explore, hall_table, basis, convolution } from "./pkg/twosegal_web.js";

const $ = (id) => document.getElementById(id);

function show(id, f) {
  try {
    $(id).textContent = f();
    $(id).className = "";
  } catch (e) {
    $(id).textContent = String(e.message ?? e);
    $(id).className = "bad";
  }
}

function verdictRow(name, holds) {
  const tr = document.createElement("tr");
  const a = document.createElement("th");
  const b = document.createElement("td");
  a.textContent = name;
  b.textContent = holds === null ? "n/a" : holds ? "yes" : "no";
  b.className = holds ? "ok" : "bad";
  tr.append(a, b);
  return tr;
}

function runExplore() {
  const table = $("verdicts");
  table.replaceChildren();
  try {
    const r = JSON.parse(explore($("set").value));
    $("sizes").textContent = `level sizes ${r.level_sizes.join(", ")}`;
    table.append(
      verdictRow("simplicial identities", r.identities_hold),
      verdictRow("Segal", r.segal.holds),
      verdictRow("2-Segal", r.two_segal.holds),
      verdictRow("unital", r.unital),
      verdictRow("T₂ injective", r.t2 ? r.t2.injective : null),
    );
    const w = { segal: r.segal.witnesses, two_segal: r.two_segal.witnesses };
    if (r.t2 && r.t2.fiber) w.t2 = r.t2.fiber;
    $("witnesses").textContent = JSON.stringify(w, null, 2);
  } catch (e) {
    $("witnesses").textContent = String(e.message ?? e);
  }
}

function refreshBasis() {
  show("basis", () => "basis: " + JSON.parse(basis($("set").value)).join(", "));
}

await init();
for (const name of JSON.parse(corpus_names())) {
  const o = document.createElement("option");
  o.value = o.textContent = name;
  $("set").append(o);
}
$("set").value = "exponential3";
$("set").addEventListener("change", () => {
  refreshBasis();
  runExplore();
  $("table").textContent = "";
  $("product").textContent = "";
});
$("explore").addEventListener("click", runExplore);
$("hall").addEventListener("click", () => show("table", () => hall_table($("set").value)));
$("convolve").addEventListener("click", () =>
  show("product", () => convolution($("set").value, $("psi1").value, $("psi2").value)),
);
refreshBasis();
runExplore();
