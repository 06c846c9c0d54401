import init, { family_member, alexander, analyze_factorization } from "./pkg/braidcover_web.js";

const $ = (id) => document.getElementById(id);

function guard(out, f) {
  try {
    f();
  } catch (e) {
    out.textContent = "error: " + (e.message || e);
  }
}

function gram(g) {
  return g.map((row) => "[" + row.join(", ") + "]").join(" ");
}

function showFamily() {
  const out = $("fam-out");
  guard(out, () => {
    const r = JSON.parse(family_member(Number($("fam-n").value)));
    const v1 = r.variant1, v2 = r.variant2;
    const rows = [
      ["boundary braids equal", r.boundary_equal],
      ["π₁ (variant 1 / 2)", v1.pi1 + "  /  " + v2.pi1],
      ["gram 1", gram(v1.gram)],
      ["gram 2", gram(v2.gram)],
      ["det 1 / det 2 / knot", v1.det + " / " + v2.det + " / " + r.knot_determinant],
      ["represents −2 (1 / 2)", v1.represents_minus_two + " / " + v2.represents_minus_two],
      ["forms", r.certificate],
      ["Alexander polynomial", r.alexander],
      ["self-linking, χ", r.self_linking + ", " + r.euler_char],
    ];
    const table = document.createElement("table");
    for (const [k, val] of rows) {
      const tr = table.insertRow();
      tr.insertCell().textContent = k;
      tr.insertCell().textContent = String(val);
    }
    const verdict = document.createElement("p");
    verdict.className = r.passed ? "ok" : "fail";
    verdict.textContent = r.passed ? "all checks pass" : "a check failed";
    out.replaceChildren(table, verdict);
  });
}

function showAlexander() {
  const out = $("alex-out");
  guard(out, () => {
    const r = JSON.parse(alexander($("alex-word").value, Number($("alex-m").value)));
    out.textContent =
      `closure of ${r.braid || "the identity"}: ${r.components} component(s)\n` +
      `Δ(t) = ${r.alexander}\n` +
      `determinant: ${r.determinant ?? "n/a (not a knot)"}`;
  });
}

function showFactorization() {
  const out = $("fact-out");
  guard(out, () => {
    const r = JSON.parse(analyze_factorization($("fact-text").value));
    out.textContent =
      `product: ${r.product || "identity"}\n` +
      `π₁ of the complement: ${r.pi1}\n` +
      `fiber genus ${r.fiber.genus}, ${r.fiber.boundary_components} boundary component(s)\n` +
      `rank H₂ = ${r.h2_rank}, gram ${gram(r.gram)}, det ${r.det}\n` +
      `H₁ torsion [${r.h1.torsion}], free rank ${r.h1.free_rank}\n` +
      `represents −2: ${r.represents_minus_two ?? "unsupported"}`;
  });
}

await init();
$("fam-go").onclick = showFamily;
$("alex-go").onclick = showAlexander;
$("fact-go").onclick = showFactorization;
showFamily();
