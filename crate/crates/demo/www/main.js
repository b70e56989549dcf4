import init, { normalSubgroups, multiplier, audit, freeProduct } from "./pkg/baer_demo.js";

const $ = (id) => document.getElementById(id);

function call(f, ...args) {
  try {
    return { ok: JSON.parse(f(...args)) };
  } catch (e) {
    return { err: String(e.message ?? e) };
  }
}

function show(target, html) {
  $(target).innerHTML = html;
}

function error(target, msg) {
  show(target, `<p class="error">${escape(msg)}</p>`);
}

function escape(s) {
  return String(s).replace(/[&<>"]/g, (c) => ({ "&": "&amp;", "<": "&lt;", ">": "&gt;", '"': "&quot;" })[c]);
}

function group(v) {
  if (v == null) return `<span class="na">none</span>`;
  if (v.na !== undefined) return `<span class="na">NA (${escape(v.na)})</span>`;
  return escape(v.text);
}

function fillNormals(input, select, preferred) {
  const r = call(normalSubgroups, $(input).value);
  const sel = $(select);
  sel.innerHTML = "";
  if (r.err) return;
  for (const n of r.ok) {
    const gens = n.generators.length ? `⟨${n.generators.join(", ")}⟩` : "1";
    const opt = new Option(`order ${n.order}: ${gens}${n.central ? " (central)" : ""}`, n.index);
    sel.add(opt);
  }
  sel.selectedIndex = preferred === "last" ? r.ok.length - 1 : Math.min(preferred, r.ok.length - 1);
}

function onMultiplier(ev) {
  ev.preventDefault();
  const r = call(multiplier, $("mult-group").value);
  if (r.err) return error("mult-out", r.err);
  const v = r.ok;
  show("mult-out", `<table>
    <tr><th>|G|</th><td>${v.order}${v.abelian ? " (abelian)" : ""}</td></tr>
    <tr><th>G<sup>ab</sup></th><td>${group(v.abelianization)}</td></tr>
    <tr><th>M(G) = H<sub>2</sub>(G)</th><td>${group(v.schur)}</td></tr>
    <tr><th>H<sub>3</sub>(G)</th><td>${group(v.h3)}</td></tr>
  </table>`);
}

function onAudit(ev) {
  ev.preventDefault();
  const r = call(audit, $("audit-group").value, Number($("audit-normal").value), Number($("audit-c").value), $("audit-literal").checked);
  if (r.err) return error("audit-out", r.err);
  const v = r.ok;
  const rows = v.routes.map((x) => `<tr><td>${x.route}</td><td>${group(x.value)}</td></tr>`).join("");
  const constraints = Object.entries(v.constraints)
    .map(([k, x]) => `<tr><td>${escape(k)}</td><td>${escape(x)}</td></tr>`)
    .join("");
  show("audit-out", `<table>${rows}${constraints}</table>
    <p>|G| = ${v.group_order}, |N| = ${v.normal_order}, c = ${v.c}:
    <span class="status ${v.status}">${v.status}</span></p>`);
}

function onFreeProduct(ev) {
  ev.preventDefault();
  const r = call(freeProduct, $("fp-group1").value, Number($("fp-normal1").value), $("fp-group2").value, Number($("fp-normal2").value));
  if (r.err) return error("fp-out", r.err);
  const v = r.ok;
  let html = `<table><tr><th>c = 1</th><td>${group(v.c1)}</td></tr>`;
  if (v.c2.na !== undefined) {
    html += `<tr><th>c = 2</th><td>${group(v.c2)}</td></tr></table>`;
  } else {
    html += v.c2.terms.map((t) => `<tr><td>${escape(t.label)}</td><td>${group(t.value)}</td></tr>`).join("");
    html += `<tr><th>c = 2 total</th><td>${group(v.c2.total)}</td></tr></table>`;
  }
  if (v.notes.length) html += `<p class="na">${v.notes.map(escape).join("<br>")}</p>`;
  show("fp-out", html);
}

await init();
$("mult-form").addEventListener("submit", onMultiplier);
$("audit-form").addEventListener("submit", onAudit);
$("fp-form").addEventListener("submit", onFreeProduct);
$("audit-group").addEventListener("change", () => fillNormals("audit-group", "audit-normal", 1));
$("fp-group1").addEventListener("change", () => fillNormals("fp-group1", "fp-normal1", "last"));
$("fp-group2").addEventListener("change", () => fillNormals("fp-group2", "fp-normal2", "last"));
fillNormals("audit-group", "audit-normal", 1);
fillNormals("fp-group1", "fp-normal1", "last");
fillNormals("fp-group2", "fp-normal2", "last");
