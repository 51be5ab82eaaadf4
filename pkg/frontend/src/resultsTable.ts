/** Score table: one row per instance, one column per selected property,
 *  per-source evidence inside each cell. Every number is the API's value
 *  rendered with 4 decimals; an unmatched source shows an em dash.
 */

import { InstanceView, ReportView } from "./api.js";
import { fmtScore } from "./format.js";

export class ResultsTable {
  readonly element: HTMLElement;
  private report: ReportView | null = null;
  private properties: string[] = [];
  private sortDescending = true;

  constructor() {
    this.element = document.createElement("div");
    this.element.className = "results";
  }

  render(report: ReportView, properties: string[]): void {
    this.report = report;
    this.properties = properties;
    this.redraw();
  }

  private redraw(): void {
    this.element.textContent = "";
    if (!this.report) return;

    const table = document.createElement("table");
    table.className = "results-table";

    const head = table.createTHead().insertRow();
    const subjectTh = th("Instance");
    const confidenceTh = th(`Confidence ${this.sortDescending ? "▼" : "▲"}`);
    confidenceTh.classList.add("sortable");
    confidenceTh.addEventListener("click", () => {
      this.sortDescending = !this.sortDescending;
      this.redraw();
    });
    head.append(subjectTh, confidenceTh, th("Valid"));
    for (const prop of this.properties) head.append(th(prop));

    const body = table.createTBody();
    const rows = [...this.report.instances].sort((a, b) =>
      this.sortDescending ? b.confidence - a.confidence : a.confidence - b.confidence,
    );
    for (const instance of rows) body.appendChild(this.row(instance));
    this.element.appendChild(table);

    if (this.report.skipped.length) {
      const note = document.createElement("p");
      note.className = "skipped-note";
      note.textContent = `${this.report.skipped.length} instance(s) skipped: ` +
        this.report.skipped.map((s) => `${s.subject} (${s.reason})`).join(", ");
      this.element.appendChild(note);
    }
  }

  private row(instance: InstanceView): HTMLTableRowElement {
    const tr = document.createElement("tr");
    tr.dataset.subject = instance.subject;

    const subjectTd = td("subject-cell");
    subjectTd.textContent = shortName(instance.subject);
    subjectTd.title = instance.subject;

    const confidenceTd = td("confidence-cell");
    confidenceTd.dataset.confidence = "";
    confidenceTd.textContent = fmtScore(instance.confidence);

    const validTd = td("valid-cell");
    const badge = document.createElement("span");
    badge.className = instance.valid ? "badge badge-valid" : "badge badge-invalid";
    badge.dataset.valid = String(instance.valid);
    badge.textContent = instance.valid ? "valid" : "invalid";
    validTd.appendChild(badge);

    tr.append(subjectTd, confidenceTd, validTd);

    const byProperty = new Map(instance.triples.map((t) => [t.property, t]));
    for (const prop of this.properties) {
      const cell = td("property-cell");
      const triple = byProperty.get(prop);
      if (!triple) {
        cell.textContent = "—";
        tr.appendChild(cell);
        continue;
      }
      cell.dataset.property = prop;

      const weighted = document.createElement("div");
      weighted.className = "triple-score";
      weighted.dataset.weighted = "";
      weighted.textContent = fmtScore(triple.weighted);

      const kgValue = document.createElement("div");
      kgValue.className = "kg-value";
      kgValue.textContent = triple.kgValue;
      kgValue.title = "value in your graph";

      const evidence = document.createElement("ul");
      evidence.className = "evidence";
      for (const entry of triple.perSource) {
        const li = document.createElement("li");
        li.dataset.sourceId = entry.sourceId;
        const value = document.createElement("span");
        value.className = "evidence-value";
        value.textContent = entry.value !== null ? entry.value : "—";
        const sim = document.createElement("span");
        sim.className = "evidence-sim";
        sim.dataset.sim = "";
        sim.textContent = fmtScore(entry.sim);
        if (entry.error) {
          li.classList.add("evidence-error");
          li.title = entry.error;
        }
        li.append(`${entry.sourceId}: `, value, " ", sim);
        evidence.appendChild(li);
      }

      cell.append(weighted, kgValue, evidence);
      tr.appendChild(cell);
    }
    return tr;
  }
}

function th(text: string): HTMLTableCellElement {
  const cell = document.createElement("th");
  cell.textContent = text;
  return cell;
}

function td(className: string): HTMLTableCellElement {
  const cell = document.createElement("td");
  cell.className = className;
  return cell;
}

function shortName(iri: string): string {
  const hashIndex = iri.lastIndexOf("#");
  if (hashIndex >= 0) return iri.slice(hashIndex + 1);
  return iri.replace(/\/+$/, "").split("/").pop() ?? iri;
}
