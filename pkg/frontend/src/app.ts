/** Application shell: run lifecycle, weight panel, property selection,
 *  threshold control, and the results table.
 *
 *  All scoring happens server-side. Weight and threshold changes send a
 *  rescore request for the current run (at most one in flight; superseded
 *  requests are aborted) and the table re-renders from the response. If the
 *  server reports a rescore version the client did not produce, a stale-run
 *  indicator appears.
 */

import { ApiClient, DomainSpecInfo, ReportView } from "./api.js";
import { debounce } from "./weights.js";
import { fmtScore } from "./format.js";
import { PropertySelector } from "./propertySelector.js";
import { ResultsTable } from "./resultsTable.js";
import { RESCORE_DEBOUNCE_MS, WeightPanel } from "./weightPanel.js";

const POLL_INTERVAL_MS = 400;

export class App {
  readonly api: ApiClient;
  private readonly root: HTMLElement;
  private panel: WeightPanel | null = null;
  private selector: PropertySelector | null = null;
  private readonly table = new ResultsTable();
  private ds: DomainSpecInfo | null = null;
  private selectedProperties: string[] = [];

  private runId: string | null = null;
  private report: ReportView | null = null;
  private knownVersion = 0;
  private threshold = 0.5;
  private inFlight: AbortController | null = null;

  private statusLine!: HTMLElement;
  private staleNote!: HTMLElement;
  private thresholdSlider!: HTMLInputElement;
  private thresholdLabel!: HTMLElement;
  private readonly debouncedThreshold = debounce(
    (t: number) => this.requestRescore({ threshold: t }),
    RESCORE_DEBOUNCE_MS,
  );

  constructor(root: HTMLElement, baseUrl: string = "") {
    this.root = root;
    this.api = new ApiClient(baseUrl);
  }

  async start(): Promise<void> {
    const specs = await this.api.getDomainSpecs();
    if (!specs.length) throw new Error("the service has no domain specifications");
    this.ds = specs[0];
    this.selectedProperties = this.ds.properties.filter((p) => p !== "geo");
    const sources = (await this.api.getSources()).map((s) => s.sourceId);
    this.buildLayout(sources);

    const restored = window.location.hash.match(/run=([0-9a-f-]+)/i);
    if (restored) {
      this.runId = restored[1];
      await this.pollUntilDone();
    }
  }

  private buildLayout(sources: string[]): void {
    this.root.textContent = "";

    const controls = document.createElement("div");
    controls.className = "controls";

    this.panel = new WeightPanel(sources, null, (weights) => this.requestRescore({ weights }));
    controls.appendChild(this.panel.element);

    this.selector = new PropertySelector(this.ds!, (selected) => {
      this.selectedProperties = selected;
      if (this.report) this.table.render(this.report, this.visibleProperties());
    });
    controls.appendChild(this.selector.element);

    const thresholdBox = document.createElement("div");
    thresholdBox.className = "threshold-box";
    const thresholdHeading = document.createElement("h2");
    thresholdHeading.textContent = "Threshold";
    this.thresholdSlider = document.createElement("input");
    this.thresholdSlider.type = "range";
    this.thresholdSlider.min = "0";
    this.thresholdSlider.max = "1";
    this.thresholdSlider.step = "0.01";
    this.thresholdSlider.value = String(this.threshold);
    this.thresholdSlider.dataset.threshold = "";
    this.thresholdLabel = document.createElement("span");
    this.thresholdLabel.className = "threshold-value";
    this.thresholdLabel.textContent = fmtScore(this.threshold);
    this.thresholdSlider.addEventListener("input", () => {
      this.threshold = Number(this.thresholdSlider.value);
      this.thresholdLabel.textContent = fmtScore(this.threshold);
      this.debouncedThreshold.call(this.threshold);
    });
    thresholdBox.append(thresholdHeading, this.thresholdSlider, this.thresholdLabel);
    controls.appendChild(thresholdBox);

    const runButton = document.createElement("button");
    runButton.className = "run-button";
    runButton.textContent = "Validate";
    runButton.addEventListener("click", () => void this.submitRun());
    controls.appendChild(runButton);

    this.statusLine = document.createElement("p");
    this.statusLine.className = "status-line";
    this.staleNote = document.createElement("p");
    this.staleNote.className = "stale-note";
    this.staleNote.hidden = true;
    this.staleNote.textContent = "This view is stale: the run was rescored elsewhere. Adjust any control to refresh.";

    this.root.append(controls, this.statusLine, this.staleNote, this.table.element);
  }

  private visibleProperties(): string[] {
    if (!this.report) return this.selectedProperties;
    const reported = this.report.config.domainSpec.properties.filter((p) => p !== "geo");
    return reported.filter((p) => this.selectedProperties.includes(p));
  }

  async submitRun(): Promise<void> {
    if (!this.ds) return;
    const properties = [...this.selectedProperties];
    if (this.ds.properties.includes("geo")) properties.push("geo");
    const config = {
      domainSpec: { ...this.ds, properties, aliases: this.ds.aliases ?? {} },
      weights: this.panel ? this.panel.normalized() : undefined,
      threshold: this.threshold,
    };
    this.setStatus("submitting run…");
    const { runId } = await this.api.submitRun(config);
    this.runId = runId;
    window.location.hash = `run=${runId}`;
    await this.pollUntilDone();
  }

  private async pollUntilDone(): Promise<void> {
    if (!this.runId) return;
    for (;;) {
      const status = await this.api.getRun(this.runId);
      if (status.status === "done" && status.report) {
        this.adoptReport(status.report, status.rescoreVersion ?? 0);
        this.setStatus(`run ${this.runId} finished: ${status.report.instances.length} instances`);
        return;
      }
      if (status.status === "error") {
        this.setStatus(`run failed: ${status.error ?? "unknown error"}`);
        return;
      }
      this.setStatus(`run ${this.runId}: ${status.status}…`);
      await sleep(POLL_INTERVAL_MS);
    }
  }

  /** Restore controls and table from a run's config echo (page reload). */
  private adoptReport(report: ReportView, version: number): void {
    this.report = report;
    this.knownVersion = version;
    this.threshold = report.config.threshold;
    if (this.thresholdSlider) {
      this.thresholdSlider.value = String(this.threshold);
      this.thresholdLabel.textContent = fmtScore(this.threshold);
    }
    const echoed = report.config.domainSpec.properties.filter((p) => p !== "geo");
    this.selectedProperties = this.selectedProperties.filter((p) => echoed.includes(p));
    if (!this.selectedProperties.length) this.selectedProperties = echoed;
    this.selector?.setSelected(this.selectedProperties);
    this.table.render(report, this.visibleProperties());
  }

  private requestRescore(body: { weights?: number[]; threshold?: number }): void {
    if (!this.runId || !this.report) return;
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    this.api
      .rescore(this.runId, body, controller.signal)
      .then((response) => {
        if (controller.signal.aborted) return;
        this.staleNote.hidden = response.rescoreVersion === this.knownVersion + 1;
        this.knownVersion = response.rescoreVersion;
        this.report = response.report;
        if (body.threshold === undefined) this.threshold = response.report.config.threshold;
        this.table.render(response.report, this.visibleProperties());
        this.setStatus(`rescored (version ${response.rescoreVersion})`);
      })
      .catch((error: unknown) => {
        if (controller.signal.aborted) return;
        this.setStatus(`rescore failed: ${String(error)}`);
      });
  }

  private setStatus(text: string): void {
    this.statusLine.textContent = text;
  }
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export function mount(root: HTMLElement, baseUrl: string = ""): App {
  const app = new App(root, baseUrl);
  void app.start();
  return app;
}

// browser entry point; tests import App/mount directly instead
if (typeof document !== "undefined" && document.getElementById("app")) {
  mount(document.getElementById("app")!);
}
