/** Per-source weight sliders with live renormalization.
 *
 *  Slider positions are the raw weights (clamped to [0, 1]); the labels show
 *  the renormalized share of each source, which always sums to 100%. Changes
 *  are debounced for 300 ms before the rescore callback fires with the
 *  normalized weights.
 */

import { clamp01, debounce, normalizeWeights } from "./weights.js";
import { fmtPercent } from "./format.js";

export const RESCORE_DEBOUNCE_MS = 300;

export class WeightPanel {
  readonly element: HTMLElement;
  private raw: number[];
  private readonly sliders: HTMLInputElement[] = [];
  private readonly labels: HTMLElement[] = [];
  private readonly debounced;

  constructor(
    sources: string[],
    initial: number[] | null,
    onChange: (normalized: number[]) => void,
    debounceMs: number = RESCORE_DEBOUNCE_MS,
  ) {
    if (sources.length < 1) throw new Error("at least one source is required");
    this.raw = initial ? initial.map(clamp01) : new Array(sources.length).fill(1 / sources.length);
    this.debounced = debounce(onChange, debounceMs);

    this.element = el("div", "weight-panel");
    const heading = el("h2");
    heading.textContent = "Source weights";
    this.element.appendChild(heading);

    sources.forEach((sourceId, i) => {
      const row = el("div", "weight-row");
      row.dataset.sourceId = sourceId;

      const name = el("span", "weight-source");
      name.textContent = sourceId;

      const slider = document.createElement("input");
      slider.type = "range";
      slider.min = "0";
      slider.max = "1";
      slider.step = "0.01";
      slider.value = String(this.raw[i]);
      slider.dataset.sourceId = sourceId;
      slider.addEventListener("input", () => this.onSlider(i, Number(slider.value)));

      const label = el("span", "weight-share");
      label.dataset.share = sourceId;

      row.append(name, slider, label);
      this.element.appendChild(row);
      this.sliders.push(slider);
      this.labels.push(label);
    });
    this.renderShares();
  }

  /** Current normalized weights (sum 1). */
  normalized(): number[] {
    return normalizeWeights(this.raw.every((w) => w === 0) ? null : this.raw, this.raw.length);
  }

  setWeights(raw: number[]): void {
    this.raw = raw.map(clamp01);
    this.raw.forEach((w, i) => {
      this.sliders[i].value = String(w);
    });
    this.renderShares();
    this.debounced.call(this.normalized());
  }

  private onSlider(index: number, value: number): void {
    this.raw[index] = clamp01(value);
    this.renderShares();
    this.debounced.call(this.normalized());
  }

  private renderShares(): void {
    const shares = this.normalized();
    shares.forEach((w, i) => {
      this.labels[i].textContent = fmtPercent(w);
    });
  }
}

function el(tag: string, className?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  return node;
}
