/** Checkbox list of the domain spec's validated properties.
 *
 *  Deselecting a property hides its column and removes it from submitted run
 *  configs. Matching properties stay selected (the matcher needs them), and
 *  the last remaining property cannot be deselected.
 */

import { DomainSpecInfo } from "./api.js";

export class PropertySelector {
  readonly element: HTMLElement;
  private readonly boxes = new Map<string, HTMLInputElement>();

  constructor(ds: DomainSpecInfo, onChange: (selected: string[]) => void, initial?: string[]) {
    this.element = document.createElement("div");
    this.element.className = "property-selector";
    const heading = document.createElement("h2");
    heading.textContent = "Properties";
    this.element.appendChild(heading);

    const attributeProps = ds.properties.filter((p) => p !== "geo");
    const locked = new Set(ds.matchingProperties.filter((p) => p !== "geo"));
    for (const prop of attributeProps) {
      const label = document.createElement("label");
      label.className = "property-option";
      const box = document.createElement("input");
      box.type = "checkbox";
      box.value = prop;
      box.checked = initial ? initial.includes(prop) : true;
      if (locked.has(prop)) {
        box.checked = true;
        box.disabled = true;
        label.title = "required for instance matching";
      }
      box.addEventListener("change", () => {
        if (this.selected().length === 0) {
          box.checked = true; // at least one property must remain
          return;
        }
        onChange(this.selected());
      });
      label.append(box, document.createTextNode(` ${prop}`));
      this.element.appendChild(label);
      this.boxes.set(prop, box);
    }
  }

  selected(): string[] {
    return [...this.boxes.entries()].filter(([, box]) => box.checked).map(([prop]) => prop);
  }

  setSelected(props: string[]): void {
    for (const [prop, box] of this.boxes.entries()) {
      if (!box.disabled) box.checked = props.includes(prop);
    }
  }
}
