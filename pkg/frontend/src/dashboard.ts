import { ApiClient, ApiRequestError } from "./api";
import type { ModeName, ResultsPayload, ScorecardPayload } from "./types";
import { MODE_HINTS, MODE_NAMES, MODE_TITLES } from "./types";
import { WhatIfPanel } from "./whatif";

const AGGREGATE = "AGGREGATE";

const LEVELS: Array<{ key: "criteriaWeights" | "globalSubWeights" | "alternativeScores"; title: string }> = [
  { key: "criteriaWeights", title: "Criteria" },
  { key: "globalSubWeights", title: "Sub-criteria (global)" },
  { key: "alternativeScores", title: "Alternatives" },
];

interface DashboardState {
  payload: ResultsPayload | null;
  mode: ModeName;
  selected: string; // AGGREGATE or a decision maker id
}

/** Results view: per-mode tabs, bar lists per level, rankings, what-if. */
export class Dashboard {
  private state: DashboardState = { payload: null, mode: "normal", selected: AGGREGATE };
  private whatIf: WhatIfPanel;

  constructor(private root: HTMLElement, private api: ApiClient) {
    this.whatIf = new WhatIfPanel(api);
  }

  async load(): Promise<void> {
    try {
      this.state.payload = await this.api.results();
      this.render();
    } catch (error) {
      if (error instanceof ApiRequestError && error.status === 409) {
        this.renderPlaceholder();
        return;
      }
      this.renderPlaceholder(String(error));
    }
  }

  private card(): ScorecardPayload {
    const payload = this.state.payload!;
    if (this.state.selected === AGGREGATE) return payload.report.aggregate;
    const found = payload.report.perDecisionMaker.find(
      (c) => c.decisionMakerId === this.state.selected,
    );
    return found ?? payload.report.aggregate;
  }

  render(): void {
    const payload = this.state.payload;
    if (!payload) return;
    this.root.innerHTML = "";

    const header = el("header", "results-header");
    const heading = el("h2");
    heading.textContent = `Panel results (${payload.panelSize} decision maker${payload.panelSize === 1 ? "" : "s"})`;
    header.appendChild(heading);
    for (const warning of payload.warnings) {
      const note = el("p", "warning");
      note.textContent = warning;
      header.appendChild(note);
    }
    this.root.appendChild(header);

    this.root.appendChild(this.modeTabs());
    this.root.appendChild(this.sourceToggle());

    const card = this.card();
    for (const level of LEVELS) {
      this.root.appendChild(this.barGroup(level.title, card[level.key][this.state.mode]));
    }
    this.root.appendChild(this.ranking(card));

    const whatIfHost = el("section", "whatif-host");
    this.root.appendChild(whatIfHost);
    this.whatIf.mount(whatIfHost, payload);
  }

  private modeTabs(): HTMLElement {
    const tabs = el("nav", "mode-tabs");
    tabs.dataset.testid = "mode-tabs";
    for (const mode of MODE_NAMES) {
      const tab = el("button", "tab") as HTMLButtonElement;
      tab.type = "button";
      tab.dataset.mode = mode;
      tab.title = MODE_HINTS[mode];
      tab.textContent = MODE_TITLES[mode];
      if (mode === this.state.mode) tab.classList.add("active");
      tab.addEventListener("click", () => {
        this.state.mode = mode;
        this.render();
      });
      tabs.appendChild(tab);
    }
    return tabs;
  }

  private sourceToggle(): HTMLElement {
    const payload = this.state.payload!;
    const wrap = el("div", "source-toggle");
    const label = el("span");
    label.textContent = "Show: ";
    wrap.appendChild(label);
    const select = document.createElement("select");
    select.dataset.testid = "source-select";
    for (const id of [AGGREGATE, ...payload.report.perDecisionMaker.map((c) => c.decisionMakerId!)]) {
      const option = document.createElement("option");
      option.value = id;
      option.textContent = id;
      option.selected = id === this.state.selected;
      select.appendChild(option);
    }
    select.addEventListener("change", () => {
      this.state.selected = select.value;
      this.render();
    });
    wrap.appendChild(select);
    return wrap;
  }

  private barGroup(title: string, weights: Record<string, number>): HTMLElement {
    const section = el("section", "bar-group");
    section.dataset.level = title;
    const heading = el("h3");
    heading.textContent = title;
    section.appendChild(heading);
    for (const [node, weight] of Object.entries(weights)) {
      const row = el("div", "bar-row");
      row.dataset.node = node;
      row.dataset.value = String(weight);
      const name = el("span", "bar-label");
      name.textContent = node;
      row.appendChild(name);
      const track = el("div", "bar-track");
      const bar = el("div", "bar-fill");
      bar.style.width = `${weight * 100}%`;
      track.appendChild(bar);
      row.appendChild(track);
      const value = el("span", "bar-value");
      value.textContent = `${(weight * 100).toFixed(2)}%`;
      row.appendChild(value);
      section.appendChild(row);
    }
    return section;
  }

  private ranking(card: ScorecardPayload): HTMLElement {
    const section = el("section", "ranking");
    const heading = el("h3");
    heading.textContent = `Ranking (${MODE_TITLES[this.state.mode]})`;
    section.appendChild(heading);
    const list = el("ol");
    list.dataset.testid = "ranking";
    for (const node of card.rankings[this.state.mode]) {
      const item = el("li");
      item.textContent = node;
      list.appendChild(item);
    }
    section.appendChild(list);
    return section;
  }

  private renderPlaceholder(message?: string): void {
    this.root.innerHTML = "";
    const box = el("section", "empty-results");
    box.dataset.testid = "empty-results";
    const text = el("p");
    text.textContent =
      message ?? "No complete questionnaires yet. Results appear once a decision maker finishes.";
    box.appendChild(text);
    this.root.appendChild(box);
  }
}

function el(tag: string, className?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  return node;
}
