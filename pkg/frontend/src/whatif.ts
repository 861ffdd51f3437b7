import { ApiClient } from "./api";
import type {
  ModeName,
  QuestionPayload,
  ResultsPayload,
  WhatIfResponse,
} from "./types";
import { MODE_NAMES, MODE_TITLES } from "./types";

/** Explore a single-answer override against the panel aggregate.
 * Nothing here persists; baseline and what-if both come from the service. */
export class WhatIfPanel {
  private questions: QuestionPayload[] = [];
  private payload: ResultsPayload | null = null;
  private host: HTMLElement | null = null;
  private response: WhatIfResponse | null = null;

  constructor(private api: ApiClient) {}

  mount(host: HTMLElement, payload: ResultsPayload): void {
    this.host = host;
    this.payload = payload;
    this.response = null;
    if (this.questions.length > 0) {
      this.render();
      return;
    }
    void this.api
      .questionList()
      .then((list) => {
        this.questions = list.questions;
        this.render();
      })
      .catch(() => {
        this.questions = [];
        this.render();
      });
  }

  private render(): void {
    const host = this.host;
    const payload = this.payload;
    if (!host || !payload) return;
    host.innerHTML = "";

    const section = el("section", "whatif");
    section.dataset.testid = "whatif";
    const heading = el("h3");
    heading.textContent = "What if?";
    section.appendChild(heading);

    if (payload.report.perDecisionMaker.length === 0 || this.questions.length === 0) {
      const disabled = el("p", "whatif-disabled");
      disabled.textContent = "Available once complete questionnaires exist.";
      section.appendChild(disabled);
      host.appendChild(section);
      return;
    }

    const form = el("div", "whatif-form");

    const dmSelect = this.select(
      "whatif-dm",
      payload.report.perDecisionMaker.map((c) => c.decisionMakerId!),
    );
    form.appendChild(labeled("Decision maker", dmSelect));

    const questionSelect = this.select(
      "whatif-question",
      this.questions.map((q) => String(q.questionIndex)),
      this.questions.map((q) => `${q.firstNode} vs ${q.secondNode} (under ${q.context})`),
    );
    form.appendChild(labeled("Answered pair", questionSelect));

    const favoredSelect = this.select("whatif-favored", ["first", "second"]);
    form.appendChild(labeled("Favors", favoredSelect));

    const termSelect = this.select("whatif-term", this.questions[0].options);
    form.appendChild(labeled("Term", termSelect));

    const run = el("button", "whatif-run") as HTMLButtonElement;
    run.type = "button";
    run.dataset.testid = "whatif-run";
    run.textContent = "Recompute";
    run.addEventListener("click", () => void this.run());
    form.appendChild(run);

    const close = el("button", "whatif-close") as HTMLButtonElement;
    close.type = "button";
    close.dataset.testid = "whatif-close";
    close.textContent = "Close";
    close.addEventListener("click", () => {
      this.response = null;
      this.render();
    });
    form.appendChild(close);

    section.appendChild(form);

    if (this.response) {
      section.appendChild(this.comparison(this.response));
    }

    const error = el("p", "whatif-error");
    error.dataset.testid = "whatif-error";
    error.hidden = true;
    section.appendChild(error);

    host.appendChild(section);
  }

  private async run(): Promise<void> {
    const host = this.host;
    if (!host) return;
    const dm = (host.querySelector('[data-testid="whatif-dm"]') as HTMLSelectElement).value;
    const questionIndex = Number(
      (host.querySelector('[data-testid="whatif-question"]') as HTMLSelectElement).value,
    );
    const favored = (host.querySelector('[data-testid="whatif-favored"]') as HTMLSelectElement)
      .value as "first" | "second";
    const term = (host.querySelector('[data-testid="whatif-term"]') as HTMLSelectElement).value;
    const question = this.questions.find((q) => q.questionIndex === questionIndex)!;
    try {
      this.response = await this.api.whatIf({
        decisionMakerId: dm,
        set: question.setIndex,
        first: question.firstNode,
        second: question.secondNode,
        favored,
        term,
      });
      this.render();
    } catch (error) {
      const box = host.querySelector('[data-testid="whatif-error"]') as HTMLElement;
      box.hidden = false;
      box.textContent = String(error);
    }
  }

  private comparison(response: WhatIfResponse): HTMLElement {
    const wrap = el("div", "whatif-comparison");
    wrap.dataset.testid = "whatif-comparison";
    for (const mode of MODE_NAMES) {
      wrap.appendChild(this.modeColumn(mode, response));
    }
    return wrap;
  }

  private modeColumn(mode: ModeName, response: WhatIfResponse): HTMLElement {
    const column = el("div", "whatif-mode");
    column.dataset.mode = mode;
    const heading = el("h4");
    heading.textContent = MODE_TITLES[mode];
    column.appendChild(heading);
    const table = el("table");
    const head = el("tr");
    for (const text of ["alternative", "baseline", "what-if", "delta"]) {
      const cell = el("th");
      cell.textContent = text;
      head.appendChild(cell);
    }
    table.appendChild(head);
    for (const node of Object.keys(response.baseline[mode])) {
      const row = el("tr");
      row.dataset.node = node;
      const name = el("td");
      name.textContent = node;
      row.appendChild(name);
      row.appendChild(valueCell(response.baseline[mode][node], "baseline"));
      row.appendChild(valueCell(response.whatif[mode][node], "whatif"));
      const delta = response.deltas[mode][node];
      const deltaCell = el("td", "delta");
      deltaCell.dataset.kind = "delta";
      deltaCell.dataset.value = String(delta);
      deltaCell.textContent = delta === 0 ? "0" : `${delta > 0 ? "+" : ""}${(delta * 100).toFixed(2)}%`;
      row.appendChild(deltaCell);
      table.appendChild(row);
    }
    column.appendChild(table);
    return column;
  }

  private select(testid: string, values: string[], labels?: string[]): HTMLSelectElement {
    const select = document.createElement("select");
    select.dataset.testid = testid;
    values.forEach((value, i) => {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = labels ? labels[i] : value;
      select.appendChild(option);
    });
    return select;
  }
}

function valueCell(value: number, kind: string): HTMLElement {
  const cell = el("td");
  cell.dataset.kind = kind;
  cell.dataset.value = String(value);
  cell.textContent = `${(value * 100).toFixed(2)}%`;
  return cell;
}

function labeled(text: string, control: HTMLElement): HTMLElement {
  const wrap = el("label", "whatif-field");
  const caption = el("span");
  caption.textContent = `${text}: `;
  wrap.appendChild(caption);
  wrap.appendChild(control);
  return wrap;
}

function el(tag: string, className?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  return node;
}
