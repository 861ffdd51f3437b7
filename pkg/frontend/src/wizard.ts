import { ApiClient, ApiRequestError } from "./api";
import type { AnswerResponse, QuestionPayload, SessionInfo, SetPreview } from "./types";
import { MODE_NAMES, MODE_TITLES } from "./types";

interface WizardState {
  session: SessionInfo | null;
  question: QuestionPayload | null;
  completeness: number;
  lastPreview: SetPreview | null;
  favored: "first" | "second";
  pending: { question: QuestionPayload; favored: "first" | "second"; term: string } | null;
}

/** One-question-at-a-time flow. All numbers shown come from API responses. */
export class Wizard {
  private state: WizardState = {
    session: null,
    question: null,
    completeness: 0,
    lastPreview: null,
    favored: "first",
    pending: null,
  };

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private onComplete: () => void = () => {},
  ) {}

  async start(decisionMakerId: string, reopen = false): Promise<void> {
    try {
      const session = await this.api.openSession(decisionMakerId, reopen);
      this.state.session = session;
      this.state.completeness = session.completeness ?? session.cursor / session.totalQuestions;
      if (session.status === "Complete") {
        this.renderCompletion();
      } else {
        await this.loadQuestion();
      }
    } catch (error) {
      this.renderError(error, () => this.start(decisionMakerId, reopen));
    }
  }

  private async loadQuestion(): Promise<void> {
    const session = this.state.session;
    if (!session) return;
    try {
      this.state.question = await this.api.currentQuestion(session.sessionId);
      this.renderQuestion();
    } catch (error) {
      if (error instanceof ApiRequestError && error.status === 409) {
        this.renderCompletion();
        return;
      }
      this.renderError(error, () => this.loadQuestion());
    }
  }

  private async submit(favored: "first" | "second", term: string): Promise<void> {
    const { session, question } = this.state;
    if (!session || !question) return;
    this.state.pending = { question, favored, term };
    try {
      const response = await this.api.submitAnswer(session.sessionId, question, favored, term);
      this.state.pending = null;
      this.applyAnswer(response);
    } catch (error) {
      this.renderError(error, () => this.retryPending());
    }
  }

  /** Re-submit the exact same payload; the service acknowledges duplicates. */
  private async retryPending(): Promise<void> {
    const pending = this.state.pending;
    const session = this.state.session;
    if (!pending || !session) return;
    try {
      const response = await this.api.submitAnswer(
        session.sessionId, pending.question, pending.favored, pending.term,
      );
      this.state.pending = null;
      this.applyAnswer(response);
    } catch (error) {
      this.renderError(error, () => this.retryPending());
    }
  }

  private applyAnswer(response: AnswerResponse): void {
    this.state.completeness = response.completeness;
    this.state.lastPreview = response.setCompleted;
    this.state.favored = "first";
    if (response.status === "Complete") {
      this.renderCompletion();
      this.onComplete();
    } else {
      void this.loadQuestion();
    }
  }

  // -- rendering -------------------------------------------------------------

  private renderQuestion(): void {
    const { question } = this.state;
    if (!question) return;
    this.root.innerHTML = "";
    this.root.appendChild(this.progressBar());
    if (this.state.lastPreview) {
      this.root.appendChild(this.previewPanel(this.state.lastPreview));
    }

    const card = el("section", "question-card");
    card.dataset.testid = "question";
    card.dataset.questionIndex = String(question.questionIndex);

    const context = el("p", "question-context");
    context.textContent = `With respect to: ${question.contextLabel}`;
    card.appendChild(context);

    const prompt = el("h2", "question-prompt");
    prompt.dataset.testid = "prompt";
    prompt.textContent = question.promptText;
    card.appendChild(prompt);

    const favoredBox = el("div", "favored-choice");
    favoredBox.appendChild(
      this.favoredRadio("first", `${question.firstLabel} (${question.firstNode})`),
    );
    favoredBox.appendChild(
      this.favoredRadio("second", `${question.secondLabel} (${question.secondNode})`),
    );
    card.appendChild(favoredBox);

    const hint = el("p", "options-hint");
    hint.textContent = "How strongly?";
    card.appendChild(hint);

    const options = el("div", "term-options");
    options.dataset.testid = "options";
    for (const term of question.options) {
      const button = el("button", "term-option") as HTMLButtonElement;
      button.type = "button";
      button.textContent = term;
      button.addEventListener("click", () => void this.submit(this.state.favored, term));
      options.appendChild(button);
    }
    card.appendChild(options);

    this.root.appendChild(card);
  }

  private favoredRadio(side: "first" | "second", label: string): HTMLElement {
    const wrap = el("label", "favored-option");
    const input = document.createElement("input");
    input.type = "radio";
    input.name = "favored";
    input.value = side;
    input.checked = this.state.favored === side;
    input.addEventListener("change", () => {
      this.state.favored = side;
    });
    wrap.appendChild(input);
    wrap.appendChild(document.createTextNode(` ${label}`));
    return wrap;
  }

  private progressBar(): HTMLElement {
    const { session, completeness } = this.state;
    const total = session?.totalQuestions ?? 0;
    const answered = Math.round(completeness * total);
    const wrap = el("div", "progress");
    wrap.dataset.testid = "progress";
    wrap.dataset.completeness = String(completeness);
    const bar = el("div", "progress-bar");
    bar.style.width = `${completeness * 100}%`;
    wrap.appendChild(bar);
    const text = el("span", "progress-text");
    text.textContent = `${answered} / ${total}`;
    wrap.appendChild(text);
    return wrap;
  }

  private previewPanel(preview: SetPreview): HTMLElement {
    const panel = el("aside", "set-preview");
    panel.dataset.testid = "set-preview";
    const heading = el("h3");
    heading.textContent = `Group complete: weights under ${preview.context}`;
    panel.appendChild(heading);
    for (const mode of MODE_NAMES) {
      const row = el("div", "preview-mode");
      const title = el("strong");
      title.textContent = MODE_TITLES[mode];
      row.appendChild(title);
      const list = el("ul");
      for (const [node, weight] of Object.entries(preview.localWeights[mode])) {
        const item = el("li");
        item.dataset.node = node;
        item.dataset.value = String(weight);
        item.textContent = `${node}: ${(weight * 100).toFixed(1)}%`;
        list.appendChild(item);
      }
      row.appendChild(list);
      panel.appendChild(row);
    }
    return panel;
  }

  private renderCompletion(): void {
    this.root.innerHTML = "";
    const done = el("section", "completion");
    done.dataset.testid = "completion";
    const heading = el("h2");
    heading.textContent = "Questionnaire complete";
    done.appendChild(heading);
    const text = el("p");
    text.textContent = "Every pairwise comparison is answered. Thank you!";
    done.appendChild(text);
    const link = document.createElement("a");
    link.href = "#results";
    link.dataset.testid = "to-results";
    link.textContent = "See the panel results";
    done.appendChild(link);
    this.root.appendChild(done);
  }

  private renderError(error: unknown, retry: () => void): void {
    const box = el("div", "error-box");
    box.dataset.testid = "error";
    const message = el("p");
    if (error instanceof ApiRequestError) {
      message.textContent = `${error.code}: ${error.message}`;
      box.dataset.code = error.code;
    } else {
      message.textContent = String(error);
      box.dataset.code = "network_error";
    }
    box.appendChild(message);
    const button = el("button", "retry") as HTMLButtonElement;
    button.type = "button";
    button.textContent = "Retry";
    button.addEventListener("click", () => {
      box.remove();
      retry();
    });
    box.appendChild(button);
    this.root.querySelector('[data-testid="error"]')?.remove();
    this.root.prepend(box);
  }
}

function el(tag: string, className?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  return node;
}
