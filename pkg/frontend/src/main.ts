import "./styles.css";

import { ApiClient } from "./api";
import { Dashboard } from "./dashboard";
import { Wizard } from "./wizard";

/** Wire the single-page app into a host element. Exported for tests. */
export function createApp(root: HTMLElement, api: ApiClient = new ApiClient()) {
  root.innerHTML = "";

  const nav = document.createElement("nav");
  nav.className = "app-nav";
  const wizardLink = navLink("Questionnaire", "#wizard");
  const resultsLink = navLink("Results", "#results");
  nav.appendChild(wizardLink);
  nav.appendChild(resultsLink);
  root.appendChild(nav);

  const view = document.createElement("main");
  view.className = "app-view";
  root.appendChild(view);

  const dashboard = new Dashboard(view, api);
  const wizard = new Wizard(view, api, () => undefined);

  function showWizard() {
    view.innerHTML = "";
    const gate = document.createElement("form");
    gate.className = "dm-gate";
    const label = document.createElement("label");
    label.textContent = "Your decision maker id: ";
    const input = document.createElement("input");
    input.name = "decisionMakerId";
    input.dataset.testid = "dm-input";
    input.required = true;
    label.appendChild(input);
    gate.appendChild(label);
    const start = document.createElement("button");
    start.type = "submit";
    start.dataset.testid = "dm-start";
    start.textContent = "Start";
    gate.appendChild(start);
    gate.addEventListener("submit", (event) => {
      event.preventDefault();
      if (input.value.trim()) void wizard.start(input.value.trim());
    });
    view.appendChild(gate);
  }

  let current = "";
  function route() {
    const target = window.location.hash === "#results" ? "results" : "wizard";
    if (target === current) return; // repeated hashchange must not wipe state
    current = target;
    if (target === "results") {
      void dashboard.load();
    } else {
      showWizard();
    }
  }

  window.addEventListener("hashchange", route);
  route();

  return { wizard, dashboard };
}

function navLink(text: string, hash: string): HTMLAnchorElement {
  const link = document.createElement("a");
  link.href = hash;
  link.textContent = text;
  return link;
}

if (!import.meta.env?.TEST) {
  const root = document.getElementById("app");
  if (root) createApp(root);
}
