/** Browser bootstrap: paste an ontology, then work in the explanation view. */

import { Client } from "./api.js";
import { App } from "./app.js";

function boot(): void {
  const container = document.getElementById("app");
  if (!container) throw new Error("missing #app container");
  const client = new Client(
    (window as unknown as { MISSING_WHY_URL?: string }).MISSING_WHY_URL ??
      "http://127.0.0.1:8080"
  );

  const form = document.createElement("div");
  form.className = "boot-form";
  const textarea = document.createElement("textarea");
  textarea.rows = 12;
  textarea.placeholder = "paste an ontology, one axiom per line";
  const button = document.createElement("button");
  button.textContent = "Open session";
  form.append(textarea, button);
  container.replaceChildren(form);

  button.addEventListener("click", async () => {
    const app = new App(container, client);
    await app.start(textarea.value);
  });
}

boot();
