/** Browser entrypoint: ?annotator=<id> selects the session. */

import { mount } from "./app.js";

const params = new URLSearchParams(window.location.search);
const annotator = params.get("annotator") ?? "";
const root = document.getElementById("app");

if (!root) {
  throw new Error("missing #app container");
}
if (!annotator) {
  root.textContent = "Add ?annotator=<your id> to the URL to start annotating.";
} else {
  mount(root, window.location.origin, annotator);
}
