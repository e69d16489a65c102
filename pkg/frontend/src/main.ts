/** Entry point: mount the dashboard against a running hmreq service. */

import { HmreqApi } from "./api.js";
import { App } from "./app.js";

const params = new URLSearchParams(window.location.search);
const base = params.get("api") ?? "http://127.0.0.1:8645";
const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app container");
}
const app = new App(root, new HmreqApi(base));
void app.start().catch((err) => {
  root.textContent =
    `cannot reach the hmreq service at ${base} — ` +
    `start it with "hmreq serve PROJECT" (${String(err)})`;
});
