import { mount } from "./app.js";

declare global {
  interface Window {
    RRDP_API_BASE?: string;
  }
}

document.addEventListener("DOMContentLoaded", () => {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  // served by the rrdp service under /ui the API lives on the same origin;
  // override window.RRDP_API_BASE when hosting the assets elsewhere
  mount(root, window.RRDP_API_BASE ?? "");
});
