import { NetworkClient } from "./api";
import { createExplorer } from "./app";

const base = new URLSearchParams(window.location.search).get("api") ?? "http://localhost:8000";
const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");
createExplorer(root, new NetworkClient(base));
