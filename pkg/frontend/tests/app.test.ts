import { beforeEach, describe, expect, it, vi } from "vitest";
import { ApiClient } from "../src/api";
import { ChatApp, type AppElements } from "../src/app";
import type { TurnView } from "../src/types";
import fixtures from "./fixtures/turns.json";

function buildDom(): AppElements {
  document.body.innerHTML = `
    <div id="status"></div>
    <main id="transcript"></main>
    <form id="composer">
      <input id="query" type="text" />
      <button id="send" type="submit">Send</button>
    </form>`;
  return {
    transcript: document.querySelector("#transcript") as HTMLElement,
    form: document.querySelector("#composer") as HTMLFormElement,
    input: document.querySelector("#query") as HTMLInputElement,
    submit: document.querySelector("#send") as HTMLButtonElement,
    status: document.querySelector("#status") as HTMLElement,
  };
}

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

describe("ChatApp", () => {
  let dom: AppElements;

  beforeEach(() => {
    dom = buildDom();
  });

  it("starts a session and renders an empty transcript", async () => {
    const fetchImpl = vi.fn(async () => jsonResponse(200, { session_id: "abc" }));
    const app = new ChatApp(new ApiClient("http://svc", fetchImpl), dom);
    await app.start();
    expect(app.ready).toBe(true);
    expect(dom.transcript.children.length).toBe(0);
    expect(dom.status.querySelector(".error-banner")).toBeNull();
  });

  it("creates only one session on repeated start calls", async () => {
    const fetchImpl = vi.fn(async () => jsonResponse(200, { session_id: "abc" }));
    const app = new ChatApp(new ApiClient("http://svc", fetchImpl), dom);
    await Promise.all([app.start(), app.start()]);
    await app.start();
    expect(fetchImpl).toHaveBeenCalledTimes(1);
  });

  it("shows a retryable banner when the service is down", async () => {
    const fetchImpl = vi
      .fn<Parameters<typeof fetch>, ReturnType<typeof fetch>>()
      .mockRejectedValueOnce(new TypeError("fetch failed"))
      .mockResolvedValue(jsonResponse(200, { session_id: "abc" }));
    const app = new ChatApp(new ApiClient("http://svc", fetchImpl), dom);
    await app.start();
    const banner = dom.status.querySelector(".error-banner");
    expect(banner?.textContent).toContain("unreachable");
    (banner?.querySelector(".retry-button") as HTMLButtonElement).click();
    await vi.waitFor(() => expect(app.ready).toBe(true));
    expect(dom.status.querySelector(".error-banner")).toBeNull();
  });

  it("disables submit while the input is empty", async () => {
    const fetchImpl = vi.fn(async () => jsonResponse(200, { session_id: "abc" }));
    const app = new ChatApp(new ApiClient("http://svc", fetchImpl), dom);
    await app.start();
    expect(dom.submit.disabled).toBe(true);
    dom.input.value = "hello";
    dom.input.dispatchEvent(new Event("input"));
    expect(dom.submit.disabled).toBe(false);
  });

  it("renders the returned turn and clears the input", async () => {
    const turn = fixtures.clean[0] as TurnView;
    const fetchImpl = vi
      .fn<Parameters<typeof fetch>, ReturnType<typeof fetch>>()
      .mockResolvedValueOnce(jsonResponse(200, { session_id: "abc" }))
      .mockResolvedValueOnce(jsonResponse(200, turn));
    const app = new ChatApp(new ApiClient("http://svc", fetchImpl), dom);
    await app.start();
    dom.input.value = turn.raw_query;
    await app.submit();
    expect(dom.transcript.querySelectorAll(".turn").length).toBe(1);
    expect(dom.transcript.querySelector(".raw-query")?.textContent).toBe(
      turn.raw_query,
    );
    expect(dom.input.value).toBe("");
  });

  it("keeps the transcript and re-enables input on a 503", async () => {
    const turn = fixtures.clean[0] as TurnView;
    const fetchImpl = vi
      .fn<Parameters<typeof fetch>, ReturnType<typeof fetch>>()
      .mockResolvedValueOnce(jsonResponse(200, { session_id: "abc" }))
      .mockResolvedValueOnce(jsonResponse(200, turn))
      .mockResolvedValueOnce(jsonResponse(503, { detail: "index not loaded" }));
    const app = new ChatApp(new ApiClient("http://svc", fetchImpl), dom);
    await app.start();
    dom.input.value = "first";
    await app.submit();
    dom.input.value = "second";
    await app.submit();
    expect(dom.transcript.querySelectorAll(".turn").length).toBe(1);
    const error = dom.transcript.querySelector(".inline-error");
    expect(error?.textContent).toContain("index not loaded");
    expect(dom.input.disabled).toBe(false);
    expect(app.ready).toBe(true);
  });

  it("ignores submits while a turn is in flight", async () => {
    const turn = fixtures.clean[0] as TurnView;
    let release: (r: Response) => void = () => {};
    const pending = new Promise<Response>((resolve) => (release = resolve));
    const fetchImpl = vi
      .fn<Parameters<typeof fetch>, ReturnType<typeof fetch>>()
      .mockResolvedValueOnce(jsonResponse(200, { session_id: "abc" }))
      .mockReturnValueOnce(pending)
      .mockResolvedValue(jsonResponse(200, turn));
    const app = new ChatApp(new ApiClient("http://svc", fetchImpl), dom);
    await app.start();
    dom.input.value = "query";
    const first = app.submit();
    await app.submit(); // second submit while first is pending: no-op
    release(jsonResponse(200, turn));
    await first;
    expect(fetchImpl).toHaveBeenCalledTimes(2); // session + single turn
  });
});
