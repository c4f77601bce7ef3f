/** Chat application: one session, one in-flight turn at a time (mirroring
 * the service's per-session serialization). */

import { ApiClient, ApiError } from "./api";
import { renderErrorBanner, renderInlineError, renderTurn } from "./render";

export interface AppElements {
  transcript: HTMLElement;
  form: HTMLFormElement;
  input: HTMLInputElement;
  submit: HTMLButtonElement;
  status: HTMLElement;
}

export class ChatApp {
  private sessionId: string | null = null;
  private inFlight = false;
  private starting = false;

  constructor(
    private readonly api: ApiClient,
    private readonly dom: AppElements,
  ) {
    dom.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
    dom.input.addEventListener("input", () => this.syncControls());
    this.syncControls();
  }

  async start(): Promise<void> {
    if (this.starting || this.sessionId !== null) return;
    this.starting = true;
    this.dom.status.replaceChildren();
    try {
      this.sessionId = await this.api.createSession();
      this.dom.transcript.replaceChildren();
    } catch (error) {
      this.dom.status.replaceChildren(
        renderErrorBanner(describe(error), () => void this.start()),
      );
    } finally {
      this.starting = false;
      this.syncControls();
    }
  }

  async submit(): Promise<void> {
    const query = this.dom.input.value.trim();
    if (!query || this.inFlight || this.sessionId === null) return;
    this.inFlight = true;
    this.syncControls();
    try {
      const turn = await this.api.submitTurn(this.sessionId, query);
      this.dom.transcript.append(renderTurn(turn));
      this.dom.input.value = "";
    } catch (error) {
      // transcript is preserved; the error is shown inline below it
      this.dom.transcript.append(renderInlineError(describe(error)));
    } finally {
      this.inFlight = false;
      this.syncControls();
    }
  }

  get ready(): boolean {
    return this.sessionId !== null && !this.inFlight;
  }

  private syncControls(): void {
    this.dom.submit.disabled = !this.ready || this.dom.input.value.trim() === "";
    this.dom.input.disabled = this.inFlight;
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return error.message;
  if (error instanceof Error) return `service unreachable: ${error.message}`;
  return String(error);
}

export function mount(baseUrl: string, root: Document = document): ChatApp {
  const dom: AppElements = {
    transcript: root.querySelector("#transcript") as HTMLElement,
    form: root.querySelector("#composer") as HTMLFormElement,
    input: root.querySelector("#query") as HTMLInputElement,
    submit: root.querySelector("#send") as HTMLButtonElement,
    status: root.querySelector("#status") as HTMLElement,
  };
  const app = new ChatApp(new ApiClient(baseUrl), dom);
  void app.start();
  return app;
}
