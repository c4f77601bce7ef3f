/** Optional integration test against a running assistant service.
 *
 * Start one with e.g.
 *   convsearch index build --input passages.tsv --out idx/
 *   convsearch serve --config config.json
 * then run: CONVSEARCH_URL=http://127.0.0.1:8080 npm test
 */

import { describe, expect, it } from "vitest";
import { ApiClient } from "../src/api";
import { renderTurn } from "../src/render";

const baseUrl = process.env.CONVSEARCH_URL;

describe.skipIf(!baseUrl)("live service", () => {
  const script = [
    "How is the climate in Lucca?",
    "Tell me about its origins.",
    "What monuments should I visit?",
  ];

  it("answers the three-turn script and surfaces the turn-2 rewrite", async () => {
    const api = new ApiClient(baseUrl as string);
    expect((await api.health()).status).toBe("ok");

    const sessionId = await api.createSession();
    const turns = [];
    for (const query of script) {
      turns.push(await api.submitTurn(sessionId, query));
    }

    for (const turn of turns) {
      const node = renderTurn(turn);
      expect(node.querySelector(".raw-query")?.textContent).toBe(turn.raw_query);
      expect(node.querySelector(".mode-tag")?.textContent).toBe(turn.answer.mode);
    }

    const detail = renderTurn(turns[1]);
    expect(detail.querySelector(".rewritten-query")?.textContent).toContain("Lucca");

    const transcript = await api.getTranscript(sessionId);
    expect(transcript.turns.map((t) => t.raw_query)).toEqual(script);
  }, 30_000);
});
