import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, Client } from "../src/api.js";

afterEach(() => {
  vi.unstubAllGlobals();
});

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("client", () => {
  it("posts create-game bodies with the exact field names", async () => {
    const fetchMock = vi.fn(async () =>
      jsonResponse({ id: "x" }, 201),
    );
    vi.stubGlobal("fetch", fetchMock);
    await new Client("http://h").createGame(15, 7, "vs_bot", 4);
    const [url, init] = fetchMock.mock.calls[0] as [string, RequestInit];
    expect(url).toBe("http://h/games");
    expect(JSON.parse(init.body as string)).toEqual({
      n: 15,
      d: 7,
      mode: "vs_bot",
      seed: 4,
    });
  });

  it("turns error payloads into typed errors", async () => {
    vi.stubGlobal("fetch", async () =>
      jsonResponse(
        { code: "illegal_move", message: "number 99 is not live", httpStatus: 400 },
        400,
      ),
    );
    const failure = new Client().move("abc", 99);
    await expect(failure).rejects.toBeInstanceOf(ApiError);
    await expect(failure).rejects.toMatchObject({
      code: "illegal_move",
      httpStatus: 400,
    });
  });
});
