import { afterEach, describe, expect, it, vi } from "vitest";

import { classify, health, DEFAULT_BASE_URL } from "../src/api.js";

function jsonResponse(body: unknown, ok = true, status = 200) {
  return {
    ok,
    status,
    json: async () => body,
  } as Response;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("classify", () => {
  it("posts the draft as JSON to /api/classify", async () => {
    const fetchMock = vi.fn(async () =>
      jsonResponse({
        label: 0, warning: "", features: {}, path: [], matched_terms: [],
      }),
    );
    vi.stubGlobal("fetch", fetchMock);

    await classify("Bugün hava güzel");

    const [url, init] = fetchMock.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe(`${DEFAULT_BASE_URL}/api/classify`);
    expect(init.method).toBe("POST");
    expect(init.headers).toMatchObject({ "Content-Type": "application/json" });
    expect(JSON.parse(init.body as string)).toEqual({ text: "Bugün hava güzel" });
  });

  it("returns the parsed verdict", async () => {
    const verdict = {
      label: 1,
      warning: "Konum paylasiyor olabilirsiniz!",
      features: { feature3: true },
      path: [["feature4", 0]],
      matched_terms: [["feature3", "ev"]],
    };
    vi.stubGlobal("fetch", vi.fn(async () => jsonResponse(verdict)));

    expect(await classify("Eve gidiyorum")).toEqual(verdict);
  });

  it("honours a custom base url", async () => {
    const fetchMock = vi.fn(async () =>
      jsonResponse({
        label: 0, warning: "", features: {}, path: [], matched_terms: [],
      }),
    );
    vi.stubGlobal("fetch", fetchMock);

    await classify("x", "http://localhost:9999");
    expect(fetchMock.mock.calls[0]![0]).toBe("http://localhost:9999/api/classify");
  });

  it("throws on a non-2xx response", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => jsonResponse({}, false, 400)));
    await expect(classify("")).rejects.toThrow("HTTP 400");
  });
});

describe("health", () => {
  it("fetches and parses the status document", async () => {
    const doc = {
      status: "ok",
      model: { kind: "paper-tree", leaves: 6 },
      gazetteers: { cities: 81 },
      warning: "Konum paylasiyor olabilirsiniz!",
    };
    const fetchMock = vi.fn(async () => jsonResponse(doc));
    vi.stubGlobal("fetch", fetchMock);

    expect(await health()).toEqual(doc);
    expect(fetchMock.mock.calls[0]![0]).toBe(`${DEFAULT_BASE_URL}/api/health`);
  });

  it("throws when the service answers with an error", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => jsonResponse({}, false, 500)));
    await expect(health()).rejects.toThrow("HTTP 500");
  });
});
