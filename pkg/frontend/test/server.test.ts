import { AddressInfo } from "node:net";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createEmbedServer } from "../src/server";

let base = "";
let server: ReturnType<typeof createEmbedServer>;

beforeAll(async () => {
  server = createEmbedServer();
  await new Promise<void>((resolve) => server.listen(0, resolve));
  base = `http://127.0.0.1:${(server.address() as AddressInfo).port}`;
});

afterAll(() => server.close());

describe("POST /embed", () => {
  it("returns one vector per text, equal dimensions", async () => {
    const res = await fetch(`${base}/embed`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ texts: ["first text", "second and longer text"] }),
    });
    expect(res.status).toBe(200);
    const body = await res.json();
    expect(body.vectors).toHaveLength(2);
    expect(body.vectors[0]).toHaveLength(body.vectors[1].length);
  });

  it("is deterministic across calls", async () => {
    const call = async () => {
      const res = await fetch(`${base}/embed`, {
        method: "POST",
        body: JSON.stringify({ texts: ["same text twice"] }),
      });
      return (await res.json()).vectors[0];
    };
    expect(await call()).toEqual(await call());
  });

  it("rejects malformed bodies with 400", async () => {
    const bad = await fetch(`${base}/embed`, { method: "POST", body: "{not json" });
    expect(bad.status).toBe(400);
    const wrongShape = await fetch(`${base}/embed`, {
      method: "POST",
      body: JSON.stringify({ sentences: ["x"] }),
    });
    expect(wrongShape.status).toBe(400);
  });

  it("rejects other routes", async () => {
    const res = await fetch(`${base}/other`, { method: "POST", body: "{}" });
    expect(res.status).toBe(404);
  });
});
