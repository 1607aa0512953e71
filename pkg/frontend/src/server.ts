/**
 * Embedding service: POST /embed {"texts": [...]} -> {"vectors": [[...]]}.
 * Stateless; malformed requests get 4xx, internal failures 5xx.
 */

import * as http from "node:http";

import { AdapterConfig, DEFAULT_CONFIG } from "./config.js";
import { embedTexts } from "./embed.js";

export function createEmbedServer(cfg: AdapterConfig = DEFAULT_CONFIG): http.Server {
  return http.createServer((req, res) => {
    const reply = (status: number, body: unknown) => {
      const payload = JSON.stringify(body);
      res.writeHead(status, { "Content-Type": "application/json" });
      res.end(payload);
    };

    if (req.method !== "POST" || req.url !== "/embed") {
      reply(404, { error: "POST /embed only" });
      return;
    }
    const chunks: Buffer[] = [];
    req.on("data", (c) => chunks.push(c));
    req.on("end", () => {
      let body: any;
      try {
        body = JSON.parse(Buffer.concat(chunks).toString("utf-8"));
      } catch {
        reply(400, { error: "body is not valid JSON" });
        return;
      }
      if (!body || !Array.isArray(body.texts) || !body.texts.every((t: unknown) => typeof t === "string")) {
        reply(400, { error: "expected {texts: string[]}" });
        return;
      }
      try {
        reply(200, { vectors: embedTexts(body.texts, cfg.embedDim), model: cfg.embedderModel });
      } catch (err) {
        reply(500, { error: String(err) });
      }
    });
  });
}

export function serveEmbed(port: number, cfg: AdapterConfig = DEFAULT_CONFIG): http.Server {
  const server = createEmbedServer(cfg);
  server.listen(port, () => {
    console.error(`embed service on :${port} (model ${cfg.embedderModel}, dim ${cfg.embedDim})`);
  });
  return server;
}
