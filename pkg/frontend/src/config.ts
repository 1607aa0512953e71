export interface AdapterConfig {
  /** model identifiers are configuration, not code contracts */
  parserModel: string;
  corefModel: string;
  embedderModel: string;
  generatorModel: string;
  /** first fine-tuning stops when loss drops below this */
  ft1StopLoss: number;
  /** second fine-tuning stops when loss drops below this */
  ft2StopLoss: number;
  /** tokens generated after the prompt */
  maxGenerationTokens: number;
  embedDim: number;
}

export const DEFAULT_CONFIG: AdapterConfig = {
  parserModel: "rule-parser-v1",
  corefModel: "pronoun-linker-v1",
  embedderModel: "hashed-bow-384",
  generatorModel: "bigram-sampler-v1",
  ft1StopLoss: 0.6,
  ft2StopLoss: 0.1,
  maxGenerationTokens: 30,
  embedDim: 384,
};

export function validateConfig(cfg: AdapterConfig): void {
  if (cfg.ft1StopLoss <= 0 || cfg.ft2StopLoss <= 0) {
    throw new Error("stop losses must be positive");
  }
  if (cfg.maxGenerationTokens <= 0) {
    throw new Error("maxGenerationTokens must be positive");
  }
  if (cfg.embedDim <= 0) {
    throw new Error("embedDim must be positive");
  }
}

export function loadConfig(overrides: Partial<AdapterConfig> = {}): AdapterConfig {
  const cfg = { ...DEFAULT_CONFIG, ...overrides };
  validateConfig(cfg);
  return cfg;
}
