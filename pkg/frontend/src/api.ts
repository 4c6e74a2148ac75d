// Thin client for the classification service. All detection logic lives
// server-side; this file only moves JSON around.

export interface Verdict {
  label: 0 | 1;
  warning: string;
  features: Record<string, boolean>;
  path: [string, number][];
  matched_terms: [string, string][];
}

export interface Health {
  status: string;
  model: { kind: string; leaves: number };
  gazetteers: Record<string, number>;
  warning: string;
}

export const DEFAULT_BASE_URL = "http://127.0.0.1:8077";

export async function classify(text: string, baseUrl = DEFAULT_BASE_URL): Promise<Verdict> {
  const res = await fetch(`${baseUrl}/api/classify`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ text }),
  });
  if (!res.ok) {
    throw new Error(`classify failed: HTTP ${res.status}`);
  }
  return (await res.json()) as Verdict;
}

export async function health(baseUrl = DEFAULT_BASE_URL): Promise<Health> {
  const res = await fetch(`${baseUrl}/api/health`);
  if (!res.ok) {
    throw new Error(`health failed: HTTP ${res.status}`);
  }
  return (await res.json()) as Health;
}
