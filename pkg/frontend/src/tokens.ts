// Extraction of the literal numeric tokens from canonical stats responses.
//
// The panel never formats numbers itself: whatever text the service put in
// the body is what the user sees, byte for byte. The service serializes with
// sorted keys and fixed float formatting, so these patterns are stable.

export interface StatsTokens {
  revision: string;
  covered: string;
  purity: string;
  empty: string;
  accuracy: string | null;
  predictedClass: string | null;
  classCounts: Record<string, string>;
}

function match(body: string, pattern: RegExp): string | null {
  const hit = pattern.exec(body);
  return hit ? hit[1] : null;
}

export function extractStatsTokens(body: string): StatsTokens | null {
  if (/"stats":null/.test(body)) return null;
  const covered = match(body, /"covered":(-?\d+)/);
  const purity = match(body, /"purity":([^,}]+)/);
  const empty = match(body, /"empty":(true|false)/);
  const revision = match(body, /"revision":(-?\d+)/) ?? "0";
  if (covered === null || purity === null || empty === null) return null;

  const accuracyRaw = match(body, /"accuracy":([^,}]+)/);
  const predictedRaw = match(body, /"predicted_class":("(?:[^"\\]|\\.)*"|null)/);

  const classCounts: Record<string, string> = {};
  const countsBlock = match(body, /"class_counts":\{([^}]*)\}/);
  if (countsBlock) {
    for (const entry of countsBlock.matchAll(/"((?:[^"\\]|\\.)*)":(-?\d+)/g)) {
      classCounts[JSON.parse(`"${entry[1]}"`)] = entry[2];
    }
  }
  return {
    revision,
    covered,
    purity,
    empty,
    accuracy: accuracyRaw === null || accuracyRaw === "null" ? null : accuracyRaw,
    predictedClass: predictedRaw === null || predictedRaw === "null"
      ? null
      : JSON.parse(predictedRaw),
    classCounts,
  };
}
