/**
 * Minimal bracketed-tree reader, used by the exporter's own tests to verify
 * leaf fidelity of what it emitted. The authoritative parser lives in the
 * consuming toolkit; this one only recovers leaf tokens.
 */

const UNESCAPES: Record<string, string> = {
  "-LRB-": "(",
  "-RRB-": ")",
  "-LSB-": "[",
  "-RSB-": "]",
  "-LCB-": "{",
  "-RCB-": "}",
};

export function leafTokens(expression: string): string[] {
  const tokens = expression
    .replace(/\(/g, " ( ")
    .replace(/\)/g, " ) ")
    .split(/\s+/)
    .filter(Boolean);
  const leaves: string[] = [];
  let depth = 0;
  let expectLabel = false;
  for (const token of tokens) {
    if (token === "(") {
      depth += 1;
      expectLabel = true;
    } else if (token === ")") {
      depth -= 1;
      if (depth < 0) throw new Error("unbalanced brackets");
    } else if (expectLabel) {
      expectLabel = false;
    } else {
      leaves.push(UNESCAPES[token] ?? token);
    }
  }
  if (depth !== 0) throw new Error("unbalanced brackets");
  return leaves;
}
