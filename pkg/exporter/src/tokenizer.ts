/**
 * Word tokenizer matching the trees-file token conventions: surrounding
 * punctuation becomes separate tokens and English clitics are detached, so
 * "don't" yields ["do", "n't"] and "you'd" yields ["you", "'d"].
 */

const CLITICS = ["n't", "'ll", "'re", "'ve", "'d", "'s", "'m"];
const WORD_CHAR = /[\p{L}\p{N}_]/u;

const ESCAPES: Record<string, string> = {
  "(": "-LRB-",
  ")": "-RRB-",
  "[": "-LSB-",
  "]": "-RSB-",
  "{": "-LCB-",
  "}": "-RCB-",
};

function splitClitics(token: string): string[] {
  const lower = token.toLowerCase();
  for (const clitic of CLITICS) {
    if (lower.endsWith(clitic) && token.length > clitic.length) {
      const head = token.slice(0, -clitic.length);
      if (WORD_CHAR.test(head)) {
        return [...splitClitics(head), token.slice(-clitic.length)];
      }
    }
  }
  return [token];
}

export function tokenize(text: string): string[] {
  const out: string[] = [];
  for (let chunk of text.split(/\s+/)) {
    if (!chunk) continue;
    const lead: string[] = [];
    while (chunk && !WORD_CHAR.test(chunk[0]) && chunk[0] !== "'") {
      lead.push(chunk[0]);
      chunk = chunk.slice(1);
    }
    const trail: string[] = [];
    while (
      chunk &&
      !WORD_CHAR.test(chunk[chunk.length - 1]) &&
      chunk[chunk.length - 1] !== "'"
    ) {
      trail.unshift(chunk[chunk.length - 1]);
      chunk = chunk.slice(0, -1);
    }
    out.push(...lead);
    if (chunk) out.push(...splitClitics(chunk));
    out.push(...trail);
  }
  return out;
}

/** Escape a token for the bracketed wire format. */
export function escapeToken(token: string): string {
  return ESCAPES[token] ?? token;
}

export function isPunctuation(token: string): boolean {
  return token.length > 0 && ![...token].some((ch) => WORD_CHAR.test(ch));
}
