/**
 * Deterministic rule-based sentence splitter. Sentences end at ., !, or ?
 * runs followed by whitespace and an upper-case/digit/quote opener; a small
 * abbreviation list guards the common false positives. The policy is pinned
 * (recorded in the export manifest) rather than clever.
 */

const ABBREVIATIONS = new Set([
  "mr.",
  "mrs.",
  "ms.",
  "dr.",
  "prof.",
  "st.",
  "etc.",
  "e.g.",
  "i.e.",
  "vs.",
  "jr.",
  "sr.",
  "no.",
  "fig.",
]);

export function splitSentences(text: string): string[] {
  const out: string[] = [];
  let start = 0;
  let i = 0;
  while (i < text.length) {
    const ch = text[i];
    if (ch === "." || ch === "!" || ch === "?") {
      let end = i + 1;
      while (end < text.length && ".!?\"')".includes(text[end])) end += 1;
      const tail = text.slice(start, end).trimEnd();
      const lastWord = tail.split(/\s+/).pop()?.toLowerCase() ?? "";
      const next = text.slice(end).match(/^\s+(["'(]?\p{Lu}|\d)/u);
      const atEnd = end >= text.length || /^\s*$/.test(text.slice(end));
      if (!ABBREVIATIONS.has(lastWord) && (next || atEnd)) {
        const sentence = text.slice(start, end).trim();
        if (sentence) out.push(sentence);
        start = end;
      }
      i = end;
    } else {
      i += 1;
    }
  }
  const rest = text.slice(start).trim();
  if (rest) out.push(rest);
  return out;
}
