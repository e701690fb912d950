/**
 * Pinned rule-based bracketer ("clause-chunker"). It promises tree SHAPE
 * only: leaf tokens equal the tokenizer output exactly, words are grouped
 * into clause chunks between punctuation boundaries, and punctuation stands
 * alone. Nonterminal labels carry no convention the consumer may rely on.
 * A neural parser can replace this backend behind the same interface when
 * a model is available.
 */

import { escapeToken, isPunctuation } from "./tokenizer.js";

function leaf(token: string): string {
  const escaped = escapeToken(token);
  if (isPunctuation(token)) {
    // PTB habit: punctuation is its own tag
    return `(${escaped} ${escaped})`;
  }
  return `(XX ${escaped})`;
}

/** Bracket one sentence's tokens into a (ROOT (S ...)) tree string. */
export function bracketSentence(tokens: string[]): string {
  if (tokens.length === 0) {
    throw new Error("cannot bracket an empty sentence");
  }
  const parts: string[] = [];
  let clause: string[] = [];
  const flush = () => {
    if (clause.length === 1) {
      parts.push(clause[0]);
    } else if (clause.length > 1) {
      parts.push(`(CL ${clause.join(" ")})`);
    }
    clause = [];
  };
  for (const token of tokens) {
    if (isPunctuation(token)) {
      flush();
      parts.push(leaf(token));
    } else {
      clause.push(leaf(token));
    }
  }
  flush();
  if (parts.length === 1 && parts[0].startsWith("(CL ")) {
    return `(ROOT (S ${parts[0].slice(4, -1)}))`;
  }
  return `(ROOT (S ${parts.join(" ")}))`;
}

/** Flat fallback used when structured bracketing fails: one leaf per token. */
export function flatTree(tokens: string[]): string {
  return `(ROOT (FLAT ${tokens.map(leaf).join(" ")}))`;
}
