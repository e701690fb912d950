/**
 * Corpus-to-trees export pipeline.
 *
 * Reads a JSON-lines corpus (id + text), splits each record into sentences,
 * tokenizes, brackets every sentence, and writes the grouped trees file the
 * logictree toolkit consumes (`# id: <id>` markers, one tree per line). A
 * record that cannot be bracketed degrades to a flat tree over its tokens
 * with a diagnostic; records are never dropped. Output record ids equal
 * input record ids, in input order.
 */

import { createHash } from "node:crypto";
import { readFileSync, writeFileSync } from "node:fs";

import { bracketSentence, flatTree } from "./bracketer.js";
import { splitSentences } from "./sentences.js";
import { tokenize } from "./tokenizer.js";

export const PINNED_MODEL = "rule-chunker-v1";

export interface ExportJob {
  input: string;
  output: string;
  model?: string;
}

export interface ExportReport {
  model: string;
  records: number;
  sentences: number;
  diagnostics: string[];
  inputSha256: string;
}

interface CorpusRow {
  id: string;
  text: string;
}

export function readCorpus(path: string): CorpusRow[] {
  const rows: CorpusRow[] = [];
  const body = readFileSync(path, "utf-8");
  body.split("\n").forEach((line, index) => {
    const trimmed = line.trim();
    if (!trimmed) return;
    let data: unknown;
    try {
      data = JSON.parse(trimmed);
    } catch (error) {
      throw new Error(`${path}:${index + 1}: invalid JSON (${error})`);
    }
    const record = data as Record<string, unknown>;
    if (typeof record.id !== "string" && typeof record.id !== "number") {
      throw new Error(`${path}:${index + 1}: missing id`);
    }
    if (typeof record.text !== "string") {
      throw new Error(`${path}:${index + 1}: missing text`);
    }
    rows.push({ id: String(record.id), text: record.text });
  });
  return rows;
}

/** Trees for one record plus any diagnostics raised along the way. */
export function exportRecord(
  id: string,
  text: string
): { trees: string[]; diagnostics: string[] } {
  const trees: string[] = [];
  const diagnostics: string[] = [];
  const sentences = splitSentences(text);
  if (sentences.length === 0) {
    diagnostics.push(`${id}: no sentences in record text`);
    return { trees, diagnostics };
  }
  for (const sentence of sentences) {
    const tokens = tokenize(sentence);
    if (tokens.length === 0) {
      diagnostics.push(`${id}: sentence tokenized to nothing; skipped`);
      continue;
    }
    try {
      trees.push(bracketSentence(tokens));
    } catch (error) {
      diagnostics.push(`${id}: bracketer failed (${error}); emitted flat tree`);
      trees.push(flatTree(tokens));
    }
  }
  return { trees, diagnostics };
}

export function exportTrees(job: ExportJob): ExportReport {
  const model = job.model ?? PINNED_MODEL;
  if (model !== PINNED_MODEL) {
    throw new Error(
      `unknown parser model '${model}'; this build ships only '${PINNED_MODEL}'`
    );
  }
  const rows = readCorpus(job.input);
  const diagnostics: string[] = [];
  let sentences = 0;
  const lines: string[] = [];
  for (const row of rows) {
    lines.push(`# id: ${row.id}`);
    const result = exportRecord(row.id, row.text);
    diagnostics.push(...result.diagnostics);
    sentences += result.trees.length;
    lines.push(...result.trees);
  }
  writeFileSync(job.output, lines.join("\n") + "\n", "utf-8");

  const inputSha256 = createHash("sha256")
    .update(readFileSync(job.input))
    .digest("hex");
  const report: ExportReport = {
    model,
    records: rows.length,
    sentences,
    diagnostics,
    inputSha256,
  };
  writeFileSync(
    job.output + ".manifest.json",
    JSON.stringify(report, null, 2) + "\n",
    "utf-8"
  );
  return report;
}
