/**
 * Corpus conversion: raw labeled text in, annotation JSON out.
 *
 * Two input layouts: a directory whose subdirectories are class names, each
 * holding one .txt file per document, or a CSV with text,label columns.
 * Documents the pipeline cannot annotate are skipped with a warning and
 * listed in a sidecar report next to the output file.
 */

import * as fs from 'node:fs';
import * as path from 'node:path';

import Papa from 'papaparse';

import { chunkSentence, renderTree } from './chunker.js';
import { extractMentions } from './mentions.js';
import { analyze } from './pipeline.js';
import {
  AnnotationFileJson,
  DocumentJson,
  MentionJson,
  SentenceJson,
  validateDocument,
} from './schema.js';

export interface RawDocument {
  sourceId: string;
  text: string;
  className: string;
}

export interface SkippedDocument {
  source: string;
  reason: string;
}

export interface ExportResult {
  annotations: AnnotationFileJson;
  skipped: SkippedDocument[];
}

export function annotateDocument(
  docId: string,
  label: number | null,
  text: string,
): DocumentJson {
  const analyzed = analyze(text);
  const sentences: SentenceJson[] = [];
  const mentions: MentionJson[] = [];
  for (const [si, sentence] of analyzed.entries()) {
    const { root, nounPhrases } = chunkSentence(sentence.tokens);
    sentences.push({ tokens: sentence.tokens, tree: renderTree(root) });
    mentions.push(...extractMentions(si, sentence.tokens, nounPhrases));
  }
  return { doc_id: docId, label, raw_text: text, sentences, mentions };
}

export function readCorpusDir(dir: string): RawDocument[] {
  const classNames = fs
    .readdirSync(dir, { withFileTypes: true })
    .filter((entry) => entry.isDirectory())
    .map((entry) => entry.name)
    .sort();
  const docs: RawDocument[] = [];
  for (const className of classNames) {
    const classDir = path.join(dir, className);
    const files = fs.readdirSync(classDir).filter((f) => f.endsWith('.txt')).sort();
    for (const file of files) {
      docs.push({
        sourceId: `${className}/${file}`,
        text: fs.readFileSync(path.join(classDir, file), 'utf-8'),
        className,
      });
    }
  }
  return docs;
}

export function readCorpusCsv(file: string): RawDocument[] {
  const parsed = Papa.parse<Record<string, string>>(fs.readFileSync(file, 'utf-8'), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`${file}: ${first.message} (row ${first.row})`);
  }
  const fields = parsed.meta.fields ?? [];
  if (!fields.includes('text') || !fields.includes('label')) {
    throw new Error(`${file}: CSV must have text and label columns, found: ${fields.join(', ')}`);
  }
  return parsed.data.map((row, i) => ({
    sourceId: `${path.basename(file)}#${i + 1}`,
    text: row.text ?? '',
    className: String(row.label ?? ''),
  }));
}

export function exportCorpus(input: string): ExportResult {
  const stat = fs.statSync(input);
  const rawDocs = stat.isDirectory() ? readCorpusDir(input) : readCorpusCsv(input);

  const classNames = [...new Set(rawDocs.map((d) => d.className))].sort();
  const labelOf = new Map(classNames.map((name, i) => [name, i]));

  const documents: DocumentJson[] = [];
  const skipped: SkippedDocument[] = [];
  for (const [i, raw] of rawDocs.entries()) {
    let doc: DocumentJson;
    try {
      doc = annotateDocument(`doc-${i}`, labelOf.get(raw.className) ?? null, raw.text);
    } catch (error) {
      skipped.push({ source: raw.sourceId, reason: String(error) });
      continue;
    }
    const problems = validateDocument(doc);
    if (problems.length > 0) {
      skipped.push({ source: raw.sourceId, reason: problems.join('; ') });
      continue;
    }
    documents.push(doc);
  }

  return {
    annotations: {
      class_count: Math.max(classNames.length, 2),
      class_names: classNames,
      documents,
    },
    skipped,
  };
}

export function writeExport(result: ExportResult, outPath: string): void {
  fs.writeFileSync(outPath, JSON.stringify(result.annotations, null, 1), 'utf-8');
  const report = {
    exported: result.annotations.documents.length,
    skipped: result.skipped,
  };
  fs.writeFileSync(sidecarPath(outPath), JSON.stringify(report, null, 1), 'utf-8');
}

export function sidecarPath(outPath: string): string {
  return outPath.replace(/\.json$/, '') + '.report.json';
}
