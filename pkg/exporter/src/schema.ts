/** Annotation JSON schema shared with the feature-extraction engine. */

export const UPOS_TAGS = new Set([
  'ADJ', 'ADP', 'ADV', 'AUX', 'CCONJ', 'DET', 'INTJ', 'NOUN', 'NUM',
  'PART', 'PRON', 'PROPN', 'PUNCT', 'SCONJ', 'SYM', 'VERB', 'X',
]);

export type MentionRole = 'S' | 'O' | 'X';

export interface TokenJson {
  text: string;
  lemma: string;
  upos: string;
  is_stop: boolean;
}

export interface SentenceJson {
  tokens: TokenJson[];
  tree: string;
}

export interface MentionJson {
  entity_id: string;
  sentence_index: number;
  token_span: [number, number];
  role: MentionRole;
}

export interface DocumentJson {
  doc_id: string;
  label: number | null;
  raw_text: string;
  sentences: SentenceJson[];
  mentions: MentionJson[];
}

export interface AnnotationFileJson {
  class_count: number;
  class_names: string[];
  documents: DocumentJson[];
}

/** Local sanity check mirroring the engine-side loader rules. */
export function validateDocument(doc: DocumentJson): string[] {
  const problems: string[] = [];
  if (doc.sentences.length === 0) {
    problems.push('no sentences');
  }
  for (const [si, sentence] of doc.sentences.entries()) {
    if (sentence.tokens.length === 0) {
      problems.push(`sentence ${si} has no tokens`);
    }
    for (const token of sentence.tokens) {
      if (!token.text) problems.push(`sentence ${si} has an empty token`);
      if (!UPOS_TAGS.has(token.upos)) {
        problems.push(`sentence ${si} has unknown upos ${token.upos}`);
      }
    }
  }
  for (const mention of doc.mentions) {
    const sentence = doc.sentences[mention.sentence_index];
    if (!sentence) {
      problems.push(`mention ${mention.entity_id} points at missing sentence`);
      continue;
    }
    const [start, end] = mention.token_span;
    if (!(start >= 0 && start < end && end <= sentence.tokens.length)) {
      problems.push(`mention ${mention.entity_id} span [${start}, ${end}) out of bounds`);
    }
  }
  return problems;
}
