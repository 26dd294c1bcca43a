/**
 * Entity mentions from noun-phrase chunks.
 *
 * Grammatical roles come from linear position relative to the first verbal
 * token: a noun phrase before it is subject-like (S), one after it is
 * object-like (O) unless it hangs off a preposition (X). Entity identity is
 * the casefolded head-noun lemma, a string-match stand-in for coreference.
 */

import { NpSpan } from './chunker.js';
import { MentionJson, MentionRole, TokenJson } from './schema.js';

function firstVerbIndex(tokens: TokenJson[]): number {
  for (const [i, token] of tokens.entries()) {
    if (token.upos === 'VERB' || token.upos === 'AUX') return i;
  }
  return -1;
}

function roleFor(span: NpSpan, tokens: TokenJson[], verbIndex: number): MentionRole {
  if (verbIndex < 0) return 'X';
  if (span.end <= verbIndex) return 'S';
  // skip adverbs between a governing preposition and the phrase
  let before = span.start - 1;
  while (before >= 0 && tokens[before].upos === 'ADV') before -= 1;
  if (before >= 0 && tokens[before].upos === 'ADP') return 'X';
  return 'O';
}

export function extractMentions(
  sentenceIndex: number,
  tokens: TokenJson[],
  nounPhrases: NpSpan[],
): MentionJson[] {
  const verbIndex = firstVerbIndex(tokens);
  const mentions: MentionJson[] = [];
  for (const span of nounPhrases) {
    if (span.headIndex === null) continue; // pronoun-only chunks cluster badly by string
    const head = tokens[span.headIndex];
    mentions.push({
      entity_id: head.lemma.toLowerCase(),
      sentence_index: sentenceIndex,
      token_span: [span.start, span.end],
      role: roleFor(span, tokens, verbIndex),
    });
  }
  return mentions;
}
